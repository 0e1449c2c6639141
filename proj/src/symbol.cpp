#include "divcurl/symbol.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "divcurl/errors.hpp"

namespace divcurl {

Symbol multiplier_symbol(double order, std::string name,
                         std::function<Cplx(const std::array<double, 3>& xi)> fn) {
    Symbol s;
    s.order = order;
    s.multiplier = true;
    s.name = std::move(name);
    s.eval = [fn = std::move(fn)](const std::array<double, 3>&,
                                  const std::array<double, 3>& xi) { return fn(xi); };
    return s;
}

Symbol bessel_symbol(double order) {
    return multiplier_symbol(order, "bessel", [order](const std::array<double, 3>& xi) {
        const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        return Cplx(std::pow(1.0 + r2, 0.5 * order), 0.0);
    });
}

namespace {

// Iterated forward difference in xi of total order `beta`, distributed over
// axes one order at a time (axis-cyclic). Base points are restricted so the
// stencil stays on the lattice.
Cplx forward_difference(const Symbol& a, const std::array<double, 3>& x,
                        std::array<double, 3> xi, int dim, int beta) {
    if (beta == 0) return a(x, xi);
    const int axis = (beta - 1) % dim;
    std::array<double, 3> shifted = xi;
    shifted[axis] += 1.0;
    return forward_difference(a, x, shifted, dim, beta - 1) -
           forward_difference(a, x, xi, dim, beta - 1);
}

}  // namespace

double symbol_seminorm(const Symbol& a, const TorusGrid& grid, int beta) {
    if (beta < 0) throw SizingError("symbol_seminorm: beta must be >= 0");
    const int half = grid.n / 2;

    // x sample points: the full grid is overkill for a sup estimate; a
    // fixed coarse set per axis suffices (single point for multipliers).
    std::vector<std::array<double, 3>> xs;
    if (a.multiplier) {
        xs.push_back({0.0, 0.0, 0.0});
    } else {
        const int samples = 8;
        std::vector<double> axis_vals;
        for (int i = 0; i < samples; ++i) axis_vals.push_back(kTwoPi * i / samples);
        if (grid.dim == 1) {
            for (double v : axis_vals) xs.push_back({v, 0.0, 0.0});
        } else if (grid.dim == 2) {
            for (double v0 : axis_vals)
                for (double v1 : axis_vals) xs.push_back({v0, v1, 0.0});
        } else {
            for (double v0 : axis_vals)
                for (double v1 : axis_vals)
                    for (double v2 : axis_vals) xs.push_back({v0, v1, v2});
        }
    }

    double sup = 0.0;
    for (std::int64_t flat = 0; flat < grid.total(); ++flat) {
        const auto k = grid.freqs(flat);
        std::array<double, 3> xi{0.0, 0.0, 0.0};
        bool stencil_fits = true;
        double r2 = 0.0;
        for (int aidx = 0; aidx < grid.dim; ++aidx) {
            xi[aidx] = static_cast<double>(k[aidx]);
            r2 += xi[aidx] * xi[aidx];
            if (k[aidx] + beta >= half) stencil_fits = false;
        }
        if (!stencil_fits) continue;
        const double weight = std::pow(1.0 + std::sqrt(r2), -a.order + beta);
        for (const auto& x : xs) {
            const double mag = std::abs(forward_difference(a, x, xi, grid.dim, beta));
            sup = std::max(sup, mag * weight);
        }
    }
    return sup;
}

}  // namespace divcurl
