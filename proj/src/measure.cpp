#include "divcurl/measure.hpp"

#include <cmath>
#include <string>

#include "divcurl/errors.hpp"
#include "divcurl/operators.hpp"

namespace divcurl {

VectorMeasure atomic_measure(int dim, std::vector<Atom> atoms) {
    if (dim < 1 || dim > 3) throw SizingError("atomic_measure: dim must be 1, 2 or 3");
    for (const auto& a : atoms) {
        for (int ax = 0; ax < dim; ++ax) {
            if (!(a.x[ax] >= 0.0 && a.x[ax] < kTwoPi))
                throw SizingError("atomic_measure: atom outside [0, 2*pi)^dim");
            if (!std::isfinite(a.weight[ax]))
                throw SizingError("atomic_measure: non-finite weight");
        }
    }
    VectorMeasure mu;
    mu.dim = dim;
    mu.atoms = std::move(atoms);
    return mu;
}

double total_variation(const VectorMeasure& mu) {
    double tv = 0.0;
    for (const auto& a : mu.atoms) {
        double s = 0.0;
        for (int ax = 0; ax < mu.dim; ++ax) s += a.weight[ax] * a.weight[ax];
        tv += std::sqrt(s);
    }
    if (mu.density) tv += l1_norm(*mu.density);
    return tv;
}

double total_variation(const SpectralField& u) { return l1_norm(u); }

SpectralField mollify(const VectorMeasure& mu, double h, const TorusGrid& grid) {
    if (!(h > 0.0)) throw SizingError("mollify: h must be positive");
    if (mu.dim != grid.dim) throw GridMismatchError("mollify: measure/grid dimension mismatch");
    if (mu.density && !(mu.density->grid() == grid))
        throw GridMismatchError("mollify: density part lives on a different grid");
    const double norm = 1.0 / std::pow(kTwoPi, grid.dim);

    std::vector<std::vector<Cplx>> coeffs(
        static_cast<std::size_t>(grid.dim),
        std::vector<Cplx>(static_cast<std::size_t>(grid.total()), Cplx(0.0, 0.0)));
    for (std::int64_t flat = 0; flat < grid.total(); ++flat) {
        const auto k = grid.freqs(flat);
        bool nyquist = false;
        double k2 = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            if (k[a] == -grid.n / 2) nyquist = true;
            k2 += static_cast<double>(k[a]) * k[a];
        }
        if (nyquist) continue;  // unmatched modes dropped for realness
        const double heat = std::exp(-h * k2);
        for (const auto& atom : mu.atoms) {
            double phase = 0.0;
            for (int a = 0; a < grid.dim; ++a) phase += k[a] * atom.x[a];
            const Cplx shift(std::cos(phase), -std::sin(phase));  // exp(-i k.x0)
            for (int c = 0; c < grid.dim; ++c)
                coeffs[c][static_cast<std::size_t>(flat)] += atom.weight[c] * norm * heat * shift;
        }
        if (mu.density) {
            for (int c = 0; c < grid.dim; ++c)
                coeffs[c][static_cast<std::size_t>(flat)] +=
                    heat * mu.density->spectral(c)[static_cast<std::size_t>(flat)];
        }
    }
    return SpectralField::from_spectral(grid, coeffs);
}

SpectralField point_vortex(const std::array<double, 3>& x0, double h, const TorusGrid& grid) {
    if (grid.dim != 2) throw SizingError("point_vortex: requires a 2D grid");
    if (!(h > 0.0)) throw SizingError("point_vortex: h must be positive");
    const double norm = 1.0 / (kTwoPi * kTwoPi);

    // v = (-d2 G, d1 G) with G^(k) = exp(-h|k|^2)/|k|^2 centered at x0;
    // div v = 0 mode by mode.
    std::vector<std::vector<Cplx>> coeffs(
        2, std::vector<Cplx>(static_cast<std::size_t>(grid.total()), Cplx(0.0, 0.0)));
    for (std::int64_t flat = 0; flat < grid.total(); ++flat) {
        const auto k = grid.freqs(flat);
        if (k[0] == -grid.n / 2 || k[1] == -grid.n / 2) continue;
        const double k2 = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1];
        if (k2 == 0.0) continue;
        const double phase = k[0] * x0[0] + k[1] * x0[1];
        const Cplx g_hat = norm * std::exp(-h * k2) / k2 * Cplx(std::cos(phase), -std::sin(phase));
        coeffs[0][static_cast<std::size_t>(flat)] = -derivative_factor(grid, k[1]) * g_hat;
        coeffs[1][static_cast<std::size_t>(flat)] = derivative_factor(grid, k[0]) * g_hat;
    }
    return SpectralField::from_spectral(grid, coeffs);
}

double resolved_h_min(const TorusGrid& grid) {
    const double r = 6.0 / grid.n;
    return r * r;
}

}  // namespace divcurl
