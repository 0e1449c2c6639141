#include "divcurl/lp.hpp"

#include <cmath>
#include <string>

#include "divcurl/cutoff.hpp"
#include "divcurl/errors.hpp"

namespace divcurl {

namespace {

double band_value(int j, double r) {
    // band 0: S(r); band j: S(2^-j r) - S(2^-j+1 r)
    if (j == 0) return smooth_step(r);
    const double s = std::ldexp(r, -j);  // 2^-j r
    return smooth_step(s) - smooth_step(2.0 * s);
}

Symbol band_symbol(int j) {
    return multiplier_symbol(0.0, "lp_band_" + std::to_string(j),
                             [j](const std::array<double, 3>& xi) {
                                 const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] +
                                                            xi[2] * xi[2]);
                                 return Cplx(band_value(j, r), 0.0);
                             });
}

}  // namespace

DyadicPartition dyadic_partition(int levels, const TorusGrid& grid) {
    if (levels < 1) throw SizingError("dyadic_partition: J must be >= 1");
    if ((std::int64_t{2} << levels) > grid.n / 2)
        throw SizingError("dyadic_partition: 2^(J+1) must be <= n/2 for the working grid");
    DyadicPartition part;
    part.levels = levels;
    for (int j = 0; j <= levels; ++j) part.bands.push_back(band_symbol(j));
    return part;
}

SpectralField lp_project(const SpectralField& u, int j, const DyadicPartition& part) {
    if (j < 0 || j > part.levels)
        throw SizingError("lp_project: band index " + std::to_string(j) + " out of range");
    return apply_multiplier(part.bands[static_cast<std::size_t>(j)], u);
}

KernelMatrix kernel_matrix(const Symbol& a, int j, const DyadicPartition& part,
                           const TorusGrid& grid_1d) {
    if (grid_1d.dim != 1) throw SizingError("kernel_matrix: kernel study runs in 1D");
    if (grid_1d.n > 1024) throw SizeLimitError("kernel_matrix: n capped at 1024");
    if (j < 0 || j > part.levels) throw SizingError("kernel_matrix: band index out of range");

    const int n = grid_1d.n;
    // Frequencies where the band is nonzero (the profile vanishes
    // identically outside its annulus, so skipping them is exact).
    std::vector<std::pair<int, double>> support;
    for (int i = 0; i < n; ++i) {
        const int k = grid_1d.freq_of_index(i);
        const double phi = band_value(j, std::abs(static_cast<double>(k)));
        if (phi != 0.0) support.emplace_back(k, phi);
    }
    const std::size_t ns = support.size();

    // exp(i (x-y) k) depends on d = (row-col) mod n; tabulate it once.
    std::vector<Cplx> phases(static_cast<std::size_t>(n) * ns);
    for (int d = 0; d < n; ++d) {
        const double xy = d * grid_1d.spacing;
        for (std::size_t s = 0; s < ns; ++s)
            phases[static_cast<std::size_t>(d) * ns + s] =
                Cplx(std::cos(xy * support[s].first), std::sin(xy * support[s].first));
    }

    KernelMatrix km;
    km.n = n;
    km.k.assign(static_cast<std::size_t>(n) * n, 0.0);
    const double norm = 1.0 / kTwoPi;
    std::vector<Cplx> av(ns);
    for (int row = 0; row < n; ++row) {
        const double x = row * grid_1d.spacing;
        for (std::size_t s = 0; s < ns; ++s) {
            const auto& [k, phi] = support[s];
            const Cplx v = a({x, 0.0, 0.0}, {static_cast<double>(k), 0.0, 0.0});
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw SingularSymbolError("kernel_matrix: symbol non-finite at k=" +
                                          std::to_string(k));
            av[s] = v * phi;
        }
        for (int col = 0; col < n; ++col) {
            const int d = row - col >= 0 ? row - col : row - col + n;
            const Cplx* ph = &phases[static_cast<std::size_t>(d) * ns];
            double acc = 0.0;
            for (std::size_t s = 0; s < ns; ++s)
                acc += av[s].real() * ph[s].real() - av[s].imag() * ph[s].imag();
            km.k[static_cast<std::size_t>(row) * n + col] = acc * norm;
        }
    }
    return km;
}

double kernel_row_mass(const KernelMatrix& km, const TorusGrid& grid_1d) {
    double worst = 0.0;
    for (int row = 0; row < km.n; ++row) {
        double mass = 0.0;
        for (int col = 0; col < km.n; ++col) mass += std::abs(km.at(row, col));
        worst = std::max(worst, mass * grid_1d.spacing);
    }
    return worst;
}

std::vector<KernelMassRow> kernel_l1_profile(const Symbol& a, int levels,
                                             const TorusGrid& grid_1d) {
    const DyadicPartition part = dyadic_partition(levels, grid_1d);
    std::vector<KernelMassRow> rows;
    for (int j = 0; j <= levels; ++j) {
        const KernelMatrix km = kernel_matrix(a, j, part, grid_1d);
        KernelMassRow row;
        row.j = j;
        row.mass = kernel_row_mass(km, grid_1d);
        row.scaled_mass = row.mass * std::pow(2.0, -j * a.order);
        rows.push_back(row);
    }
    return rows;
}

std::vector<MeasureBoundRow> measure_action_bound(const Symbol& a, const VectorMeasure& mu,
                                                  const std::vector<double>& h_list,
                                                  const TorusGrid& grid_1d) {
    if (grid_1d.dim != 1) throw SizingError("measure_action_bound: runs in 1D");
    if (!(a.order < 0.0))
        throw SizingError("measure_action_bound: requires a symbol of negative order");
    const double h_min = resolved_h_min(grid_1d);
    std::vector<MeasureBoundRow> rows;
    for (double h : h_list) {
        if (h < h_min)
            throw SizingError("measure_action_bound: h below the resolved regime (6/n)^2");
        const SpectralField smoothed = mollify(mu, h, grid_1d);
        const SpectralField acted = quantize(a, smoothed);
        rows.push_back({h, l1_norm(acted)});
    }
    return rows;
}

}  // namespace divcurl
