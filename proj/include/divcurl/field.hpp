#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "divcurl/grid.hpp"

namespace divcurl {

using Cplx = std::complex<double>;

/// Real scalar or vector field on a TorusGrid, holding synchronized physical
/// samples and Fourier coefficients per component. Both representations are
/// materialized at construction; instances are immutable afterwards, so
/// concurrent reads are always safe.
///
/// Convention: u(x) = sum_k spec[k] exp(i k.x); spectra are Hermitian
/// (real fields). Construction symmetrizes the coefficients.
class SpectralField {
  public:
    SpectralField() = default;

    static SpectralField from_physical(const TorusGrid& grid,
                                       std::vector<std::vector<double>> samples);
    static SpectralField from_spectral(const TorusGrid& grid,
                                       const std::vector<std::vector<Cplx>>& coeffs);
    static SpectralField zero(const TorusGrid& grid, int components);

    /// Samples f(x) on the grid; f takes the point as array<double,3>.
    template <class F>
    static SpectralField scalar_from(const TorusGrid& grid, F&& f) {
        std::vector<std::vector<double>> samples(1);
        samples[0].resize(static_cast<std::size_t>(grid.total()));
        for (std::int64_t j = 0; j < grid.total(); ++j)
            samples[0][static_cast<std::size_t>(j)] = f(grid.point(j));
        return from_physical(grid, std::move(samples));
    }

    /// Samples f(x, component) for each of the grid.dim components.
    template <class F>
    static SpectralField vector_from(const TorusGrid& grid, F&& f) {
        std::vector<std::vector<double>> samples(static_cast<std::size_t>(grid.dim));
        for (int c = 0; c < grid.dim; ++c) {
            samples[c].resize(static_cast<std::size_t>(grid.total()));
            for (std::int64_t j = 0; j < grid.total(); ++j)
                samples[c][static_cast<std::size_t>(j)] = f(grid.point(j), c);
        }
        return from_physical(grid, std::move(samples));
    }

    const TorusGrid& grid() const { return grid_; }
    int components() const { return ncomp_; }
    bool is_scalar() const { return ncomp_ == 1; }
    bool is_vector() const { return ncomp_ == grid_.dim && ncomp_ > 0; }

    const std::vector<double>& physical(int c = 0) const { return phys_[static_cast<std::size_t>(c)]; }
    const std::vector<Cplx>& spectral(int c = 0) const { return spec_[static_cast<std::size_t>(c)]; }

  private:
    TorusGrid grid_;
    int ncomp_ = 0;
    std::vector<std::vector<double>> phys_;
    std::vector<std::vector<Cplx>> spec_;
};

SpectralField add(const SpectralField& a, const SpectralField& b);
SpectralField sub(const SpectralField& a, const SpectralField& b);
SpectralField scale(const SpectralField& a, double s);
SpectralField component(const SpectralField& a, int c);
SpectralField assemble_vector(const std::vector<SpectralField>& comps);

/// Sup of the pointwise component magnitude (|.| for scalars, l2 for vectors).
double linf_norm(const SpectralField& u);
/// Quadrature of the pointwise magnitude, weight (2*pi/n)^dim.
double l1_norm(const SpectralField& u);
double l2_norm(const SpectralField& u);

/// Trigonometric interpolation at an arbitrary point of [0,2*pi)^dim.
/// Components beyond the field's count are zero.
std::array<double, 3> eval_at(const SpectralField& u, const std::array<double, 3>& x);

/// Quadrature pairing sum_j u(x_j) phi(x_j) (2*pi/n)^dim, summed over
/// components for vector fields. Exact for trig polynomials of combined
/// degree < n per axis.
double pair(const SpectralField& u, const SpectralField& phi);

/// Bessel-weighted norm: || (1+|k|^2)^{s/2} u ||_{L^p}, p in [1, inf].
double sobolev_norm(const SpectralField& u, double s, double p);

/// Seeded random real field, coefficients supported on |k|_inf <= bandwidth
/// (Nyquist-free), normalized to unit sup norm. Deterministic across
/// platforms (no std distributions involved).
SpectralField random_band_limited(const TorusGrid& grid, int components,
                                  int bandwidth, std::uint64_t seed);

/// Largest |k|_inf carrying a coefficient above rel_tol * max|coeff|.
int effective_bandwidth(const SpectralField& u, double rel_tol = 1e-13);

}  // namespace divcurl
