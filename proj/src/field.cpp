#include "divcurl/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "divcurl/errors.hpp"
#include "divcurl/fft.hpp"

namespace divcurl {

namespace {

void check_components(const TorusGrid& grid, std::size_t ncomp) {
    if (ncomp != 1 && ncomp != static_cast<std::size_t>(grid.dim))
        throw SizingError("field components must be 1 or dim, got " + std::to_string(ncomp));
}

// Hermitian symmetrization: c[k] <- (c[k] + conj(c[-k]))/2, done in one
// pass into a fresh array; self-conjugate modes (0 and Nyquist) come out
// real automatically.
std::vector<Cplx> hermitize(const TorusGrid& grid, const std::vector<Cplx>& c) {
    const std::int64_t total = grid.total();
    std::vector<Cplx> out(static_cast<std::size_t>(total));
    for (std::int64_t flat = 0; flat < total; ++flat) {
        auto idx = grid.decode(flat);
        std::array<int, 3> mirror{0, 0, 0};
        for (int a = 0; a < grid.dim; ++a) mirror[a] = (grid.n - idx[a]) % grid.n;
        const std::int64_t partner = grid.encode(mirror);
        out[static_cast<std::size_t>(flat)] =
            0.5 * (c[static_cast<std::size_t>(flat)] +
                   std::conj(c[static_cast<std::size_t>(partner)]));
    }
    return out;
}

double magnitude(const std::vector<std::vector<double>>& phys, std::size_t j) {
    if (phys.size() == 1) return std::abs(phys[0][j]);
    double s = 0.0;
    for (const auto& comp : phys) s += comp[j] * comp[j];
    return std::sqrt(s);
}

}  // namespace

SpectralField SpectralField::from_physical(const TorusGrid& grid,
                                           std::vector<std::vector<double>> samples) {
    check_components(grid, samples.size());
    SpectralField f;
    f.grid_ = grid;
    f.ncomp_ = static_cast<int>(samples.size());
    f.spec_.resize(samples.size());
    for (std::size_t c = 0; c < samples.size(); ++c) {
        if (samples[c].size() != static_cast<std::size_t>(grid.total()))
            throw SizingError("sample array size does not match the grid");
        detail::dft_forward(grid, samples[c], f.spec_[c]);
        f.spec_[c] = hermitize(grid, f.spec_[c]);
    }
    f.phys_ = std::move(samples);
    return f;
}

SpectralField SpectralField::from_spectral(const TorusGrid& grid,
                                           const std::vector<std::vector<Cplx>>& coeffs) {
    check_components(grid, coeffs.size());
    SpectralField f;
    f.grid_ = grid;
    f.ncomp_ = static_cast<int>(coeffs.size());
    f.spec_.resize(coeffs.size());
    f.phys_.resize(coeffs.size());
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
        if (coeffs[c].size() != static_cast<std::size_t>(grid.total()))
            throw SizingError("coefficient array size does not match the grid");
        f.spec_[c] = hermitize(grid, coeffs[c]);
        detail::dft_inverse(grid, f.spec_[c], f.phys_[c]);
    }
    return f;
}

SpectralField SpectralField::zero(const TorusGrid& grid, int components) {
    check_components(grid, static_cast<std::size_t>(components));
    SpectralField f;
    f.grid_ = grid;
    f.ncomp_ = components;
    f.phys_.assign(static_cast<std::size_t>(components),
                   std::vector<double>(static_cast<std::size_t>(grid.total()), 0.0));
    f.spec_.assign(static_cast<std::size_t>(components),
                   std::vector<Cplx>(static_cast<std::size_t>(grid.total()), Cplx(0.0, 0.0)));
    return f;
}

namespace {
void check_same_shape(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid()))
        throw GridMismatchError("fields live on different grids");
    if (a.components() != b.components())
        throw GridMismatchError("fields have different component counts");
}
}  // namespace

// Linear combinations act on the coefficients so that exact spectral
// structure (band limits, identical-mode cancellation) survives bit for bit.

SpectralField add(const SpectralField& a, const SpectralField& b) {
    check_same_shape(a, b);
    std::vector<std::vector<Cplx>> coeffs(static_cast<std::size_t>(a.components()));
    for (int c = 0; c < a.components(); ++c) {
        coeffs[c] = a.spectral(c);
        const auto& sb = b.spectral(c);
        for (std::size_t j = 0; j < coeffs[c].size(); ++j) coeffs[c][j] += sb[j];
    }
    return SpectralField::from_spectral(a.grid(), coeffs);
}

SpectralField sub(const SpectralField& a, const SpectralField& b) {
    check_same_shape(a, b);
    std::vector<std::vector<Cplx>> coeffs(static_cast<std::size_t>(a.components()));
    for (int c = 0; c < a.components(); ++c) {
        coeffs[c] = a.spectral(c);
        const auto& sb = b.spectral(c);
        for (std::size_t j = 0; j < coeffs[c].size(); ++j) coeffs[c][j] -= sb[j];
    }
    return SpectralField::from_spectral(a.grid(), coeffs);
}

SpectralField scale(const SpectralField& a, double s) {
    std::vector<std::vector<Cplx>> coeffs(static_cast<std::size_t>(a.components()));
    for (int c = 0; c < a.components(); ++c) {
        coeffs[c] = a.spectral(c);
        for (std::size_t j = 0; j < coeffs[c].size(); ++j) coeffs[c][j] *= s;
    }
    return SpectralField::from_spectral(a.grid(), coeffs);
}

SpectralField component(const SpectralField& a, int c) {
    if (c < 0 || c >= a.components())
        throw SizingError("component index out of range");
    return SpectralField::from_spectral(a.grid(), {a.spectral(c)});
}

SpectralField assemble_vector(const std::vector<SpectralField>& comps) {
    if (comps.empty()) throw SizingError("assemble_vector: no components");
    std::vector<std::vector<Cplx>> coeffs;
    coeffs.reserve(comps.size());
    for (const auto& c : comps) {
        if (!(c.grid() == comps[0].grid()))
            throw GridMismatchError("assemble_vector: mixed grids");
        if (!c.is_scalar()) throw SizingError("assemble_vector: components must be scalar");
        coeffs.push_back(c.spectral(0));
    }
    return SpectralField::from_spectral(comps[0].grid(), coeffs);
}

double linf_norm(const SpectralField& u) {
    double m = 0.0;
    const std::size_t total = u.physical(0).size();
    if (u.components() == 1) {
        for (double v : u.physical(0)) m = std::max(m, std::abs(v));
        return m;
    }
    for (std::size_t j = 0; j < total; ++j) {
        double s = 0.0;
        for (int c = 0; c < u.components(); ++c) s += u.physical(c)[j] * u.physical(c)[j];
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

double l1_norm(const SpectralField& u) {
    const double w = u.grid().cell_volume();
    const std::size_t total = u.physical(0).size();
    double s = 0.0;
    if (u.components() == 1) {
        for (double v : u.physical(0)) s += std::abs(v);
        return s * w;
    }
    for (std::size_t j = 0; j < total; ++j) {
        double m = 0.0;
        for (int c = 0; c < u.components(); ++c) m += u.physical(c)[j] * u.physical(c)[j];
        s += std::sqrt(m);
    }
    return s * w;
}

double l2_norm(const SpectralField& u) {
    const double w = u.grid().cell_volume();
    double s = 0.0;
    for (int c = 0; c < u.components(); ++c)
        for (double v : u.physical(c)) s += v * v;
    return std::sqrt(s * w);
}

std::array<double, 3> eval_at(const SpectralField& u, const std::array<double, 3>& x) {
    const TorusGrid& g = u.grid();
    std::array<double, 3> out{0.0, 0.0, 0.0};
    for (int c = 0; c < u.components(); ++c) {
        const auto& spec = u.spectral(c);
        double acc = 0.0;
        for (std::int64_t flat = 0; flat < g.total(); ++flat) {
            const auto k = g.freqs(flat);
            double phase = 0.0;
            for (int a = 0; a < g.dim; ++a) phase += k[a] * x[a];
            const Cplx coeff = spec[static_cast<std::size_t>(flat)];
            acc += coeff.real() * std::cos(phase) - coeff.imag() * std::sin(phase);
        }
        out[c] = acc;
    }
    return out;
}

double pair(const SpectralField& u, const SpectralField& phi) {
    check_same_shape(u, phi);
    const double w = u.grid().cell_volume();
    double s = 0.0;
    for (int c = 0; c < u.components(); ++c) {
        const auto& pu = u.physical(c);
        const auto& pp = phi.physical(c);
        for (std::size_t j = 0; j < pu.size(); ++j) s += pu[j] * pp[j];
    }
    return s * w;
}

double sobolev_norm(const SpectralField& u, double s, double p) {
    const TorusGrid& g = u.grid();
    std::vector<std::vector<double>> weighted(static_cast<std::size_t>(u.components()));
    for (int c = 0; c < u.components(); ++c) {
        std::vector<Cplx> spec = u.spectral(c);
        for (std::int64_t flat = 0; flat < g.total(); ++flat) {
            const auto k = g.freqs(flat);
            double k2 = 0.0;
            for (int a = 0; a < g.dim; ++a) k2 += static_cast<double>(k[a]) * k[a];
            spec[static_cast<std::size_t>(flat)] *= std::pow(1.0 + k2, 0.5 * s);
        }
        detail::dft_inverse(g, spec, weighted[c]);
    }

    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t j = 0; j < weighted[0].size(); ++j)
            m = std::max(m, magnitude(weighted, j));
        return m;
    }
    if (p < 1.0) throw SizingError("sobolev_norm: p must be >= 1");
    double acc = 0.0;
    for (std::size_t j = 0; j < weighted[0].size(); ++j)
        acc += std::pow(magnitude(weighted, j), p);
    return std::pow(acc * g.cell_volume(), 1.0 / p);
}

namespace {
// Deterministic uniform in [-1, 1): mt19937_64 bits mapped directly, no
// std::uniform_real_distribution (implementation-defined sequences).
double signed_unit(std::uint64_t raw) {
    return 2.0 * (static_cast<double>(raw >> 11) * 0x1.0p-53) - 1.0;
}
}  // namespace

SpectralField random_band_limited(const TorusGrid& grid, int components,
                                  int bandwidth, std::uint64_t seed) {
    if (bandwidth < 1 || bandwidth >= grid.n / 2)
        throw SizingError("random_band_limited: bandwidth must be in [1, n/2)");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Cplx>> coeffs(
        static_cast<std::size_t>(components),
        std::vector<Cplx>(static_cast<std::size_t>(grid.total()), Cplx(0.0, 0.0)));
    for (int c = 0; c < components; ++c) {
        for (std::int64_t flat = 0; flat < grid.total(); ++flat) {
            const auto k = grid.freqs(flat);
            bool in_band = true;
            for (int a = 0; a < grid.dim; ++a)
                if (std::abs(k[a]) > bandwidth) in_band = false;
            if (!in_band) continue;
            const double re = signed_unit(rng());
            const double im = signed_unit(rng());
            coeffs[c][static_cast<std::size_t>(flat)] = Cplx(re, im);
        }
    }
    SpectralField f = SpectralField::from_spectral(grid, coeffs);
    const double m = linf_norm(f);
    return m > 0.0 ? scale(f, 1.0 / m) : f;
}

int effective_bandwidth(const SpectralField& u, double rel_tol) {
    const TorusGrid& g = u.grid();
    double max_mag = 0.0;
    for (int c = 0; c < u.components(); ++c)
        for (const Cplx& z : u.spectral(c)) max_mag = std::max(max_mag, std::abs(z));
    if (max_mag == 0.0) return 0;
    const double tol = rel_tol * max_mag;
    int bw = 0;
    for (int c = 0; c < u.components(); ++c) {
        const auto& spec = u.spectral(c);
        for (std::int64_t flat = 0; flat < g.total(); ++flat) {
            if (std::abs(spec[static_cast<std::size_t>(flat)]) <= tol) continue;
            const auto k = g.freqs(flat);
            for (int a = 0; a < g.dim; ++a) bw = std::max(bw, std::abs(k[a]));
        }
    }
    return bw;
}

}  // namespace divcurl
