#include "divcurl/operators.hpp"

#include <cmath>
#include <string>

#include "divcurl/errors.hpp"
#include "divcurl/fft.hpp"

namespace divcurl {

int MatrixField::upper_index(int i, int j) const {
    // lex order over pairs i < j: (0,1), (0,2), (1,2)
    int idx = 0;
    for (int a = 0; a < dim; ++a) {
        for (int b = a + 1; b < dim; ++b) {
            if (a == i && b == j) return idx;
            ++idx;
        }
    }
    throw SizingError("MatrixField: bad pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

double MatrixField::entry(std::int64_t flat, int i, int j) const {
    if (i == j) return 0.0;
    if (i < j) return upper[static_cast<std::size_t>(upper_index(i, j))]
                   .physical(0)[static_cast<std::size_t>(flat)];
    return -upper[static_cast<std::size_t>(upper_index(j, i))]
                .physical(0)[static_cast<std::size_t>(flat)];
}

double linf_norm(const MatrixField& m) {
    double v = 0.0;
    for (const auto& e : m.upper) v = std::max(v, linf_norm(e));
    return v;
}

Cplx derivative_factor(const TorusGrid& grid, int k) {
    if (k == -grid.n / 2) return Cplx(0.0, 0.0);  // unmatched Nyquist mode
    return Cplx(0.0, static_cast<double>(k));
}

double laplacian_weight(const TorusGrid& grid, const std::array<int, 3>& k) {
    double s = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
        if (k[a] == -grid.n / 2) continue;
        s += static_cast<double>(k[a]) * k[a];
    }
    return s;
}

SpectralField apply_multiplier(const Symbol& m, const SpectralField& u) {
    const TorusGrid& g = u.grid();
    // Evaluate once per lattice frequency; reject non-finite values.
    std::vector<Cplx> values(static_cast<std::size_t>(g.total()));
    const std::array<double, 3> origin{0.0, 0.0, 0.0};
    for (std::int64_t flat = 0; flat < g.total(); ++flat) {
        const auto k = g.freqs(flat);
        const std::array<double, 3> xi{static_cast<double>(k[0]), static_cast<double>(k[1]),
                                       static_cast<double>(k[2])};
        const Cplx v = m(origin, xi);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw SingularSymbolError("multiplier '" + m.name + "' non-finite at a lattice frequency");
        values[static_cast<std::size_t>(flat)] = v;
    }
    std::vector<std::vector<Cplx>> coeffs(static_cast<std::size_t>(u.components()));
    for (int c = 0; c < u.components(); ++c) {
        coeffs[c] = u.spectral(c);
        for (std::size_t j = 0; j < coeffs[c].size(); ++j) coeffs[c][j] *= values[j];
    }
    return SpectralField::from_spectral(g, coeffs);
}

SpectralField quantize(const Symbol& a, const SpectralField& u) {
    const TorusGrid& g = u.grid();
    if (g.total() > (std::int64_t{1} << 20))
        throw SizeLimitError("quantize: grid exceeds the 2^20-point cap for direct summation");
    if (a.multiplier) return apply_multiplier(a, u);

    const std::int64_t total = g.total();
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(u.components()));
    for (int c = 0; c < u.components(); ++c) {
        const auto& spec = u.spectral(c);
        samples[c].resize(static_cast<std::size_t>(total));
        for (std::int64_t jx = 0; jx < total; ++jx) {
            const auto x = g.point(jx);
            Cplx acc(0.0, 0.0);
            for (std::int64_t jk = 0; jk < total; ++jk) {
                const Cplx coeff = spec[static_cast<std::size_t>(jk)];
                if (coeff == Cplx(0.0, 0.0)) continue;
                const auto k = g.freqs(jk);
                const std::array<double, 3> xi{static_cast<double>(k[0]),
                                               static_cast<double>(k[1]),
                                               static_cast<double>(k[2])};
                const Cplx av = a(x, xi);
                if (!std::isfinite(av.real()) || !std::isfinite(av.imag()))
                    throw SingularSymbolError("symbol '" + a.name + "' non-finite at a lattice frequency");
                double phase = 0.0;
                for (int ax = 0; ax < g.dim; ++ax) phase += k[ax] * x[ax];
                acc += av * coeff * Cplx(std::cos(phase), std::sin(phase));
            }
            samples[c][static_cast<std::size_t>(jx)] = acc.real();
        }
    }
    return SpectralField::from_physical(g, std::move(samples));
}

namespace {

void require_vector(const SpectralField& w, const char* op) {
    if (!w.is_vector())
        throw SizingError(std::string(op) + ": expected a vector field with dim components");
}

void require_scalar(const SpectralField& u, const char* op) {
    if (!u.is_scalar()) throw SizingError(std::string(op) + ": expected a scalar field");
}

}  // namespace

SpectralField partial(const SpectralField& u, int axis) {
    const TorusGrid& g = u.grid();
    if (axis < 0 || axis >= g.dim) throw SizingError("partial: axis out of range");
    std::vector<std::vector<Cplx>> coeffs(static_cast<std::size_t>(u.components()));
    for (int c = 0; c < u.components(); ++c) {
        coeffs[c] = u.spectral(c);
        for (std::int64_t flat = 0; flat < g.total(); ++flat) {
            const auto k = g.freqs(flat);
            coeffs[c][static_cast<std::size_t>(flat)] *= derivative_factor(g, k[axis]);
        }
    }
    return SpectralField::from_spectral(g, coeffs);
}

SpectralField gradient(const SpectralField& u) {
    require_scalar(u, "gradient");
    const TorusGrid& g = u.grid();
    std::vector<std::vector<Cplx>> coeffs(static_cast<std::size_t>(g.dim));
    for (int a = 0; a < g.dim; ++a) {
        coeffs[a] = u.spectral(0);
        for (std::int64_t flat = 0; flat < g.total(); ++flat) {
            const auto k = g.freqs(flat);
            coeffs[a][static_cast<std::size_t>(flat)] *= derivative_factor(g, k[a]);
        }
    }
    return SpectralField::from_spectral(g, coeffs);
}

SpectralField divergence(const SpectralField& w) {
    require_vector(w, "divergence");
    const TorusGrid& g = w.grid();
    std::vector<std::vector<Cplx>> coeffs(1);
    coeffs[0].assign(static_cast<std::size_t>(g.total()), Cplx(0.0, 0.0));
    for (int a = 0; a < g.dim; ++a) {
        const auto& spec = w.spectral(a);
        for (std::int64_t flat = 0; flat < g.total(); ++flat) {
            const auto k = g.freqs(flat);
            coeffs[0][static_cast<std::size_t>(flat)] +=
                derivative_factor(g, k[a]) * spec[static_cast<std::size_t>(flat)];
        }
    }
    return SpectralField::from_spectral(g, coeffs);
}

MatrixField curl(const SpectralField& w) {
    require_vector(w, "curl");
    const TorusGrid& g = w.grid();
    MatrixField m;
    m.grid = g;
    m.dim = g.dim;
    for (int i = 0; i < g.dim; ++i) {
        for (int j = i + 1; j < g.dim; ++j) {
            // entry(i,j) = d_i w_j - d_j w_i
            std::vector<std::vector<Cplx>> coeffs(1);
            coeffs[0].resize(static_cast<std::size_t>(g.total()));
            const auto& wi = w.spectral(i);
            const auto& wj = w.spectral(j);
            for (std::int64_t flat = 0; flat < g.total(); ++flat) {
                const auto k = g.freqs(flat);
                coeffs[0][static_cast<std::size_t>(flat)] =
                    derivative_factor(g, k[i]) * wj[static_cast<std::size_t>(flat)] -
                    derivative_factor(g, k[j]) * wi[static_cast<std::size_t>(flat)];
            }
            m.upper.push_back(SpectralField::from_spectral(g, coeffs));
        }
    }
    return m;
}

SpectralField curl_curl(const SpectralField& w) {
    require_vector(w, "curl_curl");
    const TorusGrid& g = w.grid();
    // (curl_curl w)_j = d_j(div w) - lap w_j = -sum_i d_i (curl w)_{ij},
    // computed through the curl matrix so the route is independent of the
    // grad/div implementations.
    MatrixField cw = curl(w);
    std::vector<std::vector<Cplx>> coeffs(static_cast<std::size_t>(g.dim));
    for (int j = 0; j < g.dim; ++j)
        coeffs[j].assign(static_cast<std::size_t>(g.total()), Cplx(0.0, 0.0));
    for (int i = 0; i < g.dim; ++i) {
        for (int j = 0; j < g.dim; ++j) {
            if (i == j) continue;
            const bool upper = i < j;
            const auto& entry = upper ? cw.upper[static_cast<std::size_t>(cw.upper_index(i, j))]
                                      : cw.upper[static_cast<std::size_t>(cw.upper_index(j, i))];
            const double sign = upper ? -1.0 : 1.0;  // -d_i entry(i,j), entry(j,i) = -entry(i,j)
            const auto& spec = entry.spectral(0);
            for (std::int64_t flat = 0; flat < g.total(); ++flat) {
                const auto k = g.freqs(flat);
                coeffs[j][static_cast<std::size_t>(flat)] +=
                    sign * derivative_factor(g, k[i]) * spec[static_cast<std::size_t>(flat)];
            }
        }
    }
    return SpectralField::from_spectral(g, coeffs);
}

SpectralField laplacian(const SpectralField& u) {
    const TorusGrid& g = u.grid();
    std::vector<std::vector<Cplx>> coeffs(static_cast<std::size_t>(u.components()));
    for (int c = 0; c < u.components(); ++c) {
        coeffs[c] = u.spectral(c);
        for (std::int64_t flat = 0; flat < g.total(); ++flat) {
            const auto k = g.freqs(flat);
            coeffs[c][static_cast<std::size_t>(flat)] *= -laplacian_weight(g, k);
        }
    }
    return SpectralField::from_spectral(g, coeffs);
}

namespace {

// Fine-grid size for the 3/2 rule: smallest even M >= 3n/2.
int padded_size(int n) {
    int m = (3 * n + 1) / 2;
    if (m % 2 != 0) ++m;
    return m;
}

// Embed coefficients of the coarse lattice into the fine one (identical
// frequencies, larger range).
std::vector<Cplx> embed(const TorusGrid& coarse, const TorusGrid& fine,
                        const std::vector<Cplx>& spec) {
    std::vector<Cplx> out(static_cast<std::size_t>(fine.total()), Cplx(0.0, 0.0));
    for (std::int64_t flat = 0; flat < coarse.total(); ++flat) {
        const auto k = coarse.freqs(flat);
        std::array<int, 3> idx{0, 0, 0};
        for (int a = 0; a < fine.dim; ++a) idx[a] = fine.index_of_freq(k[a]);
        out[static_cast<std::size_t>(fine.encode(idx))] = spec[static_cast<std::size_t>(flat)];
    }
    return out;
}

// Restrict a fine spectrum to the coarse symmetric band, dropping the
// coarse Nyquist planes so realness is preserved.
std::vector<Cplx> restrict_band(const TorusGrid& fine, const TorusGrid& coarse,
                                const std::vector<Cplx>& spec) {
    std::vector<Cplx> out(static_cast<std::size_t>(coarse.total()), Cplx(0.0, 0.0));
    for (std::int64_t flat = 0; flat < coarse.total(); ++flat) {
        const auto k = coarse.freqs(flat);
        bool nyquist = false;
        for (int a = 0; a < coarse.dim; ++a)
            if (k[a] == -coarse.n / 2) nyquist = true;
        if (nyquist) continue;
        std::array<int, 3> idx{0, 0, 0};
        for (int a = 0; a < fine.dim; ++a) idx[a] = fine.index_of_freq(k[a]);
        out[static_cast<std::size_t>(flat)] = spec[static_cast<std::size_t>(fine.encode(idx))];
    }
    return out;
}

std::vector<double> to_fine_physical(const TorusGrid& coarse, const TorusGrid& fine,
                                     const std::vector<Cplx>& spec) {
    std::vector<Cplx> fine_spec = embed(coarse, fine, spec);
    std::vector<double> phys;
    detail::dft_inverse(fine, fine_spec, phys);
    return phys;
}

}  // namespace

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g) {
    if (!(f.grid() == g.grid())) throw GridMismatchError("dealiased_product: grid mismatch");
    const TorusGrid& coarse = f.grid();
    TorusGrid fine = coarse;
    fine.n = padded_size(coarse.n);
    fine.spacing = kTwoPi / fine.n;

    const int nf = f.components();
    const int ng = g.components();

    // scalar*scalar -> scalar, scalar*vector -> vector, vector*vector -> dot
    if (nf == 1 && ng == 1) {
        auto pf = to_fine_physical(coarse, fine, f.spectral(0));
        auto pg = to_fine_physical(coarse, fine, g.spectral(0));
        for (std::size_t j = 0; j < pf.size(); ++j) pf[j] *= pg[j];
        std::vector<Cplx> prod_spec;
        detail::dft_forward(fine, pf, prod_spec);
        return SpectralField::from_spectral(coarse, {restrict_band(fine, coarse, prod_spec)});
    }
    if (nf == 1 || ng == 1) {
        const SpectralField& s = (nf == 1) ? f : g;
        const SpectralField& v = (nf == 1) ? g : f;
        auto ps = to_fine_physical(coarse, fine, s.spectral(0));
        std::vector<std::vector<Cplx>> coeffs(static_cast<std::size_t>(v.components()));
        for (int c = 0; c < v.components(); ++c) {
            auto pv = to_fine_physical(coarse, fine, v.spectral(c));
            for (std::size_t j = 0; j < pv.size(); ++j) pv[j] *= ps[j];
            std::vector<Cplx> prod_spec;
            detail::dft_forward(fine, pv, prod_spec);
            coeffs[c] = restrict_band(fine, coarse, prod_spec);
        }
        return SpectralField::from_spectral(coarse, coeffs);
    }
    if (nf != ng) throw GridMismatchError("dealiased_product: component mismatch");
    std::vector<double> acc(static_cast<std::size_t>(fine.total()), 0.0);
    for (int c = 0; c < nf; ++c) {
        auto pf = to_fine_physical(coarse, fine, f.spectral(c));
        auto pg = to_fine_physical(coarse, fine, g.spectral(c));
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += pf[j] * pg[j];
    }
    std::vector<Cplx> prod_spec;
    detail::dft_forward(fine, acc, prod_spec);
    return SpectralField::from_spectral(coarse, {restrict_band(fine, coarse, prod_spec)});
}

}  // namespace divcurl
