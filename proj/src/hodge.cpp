#include "divcurl/hodge.hpp"

#include <cmath>

#include "divcurl/errors.hpp"
#include "divcurl/operators.hpp"

namespace divcurl {

namespace {

void require_vector(const SpectralField& w) {
    if (!w.is_vector()) throw SizingError("hodge: expected a vector field with dim components");
}

double chi_at(const CutoffSpec& chi, const std::array<int, 3>& k, int dim) {
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a) r2 += static_cast<double>(k[a]) * k[a];
    return cutoff_value(chi, std::sqrt(r2));
}

}  // namespace

SpectralField hodge_z(const SpectralField& w, const CutoffSpec& chi) {
    require_vector(w);
    const TorusGrid& g = w.grid();
    std::vector<std::vector<Cplx>> coeffs(1);
    coeffs[0].assign(static_cast<std::size_t>(g.total()), Cplx(0.0, 0.0));
    for (std::int64_t flat = 0; flat < g.total(); ++flat) {
        const auto k = g.freqs(flat);
        const double lam = laplacian_weight(g, k);
        if (lam == 0.0) continue;  // zero mode (chi(0)=0 anyway) and pure Nyquist
        Cplx div_hat(0.0, 0.0);
        for (int a = 0; a < g.dim; ++a)
            div_hat += derivative_factor(g, k[a]) * w.spectral(a)[static_cast<std::size_t>(flat)];
        coeffs[0][static_cast<std::size_t>(flat)] = -chi_at(chi, k, g.dim) / lam * div_hat;
    }
    return SpectralField::from_spectral(g, coeffs);
}

SpectralField hodge_y(const SpectralField& w, const CutoffSpec& chi) {
    return sub(w, gradient(hodge_z(w, chi)));
}

SpectralField hodge_y_curlcurl(const SpectralField& w, const CutoffSpec& chi) {
    require_vector(w);
    const TorusGrid& g = w.grid();
    const SpectralField cc = curl_curl(w);
    std::vector<std::vector<Cplx>> coeffs(static_cast<std::size_t>(g.dim));
    for (int a = 0; a < g.dim; ++a) {
        coeffs[a].resize(static_cast<std::size_t>(g.total()));
        for (std::int64_t flat = 0; flat < g.total(); ++flat) {
            const auto k = g.freqs(flat);
            const double chi_k = chi_at(chi, k, g.dim);
            const double lam = laplacian_weight(g, k);
            const Cplx w_hat = w.spectral(a)[static_cast<std::size_t>(flat)];
            const Cplx cc_hat = cc.spectral(a)[static_cast<std::size_t>(flat)];
            Cplx v = (1.0 - chi_k) * w_hat;
            if (lam != 0.0) v += chi_k / lam * cc_hat;
            coeffs[a][static_cast<std::size_t>(flat)] = v;
        }
    }
    return SpectralField::from_spectral(g, coeffs);
}

HodgeDecomposition decompose(const SpectralField& w, const CutoffSpec& chi) {
    HodgeDecomposition d;
    d.z = hodge_z(w, chi);
    d.y = sub(w, gradient(d.z));
    const SpectralField residual = sub(w, add(d.y, gradient(d.z)));
    d.residual_linf = linf_norm(residual);
    const double scale = linf_norm(w);
    d.rel_residual = scale > 0.0 ? d.residual_linf / scale : d.residual_linf;
    return d;
}

}  // namespace divcurl
