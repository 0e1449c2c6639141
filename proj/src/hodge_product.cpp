#include "divcurl/hodge_product.hpp"

#include <algorithm>
#include <cmath>

#include "divcurl/errors.hpp"
#include "divcurl/operators.hpp"

namespace divcurl {

namespace {

void require_vector(const SpectralField& v, const char* what) {
    if (!v.is_vector()) throw SizingError(std::string(what) + ": expected a vector field");
}

void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* what) {
    if (!(a == b)) throw GridMismatchError(std::string(what) + ": grid mismatch");
}

}  // namespace

SpectralField hodge_product_field(const SpectralField& v, const SpectralField& w,
                                  const CutoffSpec& chi) {
    require_vector(v, "hodge_product_field");
    require_vector(w, "hodge_product_field");
    require_same_grid(v.grid(), w.grid(), "hodge_product_field");

    const SpectralField z = hodge_z(w, chi);
    const SpectralField y = sub(w, gradient(z));

    const SpectralField t1 = dealiased_product(v, y);                  // v . Y
    const SpectralField t2 = dealiased_product(divergence(v), z);      // (div v) Z
    const SpectralField t3 = divergence(dealiased_product(z, v));      // div(v Z)
    return add(sub(t1, t2), t3);
}

SpectralField extended_product_field(const SpectralField& v, const SpectralField& w,
                                     const CutoffSpec& chi) {
    require_vector(v, "extended_product_field");
    require_vector(w, "extended_product_field");
    require_same_grid(v.grid(), w.grid(), "extended_product_field");

    const SpectralField zv = hodge_z(v, chi);
    const SpectralField yv = sub(v, gradient(zv));
    const SpectralField zw = hodge_z(w, chi);
    const SpectralField yw = sub(w, gradient(zw));

    SpectralField out = dealiased_product(yv, yw);                     // Yv . Yw
    out = add(out, divergence(dealiased_product(zv, yw)));             // div(Zv Yw)
    out = sub(out, dealiased_product(divergence(yw), zv));             // (div Yw) Zv
    out = sub(out, dealiased_product(divergence(yv), zw));             // (div Yv) Zw
    out = add(out, divergence(dealiased_product(zw, yv)));             // div(Yv Zw)
    out = add(out, dealiased_product(gradient(zv), gradient(zw)));     // grad Zv . grad Zw
    return out;
}

namespace {

// Pairing of the three product terms for a smooth (field) v; the third term
// is integrated by parts onto grad phi.
PairingReport pair_field_terms(const SpectralField& v, const SpectralField& w,
                               const CutoffSpec& chi, const SpectralField& phi) {
    require_vector(v, "hodge_product_pair");
    PairingReport r;
    r.chi = chi;
    const SpectralField z = hodge_z(w, chi);
    const SpectralField y = sub(w, gradient(z));
    r.t1 = pair(dealiased_product(v, y), phi);
    r.t2 = pair(dealiased_product(divergence(v), z), phi);
    const SpectralField vz = dealiased_product(z, v);
    double t3 = 0.0;
    for (int c = 0; c < v.components(); ++c)
        t3 += pair(component(vz, c), partial(phi, c));
    r.t3 = t3;
    r.total = r.t1 - r.t2 - r.t3;
    return r;
}

// Atomic terms: everything needed at an atom is point-evaluated from the
// continuous representatives; the div-v term pairs as -sum a_k . grad(Z
// phi)(x_k) and enters the total with the product's own minus sign.
PairingReport pair_atomic_terms(const VectorMeasure& mu, const SpectralField& w,
                                const CutoffSpec& chi, const SpectralField& phi) {
    PairingReport r;
    r.chi = chi;
    const SpectralField z = hodge_z(w, chi);
    const SpectralField y = sub(w, gradient(z));
    const SpectralField grad_zphi = gradient(dealiased_product(z, phi));
    const SpectralField grad_phi = gradient(phi);

    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    for (const auto& atom : mu.atoms) {
        const auto y_at = eval_at(y, atom.x);
        const auto gzphi_at = eval_at(grad_zphi, atom.x);
        const auto gphi_at = eval_at(grad_phi, atom.x);
        const double z_at = eval_at(z, atom.x)[0];
        const double phi_at = eval_at(phi, atom.x)[0];
        for (int c = 0; c < mu.dim; ++c) {
            t1 += atom.weight[c] * y_at[c] * phi_at;
            t2 -= atom.weight[c] * gzphi_at[c];   // <div v, Z phi> = -sum a.grad(Z phi)
            t3 += atom.weight[c] * z_at * gphi_at[c];
        }
    }
    r.t1 = t1;
    r.t2 = t2;
    r.t3 = t3;
    r.total = t1 - t2 - t3;
    return r;
}

}  // namespace

PairingReport hodge_product_pair(const PairingRequest& req) {
    require_vector(req.w, "hodge_product_pair");
    if (!req.phi.is_scalar()) throw SizingError("hodge_product_pair: phi must be scalar");
    require_same_grid(req.w.grid(), req.phi.grid(), "hodge_product_pair");

    PairingReport r;
    if (std::holds_alternative<SpectralField>(req.v)) {
        const auto& v = std::get<SpectralField>(req.v);
        require_same_grid(v.grid(), req.w.grid(), "hodge_product_pair");
        r = pair_field_terms(v, req.w, req.chi, req.phi);
    } else {
        const auto& mu = std::get<VectorMeasure>(req.v);
        if (mu.dim != req.w.grid().dim)
            throw GridMismatchError("hodge_product_pair: measure dimension mismatch");
        r = pair_atomic_terms(mu, req.w, req.chi, req.phi);
        if (mu.density) {
            const PairingReport fr = pair_field_terms(*mu.density, req.w, req.chi, req.phi);
            r.t1 += fr.t1;
            r.t2 += fr.t2;
            r.t3 += fr.t3;
            r.total += fr.total;
        }
    }
    r.phi_linf = linf_norm(req.phi);
    return r;
}

double hodge_pairing(const SpectralField& v, const SpectralField& w,
                     const CutoffSpec& chi, const SpectralField& phi) {
    return hodge_product_pair({v, w, chi, phi}).total;
}

double hodge_pairing(const VectorMeasure& v, const SpectralField& w,
                     const CutoffSpec& chi, const SpectralField& phi) {
    return hodge_product_pair({v, w, chi, phi}).total;
}

namespace {

// Residual of the Leibniz identity v.grad(delta) + (div v) delta -
// div(v delta) = 0 for the smooth cutoff difference delta. The div(v delta)
// route goes through the dealiased product and spectral divergence; the
// other two are assembled independently.
double leibniz_residual_field(const SpectralField& v, const SpectralField& delta) {
    const SpectralField t_grad = dealiased_product(v, gradient(delta));
    const SpectralField t_div = dealiased_product(divergence(v), delta);
    const SpectralField t_prod = divergence(dealiased_product(delta, v));
    const SpectralField residual = sub(add(t_grad, t_div), t_prod);
    const double scale = linf_norm(v) * std::max(linf_norm(delta), 1e-300);
    return scale > 0.0 ? linf_norm(residual) / scale : linf_norm(residual);
}

// Atomic counterpart, paired against phi: grad(delta phi) is evaluated
// through the spectral product route while the remaining terms are direct
// point evaluations.
double leibniz_residual_atomic(const VectorMeasure& mu, const SpectralField& delta,
                               const std::vector<SpectralField>& bank) {
    const SpectralField grad_delta = gradient(delta);
    double worst = 0.0;
    for (const auto& phi : bank) {
        const SpectralField grad_dphi = gradient(dealiased_product(delta, phi));
        const SpectralField grad_phi = gradient(phi);
        double acc = 0.0;
        double scale = 0.0;
        for (const auto& atom : mu.atoms) {
            const auto gd = eval_at(grad_delta, atom.x);
            const auto gdp = eval_at(grad_dphi, atom.x);
            const auto gp = eval_at(grad_phi, atom.x);
            const double d_at = eval_at(delta, atom.x)[0];
            const double phi_at = eval_at(phi, atom.x)[0];
            for (int c = 0; c < mu.dim; ++c) {
                // <v.grad d, phi> + <(div v) d, phi> - <div(v d), phi>
                const double term = atom.weight[c] * gd[c] * phi_at -
                                    atom.weight[c] * gdp[c] +
                                    atom.weight[c] * d_at * gp[c];
                acc += term;
                scale += std::abs(atom.weight[c] * gd[c] * phi_at);
            }
        }
        worst = std::max(worst, std::abs(acc) / std::max(scale, 1.0));
    }
    return worst;
}

}  // namespace

ChiIndependenceReport chi_independence_report(
    const std::variant<SpectralField, VectorMeasure>& v, const SpectralField& w,
    const CutoffSpec& chi1, const CutoffSpec& chi2,
    const std::vector<SpectralField>& phi_bank) {
    if (phi_bank.size() < 8)
        throw SizingError("chi_independence_report: need at least 8 test functions");
    require_vector(w, "chi_independence_report");

    ChiIndependenceReport rep;
    rep.chi1 = chi1;
    rep.chi2 = chi2;
    rep.degenerate = (chi1 == chi2);

    for (std::size_t i = 0; i < phi_bank.size(); ++i) {
        PairingRequest r1{v, w, chi1, phi_bank[i]};
        PairingRequest r2{v, w, chi2, phi_bank[i]};
        rep.phi_ids.push_back("phi" + std::to_string(i));
        rep.pairings1.push_back(hodge_product_pair(r1).total);
        rep.pairings2.push_back(hodge_product_pair(r2).total);
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < phi_bank.size(); ++i) {
        const double diff = std::abs(rep.pairings1[i] - rep.pairings2[i]);
        rep.max_abs_diff = std::max(rep.max_abs_diff, diff);
        scale = std::max(scale, std::abs(rep.pairings1[i]));
    }
    rep.max_rel_diff = scale > 0.0 ? rep.max_abs_diff / scale : rep.max_abs_diff;

    // The smooth difference delta = Z_chi1 w - Z_chi2 w is band-limited to
    // |k| < max(delta1, delta2): both cutoffs are exactly 1 beyond.
    const SpectralField delta = sub(hodge_z(w, chi1), hodge_z(w, chi2));
    rep.delta_linf = linf_norm(delta);
    const double band = std::max(chi1.delta, chi2.delta);
    const TorusGrid& g = w.grid();
    for (std::int64_t flat = 0; flat < g.total(); ++flat) {
        const auto k = g.freqs(flat);
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) r2 += static_cast<double>(k[a]) * k[a];
        if (std::sqrt(r2) >= band)
            rep.delta_band_leak = std::max(
                rep.delta_band_leak, std::abs(delta.spectral(0)[static_cast<std::size_t>(flat)]));
    }

    if (std::holds_alternative<SpectralField>(v)) {
        rep.leibniz_residual = leibniz_residual_field(std::get<SpectralField>(v), delta);
    } else {
        rep.leibniz_residual =
            leibniz_residual_atomic(std::get<VectorMeasure>(v), delta, phi_bank);
    }
    return rep;
}

}  // namespace divcurl
