#pragma once

#include "divcurl/cutoff.hpp"
#include "divcurl/field.hpp"

namespace divcurl {

/// Z part of the decomposition w = Y + grad Z:
/// z^(k) = -chi(|k|) (i k . w^(k)) / |k|^2, with the zero mode (and pure
/// Nyquist modes, where the derivative factors vanish) set to 0.
SpectralField hodge_z(const SpectralField& w, const CutoffSpec& chi);

/// Y = w - grad(hodge_z(w)).
SpectralField hodge_y(const SpectralField& w, const CutoffSpec& chi);

/// Same object through the other algebraic route:
/// Y = (1 - chi(D)) w + chi(D) (-lap)^{-1} curl_curl w,
/// with curl_curl computed from the curl matrix. Independent code path,
/// used as a cross-check of hodge_y.
SpectralField hodge_y_curlcurl(const SpectralField& w, const CutoffSpec& chi);

struct HodgeDecomposition {
    SpectralField y;
    SpectralField z;
    double residual_linf = 0.0;   // ||w - Y - grad Z||_inf
    double rel_residual = 0.0;    // residual / ||w||_inf
};

HodgeDecomposition decompose(const SpectralField& w, const CutoffSpec& chi);

}  // namespace divcurl
