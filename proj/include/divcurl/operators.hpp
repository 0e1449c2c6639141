#pragma once

#include <cstdint>
#include <vector>

#include "divcurl/field.hpp"
#include "divcurl/symbol.hpp"

namespace divcurl {

/// Antisymmetric matrix field: entry(i,j) = d_i w_j - d_j w_i. Only the
/// strictly upper entries are stored (lex order over pairs i<j); 1D fields
/// have none.
struct MatrixField {
    TorusGrid grid;
    int dim = 0;
    std::vector<SpectralField> upper;

    int upper_index(int i, int j) const;          // requires i < j
    double entry(std::int64_t flat, int i, int j) const;
};

double linf_norm(const MatrixField& m);

/// Diagonal action on the spectrum: out^(k) = m(k) u^(k). Throws
/// SingularSymbolError if the symbol is non-finite on any lattice frequency.
SpectralField apply_multiplier(const Symbol& m, const SpectralField& u);

/// Op(a)u(x) = sum_k a(x,k) u^(k) exp(i k.x) by direct summation; reduces to
/// apply_multiplier for x-independent symbols. Capped at 2^20 grid points.
SpectralField quantize(const Symbol& a, const SpectralField& u);

// Spectral differential operators. All share per-axis derivative factors
// i*k_a with the unmatched Nyquist mode k_a = -n/2 zeroed, so the discrete
// identities grad(div w) = lap w + curl_curl w and curl(grad u) = 0 hold
// exactly mode by mode.
SpectralField gradient(const SpectralField& u);        // scalar -> vector
SpectralField divergence(const SpectralField& w);      // vector -> scalar
SpectralField partial(const SpectralField& u, int axis);
MatrixField curl(const SpectralField& w);              // vector -> matrix
SpectralField curl_curl(const SpectralField& w);       // vector -> vector
SpectralField laplacian(const SpectralField& u);       // componentwise

/// Derivative factor used by the operators above.
Cplx derivative_factor(const TorusGrid& grid, int k);
/// Nyquist-consistent |k|^2 (sum of squared non-Nyquist components).
double laplacian_weight(const TorusGrid& grid, const std::array<int, 3>& k);

/// Product via 3/2 zero padding: both spectra are padded to at least 3n/2
/// points per axis, multiplied physically, truncated back to the symmetric
/// band (Nyquist dropped). Alias-free for in-band data.
/// Component rules: scalar*scalar -> scalar, scalar*vector -> vector
/// (componentwise), vector*vector -> scalar (dot product).
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

}  // namespace divcurl
