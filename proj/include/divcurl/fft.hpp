#pragma once

#include <complex>
#include <vector>

#include "divcurl/grid.hpp"

namespace divcurl::detail {

using Cplx = std::complex<double>;

/// Forward transform, coefficient-normalized: spec[k] = N^-dim * sum_j
/// phys[j] exp(-i k.x_j). Plans are cached per (dim, n, sign) behind a
/// mutex; execution is safe to call concurrently.
void dft_forward(const TorusGrid& grid, const std::vector<double>& phys,
                 std::vector<Cplx>& spec);

/// Inverse transform: phys[j] = Re sum_k spec[k] exp(+i k.x_j).
void dft_inverse(const TorusGrid& grid, const std::vector<Cplx>& spec,
                 std::vector<double>& phys);

}  // namespace divcurl::detail
