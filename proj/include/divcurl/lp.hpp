#pragma once

#include <vector>

#include "divcurl/measure.hpp"
#include "divcurl/operators.hpp"
#include "divcurl/symbol.hpp"

namespace divcurl {

/// Dyadic partition of unity on the frequency lattice:
/// band 0 = S(|xi|), band j = S(2^-j |xi|) - S(2^-j+1 |xi|), with S the
/// smooth step (1 on [0,1], 0 on [2,inf)). Partial sums telescope exactly;
/// band j >= 1 is supported in 2^{j-1} <= |xi| <= 2^{j+1}.
struct DyadicPartition {
    int levels = 0;               // J
    std::vector<Symbol> bands;    // size J+1
};

/// Requires J >= 1 and 2^{J+1} <= n/2 on the working grid.
DyadicPartition dyadic_partition(int levels, const TorusGrid& grid);

/// Multiplier application of band j; throws for j > J.
SpectralField lp_project(const SpectralField& u, int j, const DyadicPartition& part);

/// Dense band kernel on a 1D grid (rows = x, cols = y):
/// K_j(x,y) = (2*pi)^-1 sum_xi a(x,xi) phi_j(xi) exp(i (x-y) xi).
/// Real part stored; symbols are expected even-real. Capped at n <= 1024.
struct KernelMatrix {
    int n = 0;
    std::vector<double> k;        // row-major n*n

    double at(int row, int col) const { return k[static_cast<std::size_t>(row) * n + col]; }
};

KernelMatrix kernel_matrix(const Symbol& a, int j, const DyadicPartition& part,
                           const TorusGrid& grid_1d);

/// Max over x of the row L1 mass of K_j, integrated in y.
double kernel_row_mass(const KernelMatrix& km, const TorusGrid& grid_1d);

struct KernelMassRow {
    int j = 0;
    double mass = 0.0;            // max_x integral |K_j(x, .)|
    double scaled_mass = 0.0;     // 2^{-j*order} * mass
};

/// Row masses across bands 0..J with the 2^{-j delta} scaling column.
std::vector<KernelMassRow> kernel_l1_profile(const Symbol& a, int levels,
                                             const TorusGrid& grid_1d);

struct MeasureBoundRow {
    double h = 0.0;
    double l1_norm = 0.0;         // ||Op(a) mollify(mu, h)||_L1
};

/// L1 norms of Op(a) applied to mollified atoms across a resolved h-list.
/// Requires a.order < 0.
std::vector<MeasureBoundRow> measure_action_bound(const Symbol& a, const VectorMeasure& mu,
                                                  const std::vector<double>& h_list,
                                                  const TorusGrid& grid_1d);

}  // namespace divcurl
