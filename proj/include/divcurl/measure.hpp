#pragma once

#include <array>
#include <optional>
#include <vector>

#include "divcurl/field.hpp"

namespace divcurl {

struct Atom {
    std::array<double, 3> x{0.0, 0.0, 0.0};       // location in [0, 2*pi)^dim
    std::array<double, 3> weight{0.0, 0.0, 0.0};  // vector weight
};

/// Finite vector measure: atoms plus an optional band-limited density part.
struct VectorMeasure {
    int dim = 0;
    std::vector<Atom> atoms;
    std::optional<SpectralField> density;
};

/// Purely atomic measure. Throws SizingError for locations outside the
/// fundamental domain or non-finite weights.
VectorMeasure atomic_measure(int dim, std::vector<Atom> atoms);

/// Total variation estimate: sum of weight magnitudes plus the L1 norm of
/// the density part.
double total_variation(const VectorMeasure& mu);
/// Field overload: the discrete L1 norm.
double total_variation(const SpectralField& u);

/// Convolution with the periodic heat kernel, G_h^(k) = exp(-h|k|^2):
/// each atom contributes weight * G_h(x - x0); the density part passes
/// through the same multiplier. Nyquist modes are dropped (realness).
SpectralField mollify(const VectorMeasure& mu, double h, const TorusGrid& grid);

/// Divergence-free concentrating family on the 2D torus: v_h = perp-grad of
/// the mollified Green function, G^(k) = exp(-h|k|^2)/|k|^2 (k != 0). Its
/// divergence vanishes identically; its curl scalar is the negative of the
/// mean-free heat-mollified unit Dirac at x0.
SpectralField point_vortex(const std::array<double, 3>& x0, double h, const TorusGrid& grid);

/// Smallest h at which heat kernels span >= 6 grid cells: (6/n)^2. Measure
/// pipelines are accurate only at h at or above this.
double resolved_h_min(const TorusGrid& grid);

}  // namespace divcurl
