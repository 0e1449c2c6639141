#pragma once

#include "divcurl/symbol.hpp"

namespace divcurl {

/// Radial low-frequency cutoff chi: chi = 0 for |xi| <= inner*delta,
/// chi = 1 for |xi| >= delta, smooth exp-profile transition in between.
struct CutoffSpec {
    double delta = 0.5;
    double inner = 0.5;

    bool operator==(const CutoffSpec&) const = default;
};

/// Validates delta > 0 and inner in (0,1).
CutoffSpec make_cutoff(double delta, double inner = 0.5);

/// chi at radius r = |xi|. Exactly 0 and exactly 1 outside the transition.
double cutoff_value(const CutoffSpec& chi, double r);

/// chi as an order-0 multiplier Symbol.
Symbol cutoff_symbol(const CutoffSpec& chi);

/// Smooth step built from the same profile: 1 on [0,1], 0 on [2,inf).
double smooth_step(double r);

}  // namespace divcurl
