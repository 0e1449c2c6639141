#include "divcurl/cutoff.hpp"

#include <cmath>
#include <string>

#include "divcurl/errors.hpp"

namespace divcurl {

namespace {

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// eta(t): 0 for t <= inner, 1 for t >= 1, exp-profile in between. Exactly
// 0 and exactly 1 outside the transition band.
double eta(double t, double inner) {
    if (t <= inner) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = bump(t - inner);
    const double b = bump(1.0 - t);
    return a / (a + b);
}

}  // namespace

CutoffSpec make_cutoff(double delta, double inner) {
    if (!(delta > 0.0))
        throw SizingError("make_cutoff: delta must be positive, got " + std::to_string(delta));
    if (!(inner > 0.0 && inner < 1.0))
        throw SizingError("make_cutoff: inner fraction must lie in (0,1), got " +
                          std::to_string(inner));
    return CutoffSpec{delta, inner};
}

double cutoff_value(const CutoffSpec& chi, double r) { return eta(r / chi.delta, chi.inner); }

Symbol cutoff_symbol(const CutoffSpec& chi) {
    return multiplier_symbol(0.0, "chi", [chi](const std::array<double, 3>& xi) {
        const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        return Cplx(cutoff_value(chi, r), 0.0);
    });
}

double smooth_step(double r) {
    // 1 on [0,1], 0 on [2,inf): the cutoff profile flipped and rescaled.
    return 1.0 - eta(0.5 * r, 0.5);
}

}  // namespace divcurl
