#include "doctest.h"

#include <cmath>

#include "divcurl/cutoff.hpp"
#include "divcurl/errors.hpp"
#include "divcurl/lp.hpp"
#include "divcurl/measure.hpp"
#include "divcurl/operators.hpp"

using namespace divcurl;

namespace {

constexpr double kPi = 0.5 * kTwoPi;

double band_sum(const DyadicPartition& part, double r, int up_to) {
    double acc = 0.0;
    const std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int j = 0; j <= up_to; ++j) acc += part.bands[j]({}, {r, 0.0, 0.0}).real() + 0.0 * x[0];
    return acc;
}

}  // namespace

TEST_SUITE("littlewood_paley") {

TEST_CASE("partition telescopes and covers the low lattice exactly") {
    const TorusGrid g = make_grid(1, 256);
    const int levels = 5;  // 2^6 = 64 <= 128
    const DyadicPartition part = dyadic_partition(levels, g);
    CHECK(part.bands.size() == static_cast<std::size_t>(levels + 1));

    // at xi = 0 only band 0 is alive
    CHECK(part.bands[0]({}, {0.0, 0.0, 0.0}).real() == 1.0);
    for (int j = 1; j <= levels; ++j)
        CHECK(part.bands[j]({}, {0.0, 0.0, 0.0}).real() == 0.0);

    for (int i = 0; i < g.n; ++i) {
        const double r = std::abs(static_cast<double>(g.freq_of_index(i)));
        const double sum = band_sum(part, r, levels);
        const double step = smooth_step(std::ldexp(r, -levels));
        // partial sums telescope to the outer step
        CHECK(std::abs(sum - step) <= 1e-14);
        // and are exactly 1 on |xi| <= 2^{J-1}
        if (r <= std::ldexp(1.0, levels - 1)) CHECK(sum == 1.0);
    }
}

TEST_CASE("band supports are dyadic annuli") {
    const TorusGrid g = make_grid(1, 256);
    const DyadicPartition part = dyadic_partition(5, g);
    for (int j = 1; j <= 5; ++j) {
        for (int k = 0; k <= g.n / 2; ++k) {
            const double v = part.bands[j]({}, {static_cast<double>(k), 0.0, 0.0}).real();
            const double lo = std::ldexp(1.0, j - 1);
            const double hi = std::ldexp(1.0, j + 1);
            if (k < lo || k > hi) CHECK(v == 0.0);
        }
    }
    // any |xi| = 2^j touches at most two consecutive bands
    for (int j = 2; j <= 4; ++j) {
        const double r = std::ldexp(1.0, j);
        int alive = 0;
        for (int b = 0; b <= 5; ++b)
            if (part.bands[b]({}, {r, 0.0, 0.0}).real() != 0.0) ++alive;
        CHECK(alive <= 2);
        CHECK(alive >= 1);
    }
}

TEST_CASE("partition preconditions") {
    const TorusGrid g = make_grid(1, 64);
    CHECK_THROWS_AS(dyadic_partition(0, g), SizingError);
    CHECK_THROWS_AS(dyadic_partition(5, g), SizingError);  // 2^6 = 64 > 32
    CHECK_NOTHROW(dyadic_partition(4, g));
}

TEST_CASE("projector reconstruction and band count") {
    const TorusGrid g = make_grid(1, 256);
    const DyadicPartition part = dyadic_partition(5, g);
    const SpectralField u = random_band_limited(g, 1, 16, 7);  // 16 = 2^{J-1}

    SpectralField acc = lp_project(u, 0, part);
    for (int j = 1; j <= part.levels; ++j) acc = add(acc, lp_project(u, j, part));
    CHECK(linf_norm(sub(acc, u)) <= 1e-13 * linf_norm(u));

    // a single mode lands in at most 2 bands
    const SpectralField mono = SpectralField::scalar_from(
        g, [](const std::array<double, 3>& x) { return std::cos(8.0 * x[0]); });
    int alive = 0;
    for (int j = 0; j <= part.levels; ++j)
        if (linf_norm(lp_project(mono, j, part)) > 1e-14) ++alive;
    CHECK(alive <= 2);

    CHECK_THROWS_AS(lp_project(u, part.levels + 1, part), SizingError);
}

TEST_CASE("band energies stay within the almost-orthogonality window") {
    const TorusGrid g = make_grid(1, 256);
    const DyadicPartition part = dyadic_partition(5, g);
    for (int s = 0; s < 20; ++s) {
        const SpectralField u = random_band_limited(g, 1, 16, 500u + s);
        double energy = 0.0;
        for (int j = 0; j <= part.levels; ++j) {
            const double nj = l2_norm(lp_project(u, j, part));
            energy += nj * nj;
        }
        const double total = l2_norm(u) * l2_norm(u);
        CHECK(energy >= total / 3.0);
        CHECK(energy <= total * 3.0);
    }
}

TEST_CASE("low-pass kernel has unit row integrals") {
    const TorusGrid g = make_grid(1, 256);
    const DyadicPartition part = dyadic_partition(5, g);
    const Symbol one = multiplier_symbol(0.0, "one",
                                         [](const std::array<double, 3>&) { return Cplx(1.0, 0.0); });
    const KernelMatrix k0 = kernel_matrix(one, 0, part, g);
    for (int row = 0; row < k0.n; row += 37) {
        double mass = 0.0;
        for (int col = 0; col < k0.n; ++col) mass += k0.at(row, col);
        CHECK(mass * g.spacing == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("multiplier kernels are Toeplitz") {
    const TorusGrid g = make_grid(1, 128);
    const DyadicPartition part = dyadic_partition(4, g);
    const KernelMatrix km = kernel_matrix(bessel_symbol(-1.0), 3, part, g);
    for (int row = 1; row < km.n; row += 17) {
        for (int col = 1; col < km.n; col += 13) {
            CHECK(std::abs(km.at(row, col) - km.at(row - 1, col - 1)) <= 1e-12);
        }
    }
}

TEST_CASE("kernel sup respects the frequency-sum bound") {
    const TorusGrid g = make_grid(1, 512);
    const DyadicPartition part = dyadic_partition(6, g);
    const Symbol a = bessel_symbol(-1.0);
    for (int j = 2; j <= 6; ++j) {
        const KernelMatrix km = kernel_matrix(a, j, part, g);
        double sup = 0.0;
        for (double v : km.k) sup = std::max(sup, std::abs(v));
        // direct bound: sum_xi |a phi_j| / 2pi, attained on the diagonal
        double bound = 0.0;
        for (int i = 0; i < g.n; ++i) {
            const double r = std::abs(static_cast<double>(g.freq_of_index(i)));
            bound += std::pow(1.0 + r * r, -0.5) * part.bands[j]({}, {r, 0.0, 0.0}).real();
        }
        bound /= kTwoPi;
        CHECK(sup <= bound * (1.0 + 1e-12));
        CHECK(sup >= bound / 4.0);
    }
}

TEST_CASE("kernel masses scale like 2^{j delta}") {
    const TorusGrid g = make_grid(1, 512);
    const auto rows = kernel_l1_profile(bessel_symbol(-1.0), 6, g);
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& r : rows) {
        if (r.j < 2) continue;
        lo = first ? r.scaled_mass : std::min(lo, r.scaled_mass);
        hi = first ? r.scaled_mass : std::max(hi, r.scaled_mass);
        first = false;
        // scaled column is 2^{j} x mass for delta = -1
        CHECK(r.scaled_mass == doctest::Approx(std::ldexp(r.mass, r.j)).epsilon(1e-12));
    }
    CHECK(hi / lo <= 4.0);

    // order-0 control: unscaled masses uniformly bounded
    const auto rows0 = kernel_l1_profile(
        multiplier_symbol(0.0, "one", [](const std::array<double, 3>&) { return Cplx(1.0, 0.0); }),
        6, g);
    double lo0 = 0.0, hi0 = 0.0;
    first = true;
    for (const auto& r : rows0) {
        if (r.j < 2) continue;
        lo0 = first ? r.mass : std::min(lo0, r.mass);
        hi0 = first ? r.mass : std::max(hi0, r.mass);
        first = false;
    }
    CHECK(hi0 / lo0 <= 4.0);
}

TEST_CASE("x-dependent kernels stay within a factor 2 of the multiplier case") {
    const TorusGrid g = make_grid(1, 512);
    const Symbol var{-1.0, false, "var",
                     [](const std::array<double, 3>& x, const std::array<double, 3>& xi) {
                         const double r2 = xi[0] * xi[0];
                         return Cplx((1.0 + 0.5 * std::sin(x[0])) * std::pow(1.0 + r2, -0.5), 0.0);
                     }};
    const auto rows_var = kernel_l1_profile(var, 6, g);
    const auto rows_flat = kernel_l1_profile(bessel_symbol(-1.0), 6, g);
    for (std::size_t i = 2; i < rows_var.size(); ++i) {
        const double ratio = rows_var[i].scaled_mass / rows_flat[i].scaled_mass;
        CHECK(ratio <= 2.0);
        CHECK(ratio >= 0.5);
    }
}

TEST_CASE("kernel study stays in 1D within the size cap") {
    const DyadicPartition part = dyadic_partition(3, make_grid(1, 64));
    CHECK_THROWS_AS(kernel_matrix(bessel_symbol(-1.0), 0, part, make_grid(2, 64)), SizingError);
}

TEST_CASE("measure action bound across the resolved h range") {
    const TorusGrid g = make_grid(1, 1024);
    const VectorMeasure mu = atomic_measure(1, {Atom{{kPi, 0.0, 0.0}, {1.0, 0.0, 0.0}}});
    const std::vector<double> hs{0.05, 0.02, 0.01};

    for (double order : {-1.0, -0.25}) {
        const auto rows = measure_action_bound(bessel_symbol(order), mu, hs, g);
        REQUIRE(rows.size() == hs.size());
        double lo = rows[0].l1_norm, hi = rows[0].l1_norm;
        for (const auto& r : rows) {
            lo = std::min(lo, r.l1_norm);
            hi = std::max(hi, r.l1_norm);
            CHECK(std::isfinite(r.l1_norm));
        }
        CHECK(hi / lo <= (order == -1.0 ? 1.5 : 2.0));
    }

    // an x-dependent negative-order symbol exercises the direct route
    const Symbol var{-1.0, false, "var",
                     [](const std::array<double, 3>& x, const std::array<double, 3>& xi) {
                         const double r2 = xi[0] * xi[0];
                         return Cplx((1.0 + 0.5 * std::sin(x[0])) * std::pow(1.0 + r2, -0.5), 0.0);
                     }};
    const auto rows = measure_action_bound(var, mu, hs, make_grid(1, 256));
    double lo = rows[0].l1_norm, hi = rows[0].l1_norm;
    for (const auto& r : rows) {
        lo = std::min(lo, r.l1_norm);
        hi = std::max(hi, r.l1_norm);
    }
    CHECK(hi / lo <= 1.5);

    // zero measure maps to zero
    const auto zero_rows =
        measure_action_bound(bessel_symbol(-1.0), atomic_measure(1, {}), {0.05}, g);
    CHECK(zero_rows[0].l1_norm == 0.0);

    // nonnegative order is rejected for this check
    CHECK_THROWS_AS(measure_action_bound(bessel_symbol(0.0), mu, hs, g), SizingError);
    // below the resolved regime is rejected
    CHECK_THROWS_AS(measure_action_bound(bessel_symbol(-1.0), mu, {1e-8}, g), SizingError);
}

}  // TEST_SUITE
