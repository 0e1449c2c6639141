#include "doctest.h"

#include <cmath>
#include <sstream>

#include "divcurl/errors.hpp"
#include "divcurl/experiments.hpp"
#include "divcurl/io.hpp"
#include "divcurl/operators.hpp"
#include "divcurl/phi_bank.hpp"

using namespace divcurl;

namespace {

SpectralField stream_vortex(const TorusGrid& g) {
    return SpectralField::vector_from(g, [](const std::array<double, 3>& x, int c) {
        return c == 0 ? std::sin(x[0]) * std::cos(x[1]) : -std::cos(x[0]) * std::sin(x[1]);
    });
}

SpectralField sin_x1(const TorusGrid& g) {
    return SpectralField::scalar_from(g,
                                      [](const std::array<double, 3>& x) { return std::sin(x[0]); });
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("gradient oscillation: curl-free, bounded, dilated spectrum") {
    const TorusGrid g = make_grid(2, 64);
    const SpectralField Phi = sin_x1(g);
    const std::array<double, 3> c{1.0, 0.0, 0.0};

    for (int n : {1, 2, 4, 8}) {
        const SpectralField w = gen_gradient_oscillation(Phi, c, n);
        CHECK(linf_norm(curl(w)) <= 1e-13 * linf_norm(w));
        // w = (cos(n x1) + 1, 0)
        double err = 0.0;
        for (std::int64_t j = 0; j < g.total(); ++j) {
            err = std::max(err, std::abs(w.physical(0)[static_cast<std::size_t>(j)] -
                                         (std::cos(n * g.point(j)[0]) + 1.0)));
            err = std::max(err, std::abs(w.physical(1)[static_cast<std::size_t>(j)]));
        }
        CHECK(err <= 1e-13);
        CHECK(linf_norm(w) <= 2.0 + 1e-12);
    }

    // spectra of n=1 and n=2 differ by pure index dilation
    const SpectralField w1 = gen_gradient_oscillation(Phi, c, 1);
    const SpectralField w2 = gen_gradient_oscillation(Phi, c, 2);
    const auto i1 = g.encode({g.index_of_freq(1), 0, 0});
    const auto i2 = g.encode({g.index_of_freq(2), 0, 0});
    CHECK(std::abs(w1.spectral(0)[static_cast<std::size_t>(i1)] -
                   w2.spectral(0)[static_cast<std::size_t>(i2)]) <= 1e-15);

    // resolution guard
    CHECK_THROWS_AS(gen_gradient_oscillation(Phi, c, 30), SizingError);  // 3*30 > 64
}

TEST_CASE("gradient oscillation pairings collapse to the constant part") {
    const TorusGrid g = make_grid(2, 64);
    const SpectralField Phi = sin_x1(g);
    const std::array<double, 3> c{1.0, 0.0, 0.0};
    const SpectralField phi = phi_bank_field(g, "rc2");
    const SpectralField c_field =
        SpectralField::vector_from(g, [&c](const std::array<double, 3>&, int comp) { return c[comp]; });
    const double limit = pair(component(c_field, 0), phi);

    // once n exceeds the bandwidth of phi, orthogonality is exact
    for (int n : {8, 16}) {
        const SpectralField w = gen_gradient_oscillation(Phi, c, n);
        const double p = pair(component(w, 0), phi);
        CHECK(p == doctest::Approx(limit).epsilon(1e-13));
    }
}

TEST_CASE("divergence-free oscillation: envelope and bounds") {
    // 256 points keep >= 16 samples per oscillation period at n = 16, which
    // the kinked |v| quadrature needs for the 1% constancy check
    const TorusGrid g = make_grid(2, 256);
    const SpectralField V = stream_vortex(g);
    const SpectralField rho = SpectralField::scalar_from(
        g, [](const std::array<double, 3>& x) { return 1.0 + 0.5 * std::cos(x[0]); });

    CHECK(linf_norm(divergence(V)) <= 1e-13);

    // constant envelope keeps the field divergence-free
    const SpectralField one = SpectralField::scalar_from(
        g, [](const std::array<double, 3>&) { return 1.0; });
    const SpectralField v4 = gen_divfree_oscillation(V, one, 4);
    CHECK(linf_norm(divergence(v4)) <= 1e-12);

    // L1 norm constant in n up to 1%
    std::vector<double> l1s;
    for (int n : {1, 4, 16}) l1s.push_back(l1_norm(gen_divfree_oscillation(V, rho, n)));
    for (double v : l1s) CHECK(v == doctest::Approx(l1s[0]).epsilon(0.01));

    // a non-divergence-free profile is rejected
    const SpectralField bad = SpectralField::vector_from(g, [](const std::array<double, 3>& x, int c) {
        return c == 0 ? std::sin(x[0]) : 0.0;
    });
    CHECK_THROWS_AS(gen_divfree_oscillation(bad, rho, 2), SizingError);
    // unresolvable schedule is rejected
    CHECK_THROWS_AS(gen_divfree_oscillation(V, rho, 120), SizingError);
}

TEST_CASE("dilate moves coefficients without mixing") {
    const TorusGrid g = make_grid(1, 64);
    const SpectralField u = sin_x1(g);
    const SpectralField u3 = dilate(u, 3);
    double err = 0.0;
    for (std::int64_t j = 0; j < g.total(); ++j)
        err = std::max(err, std::abs(u3.physical(0)[static_cast<std::size_t>(j)] -
                                     std::sin(3.0 * g.point(j)[0])));
    CHECK(err <= 1e-13);
    CHECK_THROWS_AS(dilate(u, 40), SizingError);
}

TEST_CASE("E1 consistency experiment at reduced size") {
    ExperimentConfig cfg = default_config("E1");
    cfg.grid_list = {16, 32};
    const ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.passed);
    CHECK(rep.rows.size() == 4);  // analytic + random per grid
    for (const auto& r : rep.rows) CHECK(r.abs_error <= 1e-10);
}

TEST_CASE("E2 cutoff independence at reduced size") {
    ExperimentConfig cfg = default_config("E2");
    cfg.grid_n = 64;
    const ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.passed);
    CHECK(rep.rows.size() == 2);
    CHECK(rep.diagnostics.at("smooth_max_rel_diff") <= 1e-9);
    CHECK(rep.diagnostics.at("atomic_max_rel_diff") <= 1e-9);
    CHECK(rep.diagnostics.at("delta_band_leak") == 0.0);
}

TEST_CASE("E3 oscillation experiment at reduced size") {
    ExperimentConfig cfg = default_config("E3");
    cfg.grid_n = 128;
    cfg.n_list = {2, 4, 8};
    const ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.passed);
    CHECK(rep.diagnostics.at("curl_w_rel_max") <= 1e-13);
    CHECK(rep.diagnostics.at("v_l1_ratio") <= 1.05);
    // errors nonincreasing
    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i)
        CHECK(rep.rows[i + 1].abs_error <= rep.rows[i].abs_error + 1e-12);
}

TEST_CASE("E4 measure experiment at reduced size") {
    ExperimentConfig cfg = default_config("E4");
    cfg.grid_n = 128;
    const ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.passed);
    CHECK(rep.diagnostics.at("tv_ratio") <= 2.0);
    CHECK(rep.diagnostics.at("div_v_rel_max") <= 1e-13);
    CHECK(rep.diagnostics.at("final_rel_gap") <= 0.1);
    for (std::size_t i = 0; i + 1 < rep.rows.size(); ++i)
        CHECK(rep.rows[i + 1].abs_error < rep.rows[i].abs_error);
}

TEST_CASE("E5 concentration keeps a persistent gap") {
    ExperimentConfig cfg = default_config("E5");
    cfg.grid_n = 128;
    const ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.passed);  // demonstrative: always reported
    // the pairing plateaus near the predicted Dirac contribution instead of
    // decaying to the naive reference 0
    const double gap = rep.diagnostics.at("gap_final");
    const double predicted = rep.diagnostics.at("predicted_gap");
    CHECK(gap > 1e-3);
    CHECK(gap == doctest::Approx(predicted).epsilon(0.05));
    // sup norms blow up along the family (the failed hypothesis)
    CHECK(rep.diagnostics.at("w_linf_final") > 0.0);
}

TEST_CASE("experiment determinism: identical config gives identical CSV") {
    ExperimentConfig cfg = default_config("E3");
    cfg.grid_n = 64;
    cfg.n_list = {2, 4};
    std::ostringstream a, b;
    emit_csv(run_experiment(cfg), a);
    emit_csv(run_experiment(cfg), b);
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, 9) == "experimen");
}

TEST_CASE("schedule validation") {
    ExperimentConfig cfg = default_config("E3");
    cfg.n_list = {4, 2};
    CHECK_THROWS_AS(run_experiment(cfg), SizingError);

    ExperimentConfig cfg4 = default_config("E4");
    cfg4.h_list = {0.05, 0.02};  // length mismatch with n_list
    CHECK_THROWS_AS(run_experiment(cfg4), SizingError);

    ExperimentConfig bad = default_config("E1");
    bad.experiment = "E9";
    CHECK_THROWS_AS(run_experiment(bad), SizingError);
    CHECK_THROWS_AS(default_config("bogus"), SizingError);
}

TEST_CASE("rel_error convention in rows") {
    const ExperimentRow r1 = make_row("E3", "x", "n", 2, 64, 1.5, 1.0);
    CHECK(r1.abs_error == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r1.rel_error == doctest::Approx(0.5).epsilon(1e-15));
    const ExperimentRow r0 = make_row("E3", "x", "n", 2, 64, 0.25, 0.0);
    CHECK(r0.rel_error == doctest::Approx(0.25).epsilon(1e-15));  // falls back to abs
}

}  // TEST_SUITE
