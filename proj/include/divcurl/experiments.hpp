#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "divcurl/cutoff.hpp"
#include "divcurl/field.hpp"
#include "divcurl/measure.hpp"

namespace divcurl {

/// w_n(x) = (grad Phi)(n x) + c: curl-free, L-inf bounded in n, weak limit c.
/// Built directly in frequency space (coefficient i k_a Phi^(k) placed at
/// mode n k), so curl w_n vanishes identically. Requires
/// n * bandwidth(Phi) <= n_grid/3.
SpectralField gen_gradient_oscillation(const SpectralField& phase_profile,
                                       const std::array<double, 3>& c, int n);

/// v_n(x) = rho(x) * V(n x) for divergence-free V: div v_n = V(nx).grad rho,
/// uniformly bounded in L1 and L-inf. Throws if V is not divergence-free
/// (spectral residual > 1e-12 relative) or the schedule is unresolvable.
SpectralField gen_divfree_oscillation(const SpectralField& divfree_profile,
                                      const SpectralField& envelope, int n);

/// Spectral dilation u(x) -> u(n x): coefficient at k moves to n k.
SpectralField dilate(const SpectralField& u, int n);

struct ExperimentConfig {
    std::string experiment;                  // "E1".."E5"
    int dim = 2;
    int grid_n = 128;
    std::uint64_t seed = 1;
    CutoffSpec chi{0.5, 0.5};
    CutoffSpec chi_a{1.5, 0.5};              // E2 cutoff pair
    CutoffSpec chi_b{3.0, 0.5};
    std::vector<int> grid_list;              // E1
    std::vector<int> n_list;                 // E3/E4
    std::vector<double> h_list;              // E4/E5
    std::string phi_id = "rc2";              // test function from the bank
    std::string phi_bank = "v1";
    std::array<double, 3> center{0.0, 0.0, 0.0};  // vortex / concentration point
    std::vector<Atom> atoms;                 // E2 atomic v
};

/// Frozen per-experiment defaults (grids, schedules, profiles).
ExperimentConfig default_config(const std::string& experiment);

struct ExperimentRow {
    std::string experiment;
    std::string id;
    std::string param_name;
    double param_value = 0.0;
    int grid_n = 0;
    double pairing = 0.0;
    double reference = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
};

struct ExperimentReport {
    std::string experiment;
    std::vector<ExperimentRow> rows;
    ExperimentConfig config;                 // echo
    std::string version;
    double wall_seconds = 0.0;               // metadata only, never in CSV
    bool passed = false;
    std::string note;
    std::map<std::string, double> diagnostics;  // hypothesis ledger etc.
};

/// Runs one experiment:
///  E1 classical-product consistency across grids,
///  E2 cutoff independence (smooth and atomic v),
///  E3 oscillating div-curl convergence against the coefficient reference,
///  E4 measure x L-inf convergence on a joint (h, n) schedule,
///  E5 out-of-hypothesis concentration (demonstrative, always "passed").
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Row convention: abs_error = |pairing - reference|; rel_error =
/// abs_error / |reference| when the reference is nonzero, else abs_error.
/// (E1/E2 store a relative discrepancy directly in `pairing` with
/// reference 0.)
ExperimentRow make_row(std::string experiment, std::string id, std::string param_name,
                       double param_value, int grid_n, double pairing, double reference);

}  // namespace divcurl
