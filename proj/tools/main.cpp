// Command-line front end: decompositions, products, cutoff-independence
// checks, kernel tables, measure bounds and the convergence experiments,
// with deterministic file outputs.
//
// Exit codes: 0 pass, 2 tolerance failure, 1 usage/config error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "divcurl/errors.hpp"
#include "divcurl/experiments.hpp"
#include "divcurl/hodge.hpp"
#include "divcurl/hodge_product.hpp"
#include "divcurl/io.hpp"
#include "divcurl/lp.hpp"
#include "divcurl/measure.hpp"
#include "divcurl/operators.hpp"
#include "divcurl/phi_bank.hpp"

namespace fs = std::filesystem;
using namespace divcurl;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitTolerance = 2;

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int grid_n = 0;  // 0 = subcommand default
};

void ensure_out_dir(const GlobalOpts& g) { fs::create_directories(g.out_dir); }

std::string out_path(const GlobalOpts& g, const std::string& name) {
    return (fs::path(g.out_dir) / name).string();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

SpectralField load_or_random(const std::string& manifest, const TorusGrid& g, int comps,
                             int bandwidth, std::uint64_t seed) {
    if (!manifest.empty()) return read_field(manifest);
    return random_band_limited(g, comps, bandwidth, seed);
}

int cmd_decompose(const GlobalOpts& gopt, const std::string& in_manifest, double delta,
                  double inner, int dim) {
    const int n = gopt.grid_n > 0 ? gopt.grid_n : 64;
    const TorusGrid g = make_grid(dim, n);
    const SpectralField w = load_or_random(in_manifest, g, g.dim, std::max(2, g.n / 8), gopt.seed);
    const CutoffSpec chi = make_cutoff(delta, inner);
    const HodgeDecomposition d = decompose(w, chi);

    ensure_out_dir(gopt);
    write_field(d.y, out_path(gopt, "y.json"));
    write_field(d.z, out_path(gopt, "z.json"));
    std::ostringstream rep;
    rep << "{\n  \"residual_linf\": " << format_double(d.residual_linf)
        << ",\n  \"rel_residual\": " << format_double(d.rel_residual)
        << ",\n  \"chi\": " << cutoff_to_json(chi) << "\n}\n";
    write_text_file(out_path(gopt, "decompose_report.json"), rep.str());

    std::cout << "decompose: rel residual " << format_double(d.rel_residual) << "\n";
    return d.rel_residual <= 1e-12 ? kExitPass : kExitTolerance;
}

int cmd_product(const GlobalOpts& gopt, const std::string& in_v, const std::string& in_w,
                double delta, double inner, int dim) {
    const int n = gopt.grid_n > 0 ? gopt.grid_n : 64;
    const TorusGrid g = make_grid(dim, n);
    const SpectralField v = load_or_random(in_v, g, g.dim, std::max(2, g.n / 8), gopt.seed);
    const SpectralField w = load_or_random(in_w, g, g.dim, std::max(2, g.n / 8), gopt.seed + 1);
    const CutoffSpec chi = make_cutoff(delta, inner);

    const SpectralField product = hodge_product_field(v, w, chi);
    const SpectralField direct = dealiased_product(v, w);
    const double scale = std::max(linf_norm(direct), 1e-300);
    const double consistency = linf_norm(sub(product, direct)) / scale;

    ensure_out_dir(gopt);
    write_field(product, out_path(gopt, "product.json"));
    const SpectralField phi = phi_bank_field(g, "rc2");
    const PairingReport pr = hodge_product_pair({v, w, chi, phi});
    write_text_file(out_path(gopt, "product_report.json"), pairing_report_to_json(pr));

    std::cout << "product: classical consistency " << format_double(consistency) << "\n";
    return consistency <= 1e-10 ? kExitPass : kExitTolerance;
}

int cmd_chi_check(const GlobalOpts& gopt, double delta1, double delta2, bool atomic, int dim) {
    const int n = gopt.grid_n > 0 ? gopt.grid_n : 128;
    const TorusGrid g = make_grid(dim, n);
    const SpectralField w = random_band_limited(g, g.dim, std::max(2, g.n / 8), gopt.seed);
    const auto bank = phi_bank_fields(g);
    const CutoffSpec chi1 = make_cutoff(delta1);
    const CutoffSpec chi2 = make_cutoff(delta2);

    ChiIndependenceReport rep;
    if (atomic) {
        const double pi = 0.5 * kTwoPi;
        const VectorMeasure mu = atomic_measure(
            dim, {Atom{{1.1, 2.3, 0.9}, {1.0, 0.5, -0.25}}, Atom{{4.0, 5.2, pi}, {-0.7, 0.2, 0.1}}});
        rep = chi_independence_report(mu, w, chi1, chi2, bank);
    } else {
        const SpectralField v = random_band_limited(g, g.dim, std::max(2, g.n / 8), gopt.seed + 1);
        rep = chi_independence_report(v, w, chi1, chi2, bank);
    }

    ensure_out_dir(gopt);
    write_text_file(out_path(gopt, "chi_report.json"), chi_report_to_json(rep));
    std::cout << "chi-check: max relative pairing difference " << format_double(rep.max_rel_diff)
              << (rep.degenerate ? " (degenerate comparison)" : "") << "\n";
    return rep.max_rel_diff <= 1e-9 ? kExitPass : kExitTolerance;
}

int cmd_lp_kernels(const GlobalOpts& gopt, int levels) {
    const int n = gopt.grid_n > 0 ? gopt.grid_n : 1024;
    const TorusGrid g = make_grid(1, n);

    const Symbol smoothing = bessel_symbol(-1.0);
    const Symbol control = multiplier_symbol(0.0, "one",
                                             [](const std::array<double, 3>&) { return Cplx(1.0, 0.0); });

    const auto rows_smoothing = kernel_l1_profile(smoothing, levels, g);
    const auto rows_control = kernel_l1_profile(control, levels, g);

    ensure_out_dir(gopt);
    {
        std::ostringstream ss;
        emit_kernel_profile_csv(rows_smoothing, ss);
        write_text_file(out_path(gopt, "kernel_masses_m1.csv"), ss.str());
    }
    {
        std::ostringstream ss;
        emit_kernel_profile_csv(rows_control, ss);
        write_text_file(out_path(gopt, "kernel_masses_0.csv"), ss.str());
    }

    const auto ratio_over = [](const std::vector<KernelMassRow>& rows, int j_lo) {
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (const auto& r : rows) {
            if (r.j < j_lo) continue;
            lo = first ? r.scaled_mass : std::min(lo, r.scaled_mass);
            hi = first ? r.scaled_mass : std::max(hi, r.scaled_mass);
            first = false;
        }
        return lo > 0.0 ? hi / lo : 1.0;
    };
    const double r1 = ratio_over(rows_smoothing, 2);
    const double r0 = ratio_over(rows_control, 2);
    std::cout << "lp-kernels: scaled-mass spread " << format_double(r1) << " (order -1), "
              << format_double(r0) << " (order 0)\n";
    return (r1 <= 4.0 && r0 <= 4.0) ? kExitPass : kExitTolerance;
}

int cmd_measure_bound(const GlobalOpts& gopt, std::vector<double> h_list) {
    const int n = gopt.grid_n > 0 ? gopt.grid_n : 1024;
    const TorusGrid g = make_grid(1, n);
    if (h_list.empty()) h_list = {0.05, 0.02, 0.01};
    const double pi = 0.5 * kTwoPi;
    const VectorMeasure mu = atomic_measure(1, {Atom{{pi, 0.0, 0.0}, {1.0, 0.0, 0.0}}});

    ensure_out_dir(gopt);
    double worst = 0.0;
    const std::vector<std::pair<double, std::string>> orders = {{-1.0, "m1"}, {-0.25, "m025"}};
    for (const auto& [order, tag] : orders) {
        const auto rows = measure_action_bound(bessel_symbol(order), mu, h_list, g);
        std::ostringstream ss;
        emit_measure_bound_csv(rows, ss);
        write_text_file(out_path(gopt, "measure_bound_" + tag + ".csv"), ss.str());
        double lo = rows[0].l1_norm, hi = rows[0].l1_norm;
        for (const auto& r : rows) {
            lo = std::min(lo, r.l1_norm);
            hi = std::max(hi, r.l1_norm);
        }
        const double ratio = lo > 0.0 ? hi / lo : 1.0;
        const double cap = order == -1.0 ? 1.5 : 2.0;
        std::cout << "measure-bound: order " << order << " L1 spread " << format_double(ratio)
                  << " (cap " << cap << ")\n";
        worst = std::max(worst, ratio / cap);
    }
    return worst <= 1.0 ? kExitPass : kExitTolerance;
}

int cmd_experiment(const GlobalOpts& gopt, const std::string& id) {
    ExperimentConfig cfg;
    if (!gopt.config_path.empty()) {
        std::ifstream in(gopt.config_path);
        if (!in) {
            std::cerr << "cannot open config " << gopt.config_path << "\n";
            return kExitUsage;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        cfg = config_from_json(ss.str());
        if (!id.empty() && cfg.experiment != id) {
            std::cerr << "config is for " << cfg.experiment << ", requested " << id << "\n";
            return kExitUsage;
        }
    } else {
        cfg = default_config(id);
    }
    if (gopt.grid_n > 0) cfg.grid_n = gopt.grid_n;
    cfg.seed = gopt.seed;

    const ExperimentReport rep = run_experiment(cfg);
    ensure_out_dir(gopt);
    emit_csv(rep, out_path(gopt, cfg.experiment + ".csv"));
    emit_json(rep, out_path(gopt, cfg.experiment + ".json"));

    std::cout << cfg.experiment << ": " << (rep.passed ? "pass" : "FAIL") << " — " << rep.note
              << "\n";
    for (const auto& row : rep.rows) {
        std::cout << "  " << row.id << " " << row.param_name << "=" << format_double(row.param_value)
                  << " pairing=" << format_double(row.pairing)
                  << " ref=" << format_double(row.reference)
                  << " abs_err=" << format_double(row.abs_error) << "\n";
    }
    return rep.passed ? kExitPass : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral div-curl product toolkit on the torus"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts gopt;
    app.add_option("--config", gopt.config_path, "JSON config file (experiment subcommand)");
    app.add_option("--out", gopt.out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", gopt.seed, "RNG seed")->capture_default_str();
    app.add_option("--grid", gopt.grid_n, "grid points per axis (0 = default)");

    auto* dec = app.add_subcommand("decompose", "split a field into Y + grad Z");
    std::string dec_in;
    double dec_delta = 0.5, dec_inner = 0.5;
    int dec_dim = 2;
    dec->add_option("--in", dec_in, "input field manifest (default: seeded random)");
    dec->add_option("--delta", dec_delta, "cutoff radius")->capture_default_str();
    dec->add_option("--inner", dec_inner, "inner support fraction")->capture_default_str();
    dec->add_option("--dim", dec_dim, "dimension")->capture_default_str();

    auto* prod = app.add_subcommand("product", "distributional product of two fields");
    std::string prod_v, prod_w;
    double prod_delta = 0.5, prod_inner = 0.5;
    int prod_dim = 2;
    prod->add_option("--in-v", prod_v, "first field manifest");
    prod->add_option("--in-w", prod_w, "second field manifest");
    prod->add_option("--delta", prod_delta, "cutoff radius")->capture_default_str();
    prod->add_option("--inner", prod_inner, "inner support fraction")->capture_default_str();
    prod->add_option("--dim", prod_dim, "dimension")->capture_default_str();

    auto* chi = app.add_subcommand("chi-check", "cutoff independence of the product");
    double chi_d1 = 1.5, chi_d2 = 3.0;
    bool chi_atomic = false;
    int chi_dim = 2;
    chi->add_option("--delta1", chi_d1, "first cutoff radius")->capture_default_str();
    chi->add_option("--delta2", chi_d2, "second cutoff radius")->capture_default_str();
    chi->add_flag("--atomic", chi_atomic, "use an atomic measure for v");
    chi->add_option("--dim", chi_dim, "dimension")->capture_default_str();

    auto* lpk = app.add_subcommand("lp-kernels", "dyadic kernel mass table (1D)");
    int lp_levels = 6;
    lpk->add_option("--levels", lp_levels, "max dyadic level J")->capture_default_str();

    auto* mb = app.add_subcommand("measure-bound", "L1 bound of Op(a) on mollified atoms (1D)");
    std::vector<double> mb_h;
    mb->add_option("--widths", mb_h, "mollification widths h");

    auto* exp = app.add_subcommand("experiment", "run a convergence experiment");
    std::string exp_id;
    exp->add_option("id", exp_id, "E1..E5")->required(false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (dec->parsed()) return cmd_decompose(gopt, dec_in, dec_delta, dec_inner, dec_dim);
        if (prod->parsed()) return cmd_product(gopt, prod_v, prod_w, prod_delta, prod_inner, prod_dim);
        if (chi->parsed()) return cmd_chi_check(gopt, chi_d1, chi_d2, chi_atomic, chi_dim);
        if (lpk->parsed()) return cmd_lp_kernels(gopt, lp_levels);
        if (mb->parsed()) return cmd_measure_bound(gopt, mb_h);
        if (exp->parsed()) {
            if (exp_id.empty() && gopt.config_path.empty()) {
                std::cerr << "experiment: give an id (E1..E5) or --config\n";
                return kExitUsage;
            }
            return cmd_experiment(gopt, exp_id);
        }
    } catch (const SizingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
