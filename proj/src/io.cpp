#include "divcurl/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "divcurl/errors.hpp"

namespace divcurl {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

static_assert(std::endian::native == std::endian::little,
              "field container writer assumes a little-endian host");

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SizingError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SizingError("cannot write " + path);
    out << text;
}

// RFC 4180 quoting: fields with commas, quotes or newlines get quoted,
// embedded quotes doubled.
std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

void write_field(const SpectralField& u, const std::string& manifest_path) {
    const fs::path mpath(manifest_path);
    fs::path data_path = mpath;
    data_path.replace_extension(".f64");

    ordered_json manifest;
    manifest["dim"] = u.grid().dim;
    manifest["n_per_axis"] = u.grid().n;
    manifest["components"] = u.components();
    manifest["dtype"] = "f64le";
    manifest["data_file"] = data_path.filename().string();
    write_text(manifest_path, manifest.dump(2) + "\n");

    std::ofstream out(data_path, std::ios::binary);
    if (!out) throw SizingError("cannot write " + data_path.string());
    for (int c = 0; c < u.components(); ++c) {
        const auto& samples = u.physical(c);
        out.write(reinterpret_cast<const char*>(samples.data()),
                  static_cast<std::streamsize>(samples.size() * sizeof(double)));
    }
}

SpectralField read_field(const std::string& manifest_path) {
    const ordered_json manifest = ordered_json::parse(read_text(manifest_path));
    const int dim = manifest.at("dim").get<int>();
    const int n = manifest.at("n_per_axis").get<int>();
    const int ncomp = manifest.at("components").get<int>();
    if (manifest.at("dtype").get<std::string>() != "f64le")
        throw SizingError("read_field: unsupported dtype");
    const TorusGrid grid = make_grid(dim, n);

    const fs::path data_path =
        fs::path(manifest_path).parent_path() / manifest.at("data_file").get<std::string>();
    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw SizingError("cannot open " + data_path.string());
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(ncomp));
    for (int c = 0; c < ncomp; ++c) {
        samples[c].resize(static_cast<std::size_t>(grid.total()));
        in.read(reinterpret_cast<char*>(samples[c].data()),
                static_cast<std::streamsize>(samples[c].size() * sizeof(double)));
        if (!in) throw SizingError("read_field: data file truncated");
    }
    return SpectralField::from_physical(grid, std::move(samples));
}

std::string cutoff_to_json(const CutoffSpec& chi) {
    ordered_json j;
    j["delta"] = chi.delta;
    j["inner"] = chi.inner;
    j["profile"] = "exp";
    return j.dump();
}

CutoffSpec cutoff_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    if (j.contains("profile") && j.at("profile").get<std::string>() != "exp")
        throw SizingError("cutoff_from_json: unknown profile");
    return make_cutoff(j.at("delta").get<double>(),
                       j.value("inner", 0.5));
}

void write_measure(const VectorMeasure& mu, const std::string& json_path) {
    ordered_json j;
    j["atoms"] = ordered_json::array();
    for (const auto& a : mu.atoms) {
        ordered_json atom;
        atom["x"] = std::vector<double>(a.x.begin(), a.x.begin() + mu.dim);
        atom["w"] = std::vector<double>(a.weight.begin(), a.weight.begin() + mu.dim);
        j["atoms"].push_back(atom);
    }
    j["dim"] = mu.dim;
    if (mu.density) {
        fs::path dpath(json_path);
        dpath.replace_extension(".density.json");
        write_field(*mu.density, dpath.string());
        j["density_manifest"] = dpath.filename().string();
    }
    write_text(json_path, j.dump(2) + "\n");
}

VectorMeasure read_measure(const std::string& json_path) {
    const ordered_json j = ordered_json::parse(read_text(json_path));
    const int dim = j.at("dim").get<int>();
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) {
        Atom atom;
        for (int ax = 0; ax < dim; ++ax) {
            atom.x[ax] = a.at("x").at(ax).get<double>();
            atom.weight[ax] = a.at("w").at(ax).get<double>();
        }
        atoms.push_back(atom);
    }
    VectorMeasure mu = atomic_measure(dim, std::move(atoms));
    if (j.contains("density_manifest")) {
        const fs::path dpath =
            fs::path(json_path).parent_path() / j.at("density_manifest").get<std::string>();
        mu.density = read_field(dpath.string());
    }
    return mu;
}

std::string pairing_report_to_json(const PairingReport& r) {
    ordered_json j;
    j["terms"] = {{"t1", r.t1}, {"t2", r.t2}, {"t3", r.t3}};
    j["total"] = r.total;
    j["chi"] = {{"delta", r.chi.delta}, {"inner", r.chi.inner}, {"profile", "exp"}};
    j["residuals"] = {{"phi_linf", r.phi_linf}};
    return j.dump(2) + "\n";
}

std::string chi_report_to_json(const ChiIndependenceReport& r) {
    ordered_json j;
    j["chi"] = {{"delta1", r.chi1.delta},
                {"delta2", r.chi2.delta},
                {"inner1", r.chi1.inner},
                {"inner2", r.chi2.inner},
                {"degenerate", r.degenerate}};
    ordered_json pairings = ordered_json::array();
    for (std::size_t i = 0; i < r.phi_ids.size(); ++i) {
        pairings.push_back({{"phi", r.phi_ids[i]},
                            {"p1", r.pairings1[i]},
                            {"p2", r.pairings2[i]},
                            {"abs_diff", std::abs(r.pairings1[i] - r.pairings2[i])}});
    }
    j["pairings"] = pairings;
    j["max_abs_diff"] = r.max_abs_diff;
    j["max_rel_diff"] = r.max_rel_diff;
    j["residuals"] = {{"delta_linf", r.delta_linf},
                      {"delta_band_leak", r.delta_band_leak},
                      {"leibniz", r.leibniz_residual}};
    return j.dump(2) + "\n";
}

namespace {

ordered_json config_to_ordered_json(const ExperimentConfig& c) {
    ordered_json j;
    j["experiment"] = c.experiment;
    j["dim"] = c.dim;
    j["grid_n"] = c.grid_n;
    j["seed"] = c.seed;
    j["cutoff"] = {{"delta", c.chi.delta}, {"inner", c.chi.inner}, {"profile", "exp"}};
    j["cutoff_a"] = {{"delta", c.chi_a.delta}, {"inner", c.chi_a.inner}, {"profile", "exp"}};
    j["cutoff_b"] = {{"delta", c.chi_b.delta}, {"inner", c.chi_b.inner}, {"profile", "exp"}};
    j["grid_list"] = c.grid_list;
    j["n_list"] = c.n_list;
    j["h_list"] = c.h_list;
    j["phi_id"] = c.phi_id;
    j["phi_bank"] = c.phi_bank;
    j["center"] = std::vector<double>(c.center.begin(), c.center.begin() + c.dim);
    ordered_json atoms = ordered_json::array();
    for (const auto& a : c.atoms) {
        atoms.push_back({{"x", std::vector<double>(a.x.begin(), a.x.begin() + c.dim)},
                         {"w", std::vector<double>(a.weight.begin(), a.weight.begin() + c.dim)}});
    }
    j["atoms"] = atoms;
    return j;
}

CutoffSpec cutoff_from(const ordered_json& j, const CutoffSpec& fallback) {
    if (j.is_null()) return fallback;
    return make_cutoff(j.at("delta").get<double>(), j.value("inner", 0.5));
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) {
    return config_to_ordered_json(config).dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    ExperimentConfig c = default_config(j.at("experiment").get<std::string>());
    c.dim = j.value("dim", c.dim);
    c.grid_n = j.value("grid_n", c.grid_n);
    c.seed = j.value("seed", c.seed);
    c.chi = cutoff_from(j.value("cutoff", ordered_json()), c.chi);
    c.chi_a = cutoff_from(j.value("cutoff_a", ordered_json()), c.chi_a);
    c.chi_b = cutoff_from(j.value("cutoff_b", ordered_json()), c.chi_b);
    if (j.contains("grid_list")) c.grid_list = j.at("grid_list").get<std::vector<int>>();
    if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<int>>();
    if (j.contains("h_list")) c.h_list = j.at("h_list").get<std::vector<double>>();
    c.phi_id = j.value("phi_id", c.phi_id);
    c.phi_bank = j.value("phi_bank", c.phi_bank);
    if (j.contains("center")) {
        const auto v = j.at("center").get<std::vector<double>>();
        for (std::size_t a = 0; a < v.size() && a < 3; ++a) c.center[a] = v[a];
    }
    if (j.contains("atoms")) {
        c.atoms.clear();
        for (const auto& a : j.at("atoms")) {
            Atom atom;
            const auto xs = a.at("x").get<std::vector<double>>();
            const auto ws = a.at("w").get<std::vector<double>>();
            for (std::size_t ax = 0; ax < xs.size() && ax < 3; ++ax) atom.x[ax] = xs[ax];
            for (std::size_t ax = 0; ax < ws.size() && ax < 3; ++ax) atom.weight[ax] = ws[ax];
            c.atoms.push_back(atom);
        }
    }
    return c;
}

void emit_csv(const ExperimentReport& report, std::ostream& out) {
    out << "experiment,id,param_name,param_value,grid_n,pairing,reference,abs_error,rel_error\n";
    for (const auto& r : report.rows) {
        out << csv_escape(r.experiment) << ',' << csv_escape(r.id) << ','
            << csv_escape(r.param_name) << ',' << format_double(r.param_value) << ','
            << r.grid_n << ',' << format_double(r.pairing) << ',' << format_double(r.reference)
            << ',' << format_double(r.abs_error) << ',' << format_double(r.rel_error) << '\n';
    }
}

void emit_csv(const ExperimentReport& report, const std::string& path) {
    std::ostringstream ss;
    emit_csv(report, ss);
    write_text(path, ss.str());
}

void emit_json(const ExperimentReport& report, std::ostream& out) {
    ordered_json j;
    j["experiment"] = report.experiment;
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"experiment", r.experiment},
                        {"id", r.id},
                        {"param_name", r.param_name},
                        {"param_value", r.param_value},
                        {"grid_n", r.grid_n},
                        {"pairing", r.pairing},
                        {"reference", r.reference},
                        {"abs_error", r.abs_error},
                        {"rel_error", r.rel_error}});
    }
    j["rows"] = rows;
    j["passed"] = report.passed;
    j["note"] = report.note;
    j["diagnostics"] = report.diagnostics;
    j["metadata"] = {{"config", config_to_ordered_json(report.config)},
                     {"version", report.version},
                     {"wall_seconds", report.wall_seconds}};
    out << j.dump(2) << "\n";
}

void emit_json(const ExperimentReport& report, const std::string& path) {
    std::ostringstream ss;
    emit_json(report, ss);
    write_text(path, ss.str());
}

ExperimentReport report_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    ExperimentReport rep;
    rep.experiment = j.at("experiment").get<std::string>();
    for (const auto& r : j.at("rows")) {
        ExperimentRow row;
        row.experiment = r.at("experiment").get<std::string>();
        row.id = r.at("id").get<std::string>();
        row.param_name = r.at("param_name").get<std::string>();
        row.param_value = r.at("param_value").get<double>();
        row.grid_n = r.at("grid_n").get<int>();
        row.pairing = r.at("pairing").get<double>();
        row.reference = r.at("reference").get<double>();
        row.abs_error = r.at("abs_error").get<double>();
        row.rel_error = r.at("rel_error").get<double>();
        rep.rows.push_back(row);
    }
    rep.passed = j.at("passed").get<bool>();
    rep.note = j.at("note").get<std::string>();
    rep.diagnostics = j.at("diagnostics").get<std::map<std::string, double>>();
    rep.config = config_from_json(j.at("metadata").at("config").dump());
    rep.version = j.at("metadata").at("version").get<std::string>();
    rep.wall_seconds = j.at("metadata").at("wall_seconds").get<double>();
    return rep;
}

void emit_kernel_profile_csv(const std::vector<KernelMassRow>& rows, std::ostream& out) {
    out << "j,mass,scaled_mass\n";
    for (const auto& r : rows)
        out << r.j << ',' << format_double(r.mass) << ',' << format_double(r.scaled_mass) << '\n';
}

void emit_measure_bound_csv(const std::vector<MeasureBoundRow>& rows, std::ostream& out) {
    out << "h,l1_norm\n";
    for (const auto& r : rows)
        out << format_double(r.h) << ',' << format_double(r.l1_norm) << '\n';
}

}  // namespace divcurl
