#include "doctest.h"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "divcurl/errors.hpp"
#include "divcurl/io.hpp"
#include "divcurl/phi_bank.hpp"

using namespace divcurl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("divcurl_io_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

// Minimal RFC 4180 reader: quoted fields, doubled quotes, LF/CRLF rows.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(field);
            field.clear();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            row.push_back(field);
            field.clear();
            rows.push_back(row);
            row.clear();
        } else {
            field += c;
        }
    }
    if (!field.empty() || !row.empty()) {
        row.push_back(field);
        rows.push_back(row);
    }
    return rows;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("field container round trip is bit exact") {
    TempDir tmp;
    const TorusGrid g = make_grid(2, 32);
    const SpectralField u = random_band_limited(g, 2, 7, 1234);
    write_field(u, tmp.file("w.json"));
    const SpectralField back = read_field(tmp.file("w.json"));

    REQUIRE(back.components() == u.components());
    REQUIRE(back.grid() == u.grid());
    for (int c = 0; c < u.components(); ++c)
        for (std::size_t j = 0; j < u.physical(c).size(); ++j)
            CHECK(back.physical(c)[j] == u.physical(c)[j]);

    // manifest carries the agreed keys
    const std::string manifest = slurp(tmp.file("w.json"));
    for (const char* key : {"dim", "n_per_axis", "components", "f64le", "data_file"})
        CHECK(manifest.find(key) != std::string::npos);
}

TEST_CASE("cutoff serialization round trip") {
    const CutoffSpec chi = make_cutoff(1.5, 0.25);
    const CutoffSpec back = cutoff_from_json(cutoff_to_json(chi));
    CHECK(back.delta == chi.delta);
    CHECK(back.inner == chi.inner);
    CHECK(cutoff_to_json(chi).find("\"profile\":\"exp\"") != std::string::npos);
}

TEST_CASE("measure serialization with and without density") {
    TempDir tmp;
    VectorMeasure mu = atomic_measure(
        2, {Atom{{1.0, 2.0, 0.0}, {0.5, -0.25, 0.0}}, Atom{{3.0, 4.0, 0.0}, {1.0, 1.0, 0.0}}});
    write_measure(mu, tmp.file("mu.json"));
    const VectorMeasure back = read_measure(tmp.file("mu.json"));
    REQUIRE(back.atoms.size() == 2);
    CHECK(back.atoms[1].x[1] == 4.0);
    CHECK(back.atoms[0].weight[1] == -0.25);
    CHECK(!back.density.has_value());

    mu.density = random_band_limited(make_grid(2, 16), 2, 4, 55);
    write_measure(mu, tmp.file("mu2.json"));
    const VectorMeasure back2 = read_measure(tmp.file("mu2.json"));
    REQUIRE(back2.density.has_value());
    CHECK(total_variation(back2) == doctest::Approx(total_variation(mu)).epsilon(1e-14));
}

TEST_CASE("experiment CSV: header, columns, RFC 4180") {
    ExperimentReport rep;
    rep.experiment = "E1";
    rep.config = default_config("E1");
    rep.version = kVersion;
    rep.rows.push_back(make_row("E1", "id,with,commas", "N", 32, 32, 0.5, 1.0));
    rep.rows.push_back(make_row("E1", "quote\"inside", "N", 64, 64, 0.25, 0.0));

    std::ostringstream ss;
    emit_csv(rep, ss);
    const auto rows = parse_csv(ss.str());
    REQUIRE(rows.size() == 3);
    const std::vector<std::string> header{"experiment", "id",        "param_name",
                                          "param_value", "grid_n",   "pairing",
                                          "reference",   "abs_error", "rel_error"};
    CHECK(rows[0] == header);
    CHECK(rows[1][1] == "id,with,commas");
    CHECK(rows[2][1] == "quote\"inside");
    // errors recomputable from stored columns
    CHECK(std::abs(std::stod(rows[1][7]) -
                   std::abs(std::stod(rows[1][5]) - std::stod(rows[1][6]))) == 0.0);

    // zero-row report emits a header-only file
    ExperimentReport empty;
    empty.experiment = "E1";
    empty.config = default_config("E1");
    std::ostringstream se;
    emit_csv(empty, se);
    CHECK(parse_csv(se.str()).size() == 1);
}

TEST_CASE("experiment JSON round trip is faithful") {
    ExperimentConfig cfg = default_config("E4");
    cfg.grid_n = 128;
    ExperimentReport rep = run_experiment(cfg);

    std::ostringstream ss;
    emit_json(rep, ss);
    const ExperimentReport back = report_from_json(ss.str());
    CHECK(back.experiment == rep.experiment);
    REQUIRE(back.rows.size() == rep.rows.size());
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        CHECK(back.rows[i].pairing == rep.rows[i].pairing);
        CHECK(back.rows[i].reference == rep.rows[i].reference);
        CHECK(back.rows[i].id == rep.rows[i].id);
    }
    CHECK(back.passed == rep.passed);
    CHECK(back.config.grid_n == 128);

    // emit(parse(emit(x))) is byte-stable
    std::ostringstream ss2;
    emit_json(back, ss2);
    CHECK(ss2.str() == ss.str());
}

TEST_CASE("config JSON honors overrides and defaults") {
    const std::string text = R"({
        "experiment": "E3",
        "grid_n": 64,
        "seed": 9,
        "cutoff": {"delta": 0.75, "inner": 0.5},
        "n_list": [2, 4]
    })";
    const ExperimentConfig cfg = config_from_json(text);
    CHECK(cfg.experiment == "E3");
    CHECK(cfg.grid_n == 64);
    CHECK(cfg.seed == 9);
    CHECK(cfg.chi.delta == 0.75);
    CHECK(cfg.n_list == std::vector<int>{2, 4});
    CHECK(cfg.phi_id == "rc4");  // E3 default preserved

    const ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.grid_n == cfg.grid_n);
    CHECK(back.chi.delta == cfg.chi.delta);
    CHECK(back.n_list == cfg.n_list);
}

TEST_CASE("kernel and measure tables emit the agreed columns") {
    std::ostringstream k;
    emit_kernel_profile_csv({{0, 1.5, 1.5}, {1, 0.75, 1.5}}, k);
    const auto krows = parse_csv(k.str());
    CHECK(krows[0] == std::vector<std::string>{"j", "mass", "scaled_mass"});
    CHECK(krows[1] == std::vector<std::string>{"0", "1.5", "1.5"});

    std::ostringstream m;
    emit_measure_bound_csv({{0.05, 1.0}}, m);
    const auto mrows = parse_csv(m.str());
    CHECK(mrows[0] == std::vector<std::string>{"h", "l1_norm"});
    CHECK(mrows[1] == std::vector<std::string>{"0.05", "1"});
}

TEST_CASE("format_double round trips doubles exactly") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("embedded phi bank matches the shipped asset") {
    const std::string asset_path = std::string(DIVCURL_ASSET_DIR) + "/phi_bank_v1.json";
    std::ifstream in(asset_path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    // parse both and compare semantically (whitespace-insensitive)
    const TorusGrid g = make_grid(2, 16);
    const auto from_asset = load_phi_bank(g, ss.str());
    const auto from_code = load_phi_bank(g);
    REQUIRE(from_asset.size() == from_code.size());
    for (std::size_t i = 0; i < from_code.size(); ++i) {
        CHECK(from_asset[i].id == from_code[i].id);
        CHECK(linf_norm(sub(from_asset[i].field, from_code[i].field)) == 0.0);
    }
}

TEST_CASE("read_field rejects bad manifests") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("bad.json"));
        out << R"({"dim":2,"n_per_axis":16,"components":1,"dtype":"f32le","data_file":"x.f64"})";
    }
    CHECK_THROWS_AS(read_field(tmp.file("bad.json")), SizingError);
    CHECK_THROWS_AS(read_field(tmp.file("missing.json")), SizingError);
}

}  // TEST_SUITE
