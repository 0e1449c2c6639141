#include "divcurl/phi_bank.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "divcurl/errors.hpp"

namespace divcurl {

// Deterministic test-function bank, version 1. Low-order trig monomials
// plus two products of one-dimensional raised cosines per dimension; all
// entries are band-limited (degree <= 4 per axis). assets/phi_bank_v1.json
// carries the same content.
const char* const kPhiBankV1Json = R"JSON({
  "version": 1,
  "banks": {
    "1": [
      {"id": "one",  "kind": "trig", "form": "cos", "modes": [0]},
      {"id": "cos1", "kind": "trig", "form": "cos", "modes": [1]},
      {"id": "sin1", "kind": "trig", "form": "sin", "modes": [1]},
      {"id": "cos2", "kind": "trig", "form": "cos", "modes": [2]},
      {"id": "sin2", "kind": "trig", "form": "sin", "modes": [2]},
      {"id": "cos3", "kind": "trig", "form": "cos", "modes": [3]},
      {"id": "sin3", "kind": "trig", "form": "sin", "modes": [3]},
      {"id": "cos4", "kind": "trig", "form": "cos", "modes": [4]},
      {"id": "rc2",  "kind": "raised_cosine", "center": [2.0], "power": 2},
      {"id": "rc4",  "kind": "raised_cosine", "center": [3.8], "power": 4}
    ],
    "2": [
      {"id": "one",   "kind": "trig", "form": "cos", "modes": [0, 0]},
      {"id": "cos10", "kind": "trig", "form": "cos", "modes": [1, 0]},
      {"id": "sin01", "kind": "trig", "form": "sin", "modes": [0, 1]},
      {"id": "cos11", "kind": "trig", "form": "cos", "modes": [1, 1]},
      {"id": "sin11", "kind": "trig", "form": "sin", "modes": [1, 1]},
      {"id": "cos20", "kind": "trig", "form": "cos", "modes": [2, 0]},
      {"id": "sin21", "kind": "trig", "form": "sin", "modes": [2, 1]},
      {"id": "cos02", "kind": "trig", "form": "cos", "modes": [0, 2]},
      {"id": "rc2",   "kind": "raised_cosine", "center": [2.0, 2.5], "power": 2},
      {"id": "rc4",   "kind": "raised_cosine", "center": [3.8, 2.4], "power": 4}
    ],
    "3": [
      {"id": "one",    "kind": "trig", "form": "cos", "modes": [0, 0, 0]},
      {"id": "cos100", "kind": "trig", "form": "cos", "modes": [1, 0, 0]},
      {"id": "sin010", "kind": "trig", "form": "sin", "modes": [0, 1, 0]},
      {"id": "sin001", "kind": "trig", "form": "sin", "modes": [0, 0, 1]},
      {"id": "cos111", "kind": "trig", "form": "cos", "modes": [1, 1, 1]},
      {"id": "sin110", "kind": "trig", "form": "sin", "modes": [1, 1, 0]},
      {"id": "cos200", "kind": "trig", "form": "cos", "modes": [2, 0, 0]},
      {"id": "sin102", "kind": "trig", "form": "sin", "modes": [1, 0, 2]},
      {"id": "rc2",    "kind": "raised_cosine", "center": [2.0, 2.5, 3.0], "power": 2},
      {"id": "rc4",    "kind": "raised_cosine", "center": [3.8, 2.4, 1.6], "power": 4}
    ]
  }
})JSON";

namespace {

SpectralField build_entry(const TorusGrid& grid, const nlohmann::json& entry) {
    const std::string kind = entry.at("kind").get<std::string>();
    if (kind == "trig") {
        std::array<int, 3> modes{0, 0, 0};
        const auto& m = entry.at("modes");
        for (int a = 0; a < grid.dim; ++a) modes[a] = m.at(a).get<int>();
        const bool use_sin = entry.at("form").get<std::string>() == "sin";
        return SpectralField::scalar_from(grid, [&](const std::array<double, 3>& x) {
            double phase = 0.0;
            for (int a = 0; a < grid.dim; ++a) phase += modes[a] * x[a];
            return use_sin ? std::sin(phase) : std::cos(phase);
        });
    }
    if (kind == "raised_cosine") {
        std::array<double, 3> center{0.0, 0.0, 0.0};
        const auto& c = entry.at("center");
        for (int a = 0; a < grid.dim; ++a) center[a] = c.at(a).get<double>();
        const int power = entry.at("power").get<int>();
        return SpectralField::scalar_from(grid, [&](const std::array<double, 3>& x) {
            double v = 1.0;
            for (int a = 0; a < grid.dim; ++a)
                v *= std::pow(0.5 * (1.0 + std::cos(x[a] - center[a])), power);
            return v;
        });
    }
    throw SizingError("phi bank: unknown entry kind '" + kind + "'");
}

}  // namespace

std::vector<PhiBankEntry> load_phi_bank(const TorusGrid& grid, const std::string& json_text) {
    const nlohmann::json doc = nlohmann::json::parse(json_text);
    const auto& bank = doc.at("banks").at(std::to_string(grid.dim));
    std::vector<PhiBankEntry> out;
    out.reserve(bank.size());
    for (const auto& entry : bank)
        out.push_back({entry.at("id").get<std::string>(), build_entry(grid, entry)});
    return out;
}

std::vector<PhiBankEntry> load_phi_bank(const TorusGrid& grid) {
    return load_phi_bank(grid, kPhiBankV1Json);
}

std::vector<SpectralField> phi_bank_fields(const TorusGrid& grid) {
    std::vector<SpectralField> out;
    for (auto& e : load_phi_bank(grid)) out.push_back(std::move(e.field));
    return out;
}

SpectralField phi_bank_field(const TorusGrid& grid, const std::string& id) {
    for (auto& e : load_phi_bank(grid))
        if (e.id == id) return std::move(e.field);
    throw SizingError("phi bank: no entry with id '" + id + "'");
}

}  // namespace divcurl
