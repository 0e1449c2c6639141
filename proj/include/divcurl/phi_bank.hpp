#pragma once

#include <string>
#include <vector>

#include "divcurl/field.hpp"

namespace divcurl {

/// The frozen v1 bank as JSON text (also shipped under assets/). Entries are
/// low-order trig monomials plus two products of one-dimensional raised
/// cosines, per dimension.
extern const char* const kPhiBankV1Json;

struct PhiBankEntry {
    std::string id;
    SpectralField field;
};

/// Builds the default (v1) bank on a grid.
std::vector<PhiBankEntry> load_phi_bank(const TorusGrid& grid);

/// Builds a bank from JSON text with the same schema as kPhiBankV1Json.
std::vector<PhiBankEntry> load_phi_bank(const TorusGrid& grid, const std::string& json_text);

/// Convenience: fields only.
std::vector<SpectralField> phi_bank_fields(const TorusGrid& grid);

/// Single entry by id from the default bank.
SpectralField phi_bank_field(const TorusGrid& grid, const std::string& id);

}  // namespace divcurl
