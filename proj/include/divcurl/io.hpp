#pragma once

#include <iosfwd>
#include <string>

#include "divcurl/cutoff.hpp"
#include "divcurl/experiments.hpp"
#include "divcurl/field.hpp"
#include "divcurl/hodge_product.hpp"
#include "divcurl/lp.hpp"
#include "divcurl/measure.hpp"

namespace divcurl {

inline constexpr const char* kVersion = "1.0.0";

/// Shortest round-trip decimal form of a double (std::to_chars), locale-free.
std::string format_double(double v);

// -- Field container: JSON manifest {dim, n_per_axis, components,
//    dtype:"f64le", data_file} next to a raw little-endian float64 file,
//    row-major, component-major.
void write_field(const SpectralField& u, const std::string& manifest_path);
SpectralField read_field(const std::string& manifest_path);

// -- Cutoff: {delta, inner, profile:"exp"}.
std::string cutoff_to_json(const CutoffSpec& chi);
CutoffSpec cutoff_from_json(const std::string& text);

// -- Measure: {atoms:[{x:[...], w:[...]}], density_manifest?}. The density
//    field, when present, is written as its own container next to the file.
void write_measure(const VectorMeasure& mu, const std::string& json_path);
VectorMeasure read_measure(const std::string& json_path);

std::string pairing_report_to_json(const PairingReport& r);
std::string chi_report_to_json(const ChiIndependenceReport& r);

// -- Experiment reports.
/// CSV columns, exactly:
/// experiment,id,param_name,param_value,grid_n,pairing,reference,abs_error,rel_error
void emit_csv(const ExperimentReport& report, std::ostream& out);
void emit_csv(const ExperimentReport& report, const std::string& path);
void emit_json(const ExperimentReport& report, std::ostream& out);
void emit_json(const ExperimentReport& report, const std::string& path);
ExperimentReport report_from_json(const std::string& text);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

// -- Kernel tables as CSV.
void emit_kernel_profile_csv(const std::vector<KernelMassRow>& rows, std::ostream& out);
void emit_measure_bound_csv(const std::vector<MeasureBoundRow>& rows, std::ostream& out);

}  // namespace divcurl
