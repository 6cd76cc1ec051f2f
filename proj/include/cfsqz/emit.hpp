#pragma once

#include <iosfwd>
#include <string>

#include "cfsqz/analysis.hpp"
#include "cfsqz/config.hpp"

namespace cfsqz {

// All numbers in emitted files are rendered with 12 significant digits.
std::string format_g12(double v);

// The double a consumer gets back when re-parsing format_g12(v).
double quantize_g12(double v);

const char* stage_name(SeriesStage s);
const char* axis_name(SeriesAxis a);
const char* status_name(PointStatus s);

SeriesStage stage_from_name(const std::string& name);
SeriesAxis axis_from_name(const std::string& name);
PointStatus status_from_name(const std::string& name);

// Writes a series as CSV (commented parameter header, then
// axis_value,s_plus,s_minus,s_plus_db,s_minus_db,status rows) or as a JSON
// document with the same content. dB columns are derived from the power
// columns at emission time.
void emit_series(const SpectrumSeries& series, OutputFormat format, std::ostream& out);

// Writes an optimal_transmissivity result with the same parameter header.
void emit_report(const EnhancementReport& report, const ParamsSnapshot& params,
                 OutputFormat format, std::ostream& out);

// Writes an oscillation_threshold result with the same parameter header.
void emit_threshold(double x_threshold, const ParamsSnapshot& params,
                    OutputFormat format, std::ostream& out);

// Reads back a JSON document produced by emit_series.
SpectrumSeries read_series_json(const std::string& text);

// emit_series to a file; IoError when the file cannot be written.
void write_series_file(const SpectrumSeries& series, OutputFormat format,
                       const std::string& path);

}  // namespace cfsqz
