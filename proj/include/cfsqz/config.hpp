#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfsqz/analysis.hpp"

namespace cfsqz {

enum class Command { Spectrum, SweepT2, SweepFreq, Optimize, Threshold, Reproduce };

enum class OutputFormat { Csv, Json };

// One complete run description: physics parameters plus the command and its
// options. Built from a key = value config file, then optionally overridden
// by command-line flags.
struct RunConfig {
  OpoParams opo;
  FeedbackParams feedback;
  std::optional<DetectionParams> detection;

  Command command = Command::Spectrum;
  double f_hz = 1.0e6;        // fixed sideband frequency for spectrum/sweep-t2/optimize
  double f_min_hz = 1.0e5;    // sweep-freq lower edge
  double f_max_hz = 8.0e6;    // sweep-freq upper edge (also the bandwidth scan limit)
  int n_points = 400;         // sweep-freq sample count
  int t2_grid = 101;          // sweep-t2 grid size (points k/grid, k = 1..grid)
  GridSpacing spacing = GridSpacing::Linear;
  Baseline baseline = Baseline::UncontrolledIdeal;
  std::string preset;         // reproduce only
  std::string out = "-";      // output path; "-" is stdout, a directory for reproduce
  OutputFormat format = OutputFormat::Csv;

  // Bounds checks across all fields; throws InvalidParameterError naming the
  // offending field, or ThresholdError when x >= 1.
  void validate() const;

  // Every run-level field as (key, rendered value), in the config key order.
  std::vector<std::pair<std::string, std::string>> run_fields() const;

  // Snapshot of the physics parameters plus all run-level fields.
  ParamsSnapshot snapshot() const;
};

const char* command_name(Command c);
const char* format_name(OutputFormat f);
const char* spacing_name(GridSpacing s);
const char* baseline_name(Baseline b);
const char* pump_sign_name(PumpSign s);

// Parses config text: one key = value per line, '#' starts a comment,
// blank lines ignored. Unknown keys, duplicate keys, malformed values and
// missing required keys raise ConfigParseError with the line number;
// out-of-bounds values raise InvalidParameterError via validate().
RunConfig parse_config(const std::string& text);

// parse_config over the contents of a file; IoError when unreadable.
RunConfig load_config(const std::string& path);

}  // namespace cfsqz
