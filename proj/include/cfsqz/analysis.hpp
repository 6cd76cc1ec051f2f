#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfsqz/feedback.hpp"
#include "cfsqz/opo.hpp"

namespace cfsqz {

// Which spectrum a series holds.
enum class SeriesStage { OpenLoop, ClosedLoop, Detected };

// What the independent variable of a series is.
enum class SeriesAxis { FrequencyHz, TransmissivityT2, PumpStrengthX };

enum class PointStatus { Ok, AboveThreshold };

// One evaluated point. s_plus / s_minus are NaN when the point is flagged
// AboveThreshold.
struct SpectrumPoint {
  double axis_value = 0.0;
  double s_plus = 0.0;
  double s_minus = 0.0;
  PointStatus status = PointStatus::Ok;
};

// Full parameter record behind a series, sufficient to recompute any point.
struct ParamsSnapshot {
  OpoParams opo;
  FeedbackParams feedback;
  std::optional<DetectionParams> detection;
  std::optional<double> fixed_frequency_hz;  // set when frequency is not the axis
  // Run-level fields (command, grid sizes, output options, preset notes),
  // emitted after the physics parameters in insertion order.
  std::vector<std::pair<std::string, std::string>> extra;
};

struct SpectrumSeries {
  SeriesStage stage = SeriesStage::ClosedLoop;
  SeriesAxis axis = SeriesAxis::FrequencyHz;
  std::vector<SpectrumPoint> points;
  ParamsSnapshot params;

  // Checks the series invariants: strictly increasing axis values, and
  // finite non-negative powers on every Ok point.
  void validate() const;
};

// Power ratio in decibels, 10*log10(s). Throws InvalidParameterError for s <= 0.
double to_db(double s);

// The standard T2 grid: n points k/n for k = 1..n, covering (0, 1].
std::vector<double> uniform_unit_grid(int n);

// Closed-loop spectra versus CBS transmissivity at a fixed sideband
// frequency. fb_template supplies everything but T2; grid values must lie in
// (0, 1] and increase strictly. Points at or above threshold are flagged.
SpectrumSeries sweep_transmissivity(const OpoParams& op, const FeedbackParams& fb_template,
                                    double omega, const std::vector<double>& t2_grid);

enum class GridSpacing { Linear, Log };

// Closed-loop (optionally detection-corrected) spectra over a frequency
// interval [f_min_hz, f_max_hz] sampled at n points.
SpectrumSeries sweep_frequency(const OpoParams& op, const FeedbackParams& fb,
                               double f_min_hz, double f_max_hz, int n,
                               const std::optional<DetectionParams>& det = std::nullopt,
                               GridSpacing spacing = GridSpacing::Linear);

// Maps every point of a series through detected_spectrum and marks the
// series as Detected.
SpectrumSeries apply_detection(const SpectrumSeries& series, const DetectionParams& det);

// Reference against which a feedback improvement is judged.
enum class Baseline {
  UncontrolledIdeal,  // open loop without the feedback path: T2 = 1, L2 = 0
  SameLoopLoss,       // loop present but fully transmissive: T2 = 1, same L2
};

struct EnhancementReport {
  double t2_star = 1.0;          // transmissivity of best squeezing
  double s_minus_at_star = 1.0;  // squeezed-quadrature power at t2_star
  double baseline_s_minus = 1.0; // squeezed-quadrature power of the baseline
  double improvement_db = 0.0;   // positive gain over baseline; 0 when none
  bool improved = false;
};

// Minimizes the squeezed-quadrature power over T2 in (0, 1] at a fixed
// sideband frequency: coarse scan on a 201-point grid, then golden-section
// refinement of the bracketing interval to 1e-6 in T2.
EnhancementReport optimal_transmissivity(const OpoParams& op, const FeedbackParams& fb_template,
                                         double omega,
                                         Baseline baseline = Baseline::UncontrolledIdeal);

// Largest frequency below which the loop still beats the open-loop (T2 = 1,
// same L2) squeezing. Scans f_max_hz/2000-spaced frequencies and refines the
// first crossing by bisection to 1 kHz; returns 0 when there is no
// enhancement at the lowest grid frequency, f_max_hz when enhancement never
// ends within the scan.
double enhancement_bandwidth(const OpoParams& op, const FeedbackParams& fb, double f_max_hz);

}  // namespace cfsqz
