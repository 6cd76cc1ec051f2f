#include "cfsqz/analysis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cfsqz {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kGoldenRatio = 0.6180339887498949;  // (sqrt(5) - 1) / 2

// Evaluates both quadratures at one operating point, flagging it instead of
// throwing when the point is at or above threshold.
SpectrumPoint eval_point(const OpoParams& op, const FeedbackParams& fb, double omega,
                         double axis_value) {
  SpectrumPoint pt;
  pt.axis_value = axis_value;
  try {
    pt.s_plus = closed_loop_spectrum(op, fb, omega, QuadratureSign::Plus);
    pt.s_minus = closed_loop_spectrum(op, fb, omega, QuadratureSign::Minus);
  } catch (const ThresholdError&) {
    pt.s_plus = kNan;
    pt.s_minus = kNan;
    pt.status = PointStatus::AboveThreshold;
  }
  return pt;
}

}  // namespace

void SpectrumSeries::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SpectrumPoint& pt = points[i];
    if (i > 0 && !(pt.axis_value > points[i - 1].axis_value)) {
      std::ostringstream msg;
      msg << "axis values must increase strictly; point " << i << " has "
          << pt.axis_value << " after " << points[i - 1].axis_value;
      throw InvalidParameterError(msg.str());
    }
    if (pt.status == PointStatus::Ok &&
        !(std::isfinite(pt.s_plus) && pt.s_plus >= 0.0 && std::isfinite(pt.s_minus) &&
          pt.s_minus >= 0.0)) {
      std::ostringstream msg;
      msg << "point " << i << " is Ok but has non-finite or negative power";
      throw InvalidParameterError(msg.str());
    }
  }
}

double to_db(double s) {
  if (!(s > 0.0)) {
    std::ostringstream msg;
    msg << "dB level undefined for power " << s << " (must be > 0)";
    throw InvalidParameterError(msg.str());
  }
  return 10.0 * std::log10(s);
}

std::vector<double> uniform_unit_grid(int n) {
  if (n < 1) throw InvalidParameterError("grid size must be at least 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) grid.push_back(static_cast<double>(k) / n);
  return grid;
}

SpectrumSeries sweep_transmissivity(const OpoParams& op, const FeedbackParams& fb_template,
                                    double omega, const std::vector<double>& t2_grid) {
  op.validate();
  fb_template.validate();
  if (t2_grid.empty()) throw InvalidParameterError("t2 grid must not be empty");
  for (std::size_t i = 0; i < t2_grid.size(); ++i) {
    if (!(t2_grid[i] > 0.0 && t2_grid[i] <= 1.0)) {
      std::ostringstream msg;
      msg << "t2 grid value " << t2_grid[i] << " outside (0, 1]";
      throw InvalidParameterError(msg.str());
    }
    if (i > 0 && !(t2_grid[i] > t2_grid[i - 1])) {
      throw InvalidParameterError("t2 grid must increase strictly");
    }
  }

  SpectrumSeries series;
  series.stage = SeriesStage::ClosedLoop;
  series.axis = SeriesAxis::TransmissivityT2;
  series.params.opo = op;
  series.params.feedback = fb_template;
  series.params.fixed_frequency_hz = omega / (2.0 * kPi);
  series.points.reserve(t2_grid.size());
  for (double t2 : t2_grid) {
    FeedbackParams fb = fb_template;
    fb.T2 = t2;
    series.points.push_back(eval_point(op, fb, omega, t2));
  }
  return series;
}

SpectrumSeries sweep_frequency(const OpoParams& op, const FeedbackParams& fb,
                               double f_min_hz, double f_max_hz, int n,
                               const std::optional<DetectionParams>& det,
                               GridSpacing spacing) {
  op.validate();
  fb.validate();
  if (det) det->validate();
  if (!(f_min_hz > 0.0)) throw InvalidParameterError("fmin must be > 0");
  if (!(f_max_hz > f_min_hz)) throw InvalidParameterError("fmax must exceed fmin");
  if (n < 2) throw InvalidParameterError("n must be at least 2");

  SpectrumSeries series;
  series.stage = det ? SeriesStage::Detected : SeriesStage::ClosedLoop;
  series.axis = SeriesAxis::FrequencyHz;
  series.params.opo = op;
  series.params.feedback = fb;
  series.params.detection = det;
  series.points.reserve(static_cast<std::size_t>(n));

  const double log_ratio = std::log(f_max_hz / f_min_hz);
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    const double f = spacing == GridSpacing::Linear
                         ? f_min_hz + u * (f_max_hz - f_min_hz)
                         : f_min_hz * std::exp(u * log_ratio);
    SpectrumPoint pt = eval_point(op, fb, 2.0 * kPi * f, f);
    if (det && pt.status == PointStatus::Ok) {
      pt.s_plus = detected_spectrum(pt.s_plus, *det);
      pt.s_minus = detected_spectrum(pt.s_minus, *det);
    }
    series.points.push_back(pt);
  }
  return series;
}

SpectrumSeries apply_detection(const SpectrumSeries& series, const DetectionParams& det) {
  det.validate();
  if (series.stage == SeriesStage::Detected) {
    throw InvalidParameterError("series is already detection-corrected");
  }
  SpectrumSeries out = series;
  out.stage = SeriesStage::Detected;
  out.params.detection = det;
  for (SpectrumPoint& pt : out.points) {
    if (pt.status != PointStatus::Ok) continue;
    pt.s_plus = detected_spectrum(pt.s_plus, det);
    pt.s_minus = detected_spectrum(pt.s_minus, det);
  }
  return out;
}

EnhancementReport optimal_transmissivity(const OpoParams& op, const FeedbackParams& fb_template,
                                         double omega, Baseline baseline) {
  op.validate();
  fb_template.validate();

  double baseline_s;
  if (baseline == Baseline::UncontrolledIdeal) {
    baseline_s = open_loop_spectrum(op, omega, QuadratureSign::Minus);
  } else {
    FeedbackParams open = fb_template;
    open.T2 = 1.0;
    baseline_s = closed_loop_spectrum(op, open, omega, QuadratureSign::Minus);
  }

  const auto eval = [&](double t2) {
    FeedbackParams fb = fb_template;
    fb.T2 = t2;
    try {
      return closed_loop_spectrum(op, fb, omega, QuadratureSign::Minus);
    } catch (const ThresholdError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  // Coarse scan: T2 = k/201 for k = 1..201. T2 = 1 is always below
  // threshold, so a finite minimum exists.
  constexpr int kCoarse = 201;
  int best_k = kCoarse;
  double best_s = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kCoarse; ++k) {
    const double s = eval(static_cast<double>(k) / kCoarse);
    if (s < best_s) {
      best_s = s;
      best_k = k;
    }
  }
  double best_t2 = static_cast<double>(best_k) / kCoarse;

  // Golden-section refinement of the bracketing interval.
  double lo = static_cast<double>(best_k - 1) / kCoarse;
  double hi = static_cast<double>(std::min(best_k + 1, kCoarse)) / kCoarse;
  if (lo <= 0.0) lo = 0.5 / kCoarse;
  double a = hi - kGoldenRatio * (hi - lo);
  double b = lo + kGoldenRatio * (hi - lo);
  double fa = eval(a);
  double fb = eval(b);
  while (hi - lo > 1e-6) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - kGoldenRatio * (hi - lo);
      fa = eval(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + kGoldenRatio * (hi - lo);
      fb = eval(b);
    }
    if (fa < best_s) {
      best_s = fa;
      best_t2 = a;
    }
    if (fb < best_s) {
      best_s = fb;
      best_t2 = b;
    }
  }

  EnhancementReport report;
  report.t2_star = best_t2;
  report.s_minus_at_star = best_s;
  report.baseline_s_minus = baseline_s;
  report.improved = best_s < baseline_s;
  report.improvement_db = report.improved ? 10.0 * std::log10(baseline_s / best_s) : 0.0;
  return report;
}

double enhancement_bandwidth(const OpoParams& op, const FeedbackParams& fb, double f_max_hz) {
  op.validate();
  fb.validate();
  if (!(f_max_hz > 0.0)) throw InvalidParameterError("f_max must be > 0");

  FeedbackParams open = fb;
  open.T2 = 1.0;

  // Negative while the loop still improves on the open-loop squeezing.
  const auto excess = [&](double f) {
    const double omega = 2.0 * kPi * f;
    return closed_loop_spectrum(op, fb, omega, QuadratureSign::Minus) -
           closed_loop_spectrum(op, open, omega, QuadratureSign::Minus);
  };

  constexpr int kScanPoints = 2000;
  const double step = f_max_hz / kScanPoints;
  if (excess(step) >= 0.0) return 0.0;

  double f_lo = step;
  for (int k = 2; k <= kScanPoints; ++k) {
    const double f = k * step;
    if (excess(f) >= 0.0) {
      double hi = f;
      double lo = f_lo;
      while (hi - lo > 1e3) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) < 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
    f_lo = f;
  }
  return f_max_hz;
}

}  // namespace cfsqz
