#include "cfsqz/presets.hpp"

#include <cmath>

#include "cfsqz/emit.hpp"

namespace cfsqz {

namespace {

void tag(SpectrumSeries& series, const std::string& preset, const std::string& curve) {
  series.params.extra.emplace_back("preset", preset);
  series.params.extra.emplace_back("curve", curve);
}

// Single-point series holding the open-loop reference of a transmissivity
// sweep, placed at T2 = 1 with the loop loss removed.
SpectrumSeries open_loop_baseline(const OpoParams& op, double omega) {
  SpectrumSeries series;
  series.stage = SeriesStage::OpenLoop;
  series.axis = SeriesAxis::TransmissivityT2;
  series.params.opo = op;
  series.params.feedback = FeedbackParams{};  // T2 = 1, L2 = 0
  series.params.fixed_frequency_hz = omega / (2.0 * kPi);
  SpectrumPoint pt;
  pt.axis_value = 1.0;
  pt.s_plus = open_loop_spectrum(op, omega, QuadratureSign::Plus);
  pt.s_minus = open_loop_spectrum(op, omega, QuadratureSign::Minus);
  series.points.push_back(pt);
  return series;
}

std::string curve_label(const char* prefix, double value) {
  return std::string(prefix) + "=" + format_g12(value);
}

}  // namespace

OpoParams theory_opo(double x) {
  OpoParams op;
  op.T1 = 0.12;
  op.L1 = 5.0e-3;
  op.l = 0.5;
  op.x = x;
  return op;
}

FeedbackParams theory_feedback() {
  FeedbackParams fb;
  fb.T2 = 1.0;
  fb.L2 = 0.05;
  fb.la = 0.25;
  fb.lb = 0.25;
  return fb;
}

OpoParams experiment_opo() {
  OpoParams op;
  op.T1 = 0.20;
  op.L1 = 6.5e-3;
  op.l = 0.5;
  op.x = 0.111;
  return op;
}

OpoParams experiment_broadband_opo() {
  OpoParams op = experiment_opo();
  op.x = 0.106;
  op.L1 = 9.0e-3;
  return op;
}

FeedbackParams experiment_feedback() {
  FeedbackParams fb;
  fb.T2 = 1.0;
  fb.L2 = 0.12;
  fb.la = 0.25;
  fb.lb = 0.25;
  return fb;
}

double experiment_detection_eta() { return 0.961; }

std::vector<NamedSeries> run_preset(const std::string& name) {
  std::vector<NamedSeries> result;

  if (name == "fig4") {
    const double omega = 2.0 * kPi * 1.0e6;
    for (double x : {0.1, 0.35, 0.6}) {
      const OpoParams op = theory_opo(x);
      SpectrumSeries sweep = sweep_transmissivity(op, theory_feedback(), omega,
                                                  uniform_unit_grid(101));
      tag(sweep, name, curve_label("x", x));
      const std::string stem = name + "_x" + format_g12(x);
      result.push_back({stem, std::move(sweep)});

      SpectrumSeries baseline = open_loop_baseline(op, omega);
      tag(baseline, name, curve_label("x", x) + " baseline");
      result.push_back({stem + "_baseline", std::move(baseline)});
    }
    return result;
  }

  if (name == "fig5") {
    const OpoParams op = theory_opo(0.1);
    for (double t2 : {0.7, 0.8, 0.9, 1.0}) {
      FeedbackParams fb = theory_feedback();
      fb.T2 = t2;
      SpectrumSeries sweep = sweep_frequency(op, fb, 1.0e5, 8.0e6, 400);
      tag(sweep, name, curve_label("T2", t2));
      result.push_back({name + "_t2_" + format_g12(t2), std::move(sweep)});
    }
    return result;
  }

  if (name == "fig7b") {
    const double omega = 2.0 * kPi * 2.5e6;
    const DetectionParams det =
        DetectionParams::from_efficiency(experiment_detection_eta());
    SpectrumSeries sweep = sweep_transmissivity(experiment_opo(), experiment_feedback(),
                                                omega, uniform_unit_grid(101));
    sweep = apply_detection(sweep, det);
    tag(sweep, name, "detected squeezing vs T2");
    sweep.params.extra.emplace_back(
        "note", "measurement used RBW 30 kHz, VBW 300 Hz (analyzer settings only)");
    result.push_back({name, std::move(sweep)});
    return result;
  }

  if (name == "fig8") {
    const DetectionParams det =
        DetectionParams::from_efficiency(experiment_detection_eta());
    for (double t2 : {0.7, 0.8, 0.9, 1.0}) {
      FeedbackParams fb = experiment_feedback();
      fb.T2 = t2;
      SpectrumSeries sweep =
          sweep_frequency(experiment_broadband_opo(), fb, 1.0e5, 8.0e6, 400, det);
      tag(sweep, name, curve_label("T2", t2));
      sweep.params.extra.emplace_back(
          "note", "measurement used RBW 30 kHz, VBW 300 Hz (analyzer settings only)");
      result.push_back({name + "_t2_" + format_g12(t2), std::move(sweep)});
    }
    return result;
  }

  throw InvalidParameterError("unknown preset '" + name +
                              "' (valid: fig4, fig5, fig7b, fig8)");
}

}  // namespace cfsqz
