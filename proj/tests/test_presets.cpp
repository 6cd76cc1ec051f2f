#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "cfsqz/emit.hpp"
#include "cfsqz/presets.hpp"

using namespace cfsqz;

namespace {

double analytic_threshold(const OpoParams& op, const FeedbackParams& fb) {
  const DampingRates r = damping_rates(op);
  const double s = std::sqrt((1.0 - fb.T2) * (1.0 - fb.L2));
  if (s == 0.0) return 1.0;
  return (r.gamma - s * (r.gamma1 - r.gammaL1)) / (r.gamma * (1.0 + s));
}

const NamedSeries& find(const std::vector<NamedSeries>& list, const std::string& id) {
  for (const NamedSeries& named : list) {
    if (named.id == id) return named;
  }
  REQUIRE_MESSAGE(false, "missing series id: " << id);
  return list.front();
}

std::string emit_to_string(const SpectrumSeries& series) {
  std::ostringstream out;
  emit_series(series, OutputFormat::Json, out);
  return out.str();
}

}  // namespace

TEST_CASE("unknown preset is rejected") {
  CHECK_THROWS_AS(run_preset("fig99"), InvalidParameterError);
  CHECK_THROWS_AS(run_preset(""), InvalidParameterError);
}

TEST_CASE("preset parameter sets") {
  CHECK(theory_opo(0.1).T1 == 0.12);
  CHECK(theory_opo(0.1).L1 == 5e-3);
  CHECK(theory_opo(0.1).l == 0.5);
  CHECK(theory_feedback().L2 == 0.05);
  CHECK(theory_feedback().la == 0.25);
  CHECK(experiment_opo().T1 == 0.20);
  CHECK(experiment_opo().L1 == 6.5e-3);
  CHECK(experiment_opo().x == 0.111);
  CHECK(experiment_broadband_opo().x == 0.106);
  CHECK(experiment_broadband_opo().L1 == 9.0e-3);
  CHECK(experiment_feedback().L2 == 0.12);
  CHECK(experiment_detection_eta() == 0.961);
}

TEST_CASE("transmissivity study with baselines") {
  const std::vector<NamedSeries> list = run_preset("fig4");
  REQUIRE(list.size() == 6);

  for (const char* x_label : {"0.1", "0.35", "0.6"}) {
    const std::string stem = std::string("fig4_x") + x_label;
    const SpectrumSeries& sweep = find(list, stem).series;
    const SpectrumSeries& baseline = find(list, stem + "_baseline").series;

    CHECK(sweep.points.size() == 101);
    CHECK(sweep.axis == SeriesAxis::TransmissivityT2);
    CHECK(sweep.stage == SeriesStage::ClosedLoop);
    CHECK_NOTHROW(sweep.validate());

    // Flags must line up with the analytic threshold root.
    const OpoParams op = sweep.params.opo;
    for (const SpectrumPoint& pt : sweep.points) {
      FeedbackParams at = sweep.params.feedback;
      at.T2 = pt.axis_value;
      const bool above = op.x >= analytic_threshold(op, at) - 1e-9;
      CHECK((pt.status == PointStatus::AboveThreshold) == above);
    }

    REQUIRE(baseline.points.size() == 1);
    CHECK(baseline.stage == SeriesStage::OpenLoop);
    CHECK(baseline.points[0].axis_value == 1.0);
    CHECK(baseline.params.feedback.T2 == 1.0);
    CHECK(baseline.params.feedback.L2 == 0.0);
    const double omega = 2.0 * kPi * 1.0e6;
    CHECK(baseline.points[0].s_minus ==
          open_loop_spectrum(op, omega, QuadratureSign::Minus));
    CHECK(baseline.points[0].s_plus ==
          open_loop_spectrum(op, omega, QuadratureSign::Plus));
  }

  // The loop must beat the solitary OPO somewhere on the grid at x = 0.1.
  const SpectrumSeries& sweep = find(list, "fig4_x0.1").series;
  const double baseline_s = find(list, "fig4_x0.1_baseline").series.points[0].s_minus;
  double best = 1e300;
  for (const SpectrumPoint& pt : sweep.points) {
    if (pt.status == PointStatus::Ok && pt.s_minus < best) best = pt.s_minus;
  }
  CHECK(best < baseline_s);
}

TEST_CASE("frequency study tracks the open-loop limit") {
  const std::vector<NamedSeries> list = run_preset("fig5");
  REQUIRE(list.size() == 4);

  for (const char* label : {"0.7", "0.8", "0.9", "1"}) {
    const SpectrumSeries& series =
        find(list, std::string("fig5_t2_") + label).series;
    CHECK(series.points.size() == 400);
    CHECK(series.stage == SeriesStage::ClosedLoop);
    CHECK(series.axis == SeriesAxis::FrequencyHz);
    CHECK(series.points.front().axis_value == 1.0e5);
    CHECK(series.points.back().axis_value == doctest::Approx(8.0e6).epsilon(1e-14));
    CHECK_NOTHROW(series.validate());
  }

  // With the CBS fully open, the loop only adds its propagation loss, which
  // moves the level by less than 0.1 dB at these parameters.
  const SpectrumSeries& open = find(list, "fig5_t2_1").series;
  double worst = 0.0;
  for (const SpectrumPoint& pt : open.points) {
    const double s_solitary = open_loop_spectrum(
        open.params.opo, 2.0 * kPi * pt.axis_value, QuadratureSign::Minus);
    worst = std::max(worst, std::abs(to_db(pt.s_minus) - to_db(s_solitary)));
  }
  CHECK(worst < 0.1);
}

TEST_CASE("detected transmissivity study") {
  const std::vector<NamedSeries> list = run_preset("fig7b");
  REQUIRE(list.size() == 1);
  const SpectrumSeries& series = list[0].series;

  CHECK(list[0].id == "fig7b");
  CHECK(series.stage == SeriesStage::Detected);
  CHECK(series.points.size() == 101);
  REQUIRE(series.params.detection.has_value());
  CHECK(series.params.detection->eta() == doctest::Approx(0.961).epsilon(1e-15));
  REQUIRE(series.params.fixed_frequency_hz.has_value());
  CHECK(*series.params.fixed_frequency_hz == doctest::Approx(2.5e6).epsilon(1e-15));
  CHECK(series.params.opo.x == 0.111);

  bool found_note = false;
  for (const auto& [key, value] : series.params.extra) {
    found_note = found_note || key == "note";
  }
  CHECK(found_note);

  // Detected points must match the direct pipeline bit for bit.
  const DetectionParams det = *series.params.detection;
  const double omega = 2.0 * kPi * 2.5e6;
  for (std::size_t i : {30ul, 60ul, 100ul}) {
    const SpectrumPoint& pt = series.points[i];
    REQUIRE(pt.status == PointStatus::Ok);
    FeedbackParams at = series.params.feedback;
    at.T2 = pt.axis_value;
    const double raw =
        closed_loop_spectrum(series.params.opo, at, omega, QuadratureSign::Minus);
    CHECK(pt.s_minus == detected_spectrum(raw, det));
  }
}

TEST_CASE("detected frequency study") {
  const std::vector<NamedSeries> list = run_preset("fig8");
  REQUIRE(list.size() == 4);
  for (const NamedSeries& named : list) {
    CHECK(named.series.stage == SeriesStage::Detected);
    CHECK(named.series.points.size() == 400);
    CHECK(named.series.params.opo.x == 0.106);
    CHECK(named.series.params.opo.L1 == 9.0e-3);
    REQUIRE(named.series.params.detection.has_value());
  }
  // Feedback must squeeze harder than the open CBS at low frequency.
  const SpectrumSeries& t2_07 = find(list, "fig8_t2_0.7").series;
  const SpectrumSeries& t2_1 = find(list, "fig8_t2_1").series;
  CHECK(t2_07.points[0].s_minus < t2_1.points[0].s_minus);
}

TEST_CASE("presets are deterministic") {
  for (const char* name : {"fig4", "fig5", "fig7b", "fig8"}) {
    const std::vector<NamedSeries> first = run_preset(name);
    const std::vector<NamedSeries> second = run_preset(name);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      CHECK(first[i].id == second[i].id);
      CHECK(emit_to_string(first[i].series) == emit_to_string(second[i].series));
    }
  }
}
