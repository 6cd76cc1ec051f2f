#pragma once

#include <string>
#include <vector>

#include "cfsqz/analysis.hpp"

namespace cfsqz {

// One preset output: a series plus the file stem it is written under.
struct NamedSeries {
  std::string id;
  SpectrumSeries series;
};

// Theory-parameter OPO used by the transmissivity and frequency studies.
OpoParams theory_opo(double x);

// Feedback loop matching the theory studies (T2 is the study variable).
FeedbackParams theory_feedback();

// OPO of the narrowband squeezing measurement.
OpoParams experiment_opo();

// OPO of the broadband spectrum measurement.
OpoParams experiment_broadband_opo();

// Feedback loop of the measurement setup.
FeedbackParams experiment_feedback();

// Total detection efficiency applied to the measurement presets.
double experiment_detection_eta();

// Expands a named study into its series:
//   fig4  - squeezing vs T2 at 1 MHz for x = 0.1 / 0.35 / 0.6, with
//           open-loop baselines (theory parameters)
//   fig5  - closed-loop spectra 0.1..8 MHz for T2 = 0.7 / 0.8 / 0.9 / 1.0
//           (theory parameters, x = 0.1)
//   fig7b - detected squeezing and anti-squeezing vs T2 at 2.5 MHz
//           (measurement parameters)
//   fig8  - detected spectra 0.1..8 MHz for T2 = 0.7 / 0.8 / 0.9 / 1.0
//           (broadband measurement parameters)
// Throws InvalidParameterError for an unknown name.
std::vector<NamedSeries> run_preset(const std::string& name);

}  // namespace cfsqz
