#pragma once

#include <complex>

#include "cfsqz/opo.hpp"

namespace cfsqz {

// Coherent feedback loop: a controllable beam splitter (CBS) returns a
// fraction of the OPO output to its input through free-space paths of
// length la (CBS to OPO) and lb (OPO to CBS).
struct FeedbackParams {
  double T2 = 1.0;  // CBS power transmissivity, (0, 1]; T2 = 1 opens the loop
  double L2 = 0.0;  // loop propagation power loss, [0, 1]
  double la = 0.0;  // CBS -> OPO path length, m
  double lb = 0.0;  // OPO -> CBS path length, m

  // Loop carrier phase factor. The loop is held on resonance, so the
  // round-trip carrier picks up exactly this sign on the fed-back field.
  static constexpr double kCarrierPhase = -1.0;

  void validate() const;

  double tau_a() const { return la / kSpeedOfLight; }
  double tau_b() const { return lb / kSpeedOfLight; }
};

// Homodyne detection imperfections.
struct DetectionParams {
  double xi = 1.0;   // fringe visibility of the homodyne overlap, (0, 1]
  double rho = 1.0;  // photodiode quantum efficiency, (0, 1]

  double eta() const { return xi * xi * rho; }

  // Detection model with a directly specified total efficiency eta:
  // xi = sqrt(eta), rho = 1.
  static DetectionParams from_efficiency(double eta);

  void validate() const;
};

// Round-trip gain of the feedback loop for one quadrature: the OPO response
// (G +- g) times the loop carrier phase and the sideband propagation phase
// over la + lb.
std::complex<double> loop_gain_alpha(const OpoParams& op, const FeedbackParams& fb,
                                     double omega, QuadratureSign q);

// Transfer from the vacuum entering at the intracavity loss port to the CBS,
// (Gbar +- gbar) with the sideband propagation phase over lb.
std::complex<double> loss_path_beta(const OpoParams& op, const FeedbackParams& fb,
                                    double omega, QuadratureSign q);

// Output noise power of the feedback-controlled OPO at the CBS output port,
// relative to vacuum. Throws ThresholdError when x is at or above the
// closed-loop oscillation threshold.
double closed_loop_spectrum(const OpoParams& op, const FeedbackParams& fb,
                            double omega, QuadratureSign q);

// Measured noise power after detection losses: 1 + eta * (s - 1).
double detected_spectrum(double s, const DetectionParams& det);

// Pump strength x* at which the feedback-controlled OPO starts to oscillate,
// found by bisection on the zero-frequency loop denominator to 1e-9.
// Returns 1 when the loop cannot lower the threshold (T2 = 1 or L2 = 1).
// The x field of op is ignored.
double oscillation_threshold(const OpoParams& op, const FeedbackParams& fb);

}  // namespace cfsqz
