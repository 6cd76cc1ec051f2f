#pragma once

#include <complex>

#include "cfsqz/errors.hpp"

namespace cfsqz {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact
inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Measurement quadrature: Plus is the anti-squeezed (amplitude-like)
// quadrature and Minus the squeezed one when the pump sign is positive.
enum class QuadratureSign { Plus, Minus };

// Sign convention for the pump amplitude epsilon. Positive squeezes the
// Minus quadrature; Negative flips which quadrature is squeezed.
enum class PumpSign { Positive, Negative };

inline double quadrature_factor(QuadratureSign q) {
  return q == QuadratureSign::Plus ? 1.0 : -1.0;
}

// Cavity and pump parameters of the optical parametric oscillator.
struct OpoParams {
  double T1 = 0.0;  // coupling mirror power transmissivity, (0, 1]
  double L1 = 0.0;  // intracavity round-trip power loss, [0, 1)
  double l = 0.0;   // cavity round-trip optical path length, m
  double x = 0.0;   // pump strength normalized to the open-loop threshold, [0, 1)
  PumpSign pump_sign = PumpSign::Positive;

  // Throws InvalidParameterError on a bounds violation, ThresholdError when
  // x is at or above the open-loop oscillation threshold (x >= 1).
  void validate() const;
};

// Cavity decay rates, rad/s.
struct DampingRates {
  double gamma1 = 0.0;   // coupling mirror contribution, c*T1/l
  double gammaL1 = 0.0;  // intracavity loss contribution, c*L1/l
  double gamma = 0.0;    // total, gamma1 + gammaL1
};

// Frequency-domain transfer functions of the cavity at one sideband
// frequency. G couples the input back to the output, g is the pump-induced
// cross-quadrature gain, and the barred pair routes the vacuum that enters
// through the intracavity loss port.
struct TransferQuad {
  std::complex<double> G;
  std::complex<double> g;
  std::complex<double> Gbar;
  std::complex<double> gbar;
  double omega = 0.0;  // rad/s
};

DampingRates damping_rates(const OpoParams& p);

TransferQuad transfer_functions(const OpoParams& p, double omega);

// Output noise power of the solitary (no feedback) OPO, relative to vacuum.
double open_loop_spectrum(const OpoParams& p, double omega, QuadratureSign q);

// Zero-frequency spectrum of a lossless cavity (requires L1 == 0), from the
// closed form ((gamma1 +- 2*eps) / (gamma1 -+ 2*eps))^2.
double dc_lossless_spectrum(const OpoParams& p, QuadratureSign q);

}  // namespace cfsqz
