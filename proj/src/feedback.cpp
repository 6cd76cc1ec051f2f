#include "cfsqz/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cfsqz {

namespace {

constexpr double kThresholdTol = 1e-9;    // bisection width on x*
constexpr double kDenominatorGuard = 1e-9;  // smallest |1 + alpha*s| evaluated

[[noreturn]] void fail_bounds(const char* field, double value, const char* bounds) {
  std::ostringstream msg;
  msg << field << " = " << value << " outside " << bounds;
  throw InvalidParameterError(msg.str());
}

// Amplitude reflectivity of the passive loop: CBS reflection times the
// one-round-trip propagation loss.
double loop_reflection(const FeedbackParams& fb) {
  return std::sqrt((1.0 - fb.T2) * (1.0 - fb.L2));
}

std::complex<double> sideband_phase(double omega, double tau) {
  return std::polar(1.0, omega * tau);
}

}  // namespace

void FeedbackParams::validate() const {
  if (!(T2 > 0.0 && T2 <= 1.0)) fail_bounds("T2", T2, "(0, 1]");
  if (!(L2 >= 0.0 && L2 <= 1.0)) fail_bounds("L2", L2, "[0, 1]");
  if (!(la >= 0.0)) fail_bounds("la", la, "[0, inf)");
  if (!(lb >= 0.0)) fail_bounds("lb", lb, "[0, inf)");
}

void DetectionParams::validate() const {
  if (!(xi > 0.0 && xi <= 1.0)) fail_bounds("xi", xi, "(0, 1]");
  if (!(rho > 0.0 && rho <= 1.0)) fail_bounds("rho", rho, "(0, 1]");
}

DetectionParams DetectionParams::from_efficiency(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) fail_bounds("eta", eta, "(0, 1]");
  DetectionParams det;
  det.xi = std::sqrt(eta);
  det.rho = 1.0;
  return det;
}

std::complex<double> loop_gain_alpha(const OpoParams& op, const FeedbackParams& fb,
                                     double omega, QuadratureSign q) {
  op.validate();
  fb.validate();
  const TransferQuad t = transfer_functions(op, omega);
  const std::complex<double> response = t.G + quadrature_factor(q) * t.g;
  return FeedbackParams::kCarrierPhase * response *
         sideband_phase(omega, fb.tau_a() + fb.tau_b());
}

std::complex<double> loss_path_beta(const OpoParams& op, const FeedbackParams& fb,
                                    double omega, QuadratureSign q) {
  op.validate();
  fb.validate();
  const TransferQuad t = transfer_functions(op, omega);
  const std::complex<double> response = t.Gbar + quadrature_factor(q) * t.gbar;
  return response * sideband_phase(omega, fb.tau_b());
}

double closed_loop_spectrum(const OpoParams& op, const FeedbackParams& fb,
                            double omega, QuadratureSign q) {
  op.validate();
  fb.validate();

  const double x_star = oscillation_threshold(op, fb);
  if (op.x >= x_star) {
    std::ostringstream msg;
    msg << "x = " << op.x << " is at or above the closed-loop oscillation threshold x* = "
        << x_star;
    throw ThresholdError(msg.str());
  }

  const std::complex<double> alpha = loop_gain_alpha(op, fb, omega, q);
  const std::complex<double> beta = loss_path_beta(op, fb, omega, q);
  const double r_loop = loop_reflection(fb);
  const std::complex<double> denom = 1.0 + alpha * r_loop;
  if (std::abs(denom) < kDenominatorGuard) {
    std::ostringstream msg;
    msg << "loop denominator |1 + alpha*sqrt((1-T2)(1-L2))| = " << std::abs(denom)
        << " below " << kDenominatorGuard << " at omega = " << omega;
    throw ThresholdError(msg.str());
  }
  const std::complex<double> fed_back = alpha / denom;

  const double r2 = std::sqrt(1.0 - fb.T2);
  const double t_prop = std::sqrt(1.0 - fb.L2);

  // Vacuum reflected at the CBS interfering with the amplified loop field.
  const double in_port = std::norm(r2 + fb.T2 * t_prop * fed_back);
  // Vacuum admitted through the intracavity loss of the OPO.
  const double loss_port = fb.T2 * (1.0 - fb.L2) * std::norm(beta) / std::norm(denom);
  // Vacuum admitted by the loop propagation loss.
  const double loop_port =
      std::norm(std::sqrt(fb.T2 * fb.L2) -
                std::sqrt(fb.T2 * (1.0 - fb.L2) * (1.0 - fb.T2) * fb.L2) * fed_back);

  return in_port + loss_port + loop_port;
}

double detected_spectrum(double s, const DetectionParams& det) {
  det.validate();
  if (!(s >= 0.0)) fail_bounds("s", s, "[0, inf)");
  return 1.0 + det.eta() * (s - 1.0);
}

double oscillation_threshold(const OpoParams& op, const FeedbackParams& fb) {
  OpoParams probe = op;
  probe.x = 0.0;
  probe.validate();
  fb.validate();

  const double r_loop = loop_reflection(fb);
  if (r_loop == 0.0) return 1.0;

  // Real zero-frequency loop denominator of the less stable quadrature.
  // Strictly decreasing in x, positive at x = 0, and divergent towards
  // -inf as x -> 1, so it brackets exactly one root in (0, 1).
  const auto min_denominator = [&](double x) {
    OpoParams p = probe;
    p.x = x;
    const TransferQuad t = transfer_functions(p, 0.0);
    const double d_plus = 1.0 - r_loop * (t.G + t.g).real();
    const double d_minus = 1.0 - r_loop * (t.G - t.g).real();
    return std::min(d_plus, d_minus);
  };

  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kThresholdTol) {
    const double mid = 0.5 * (lo + hi);
    if (min_denominator(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace cfsqz
