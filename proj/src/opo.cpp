#include "cfsqz/opo.hpp"

#include <cmath>
#include <sstream>

namespace cfsqz {

namespace {

[[noreturn]] void fail_bounds(const char* field, double value, const char* bounds) {
  std::ostringstream msg;
  msg << field << " = " << value << " outside " << bounds;
  throw InvalidParameterError(msg.str());
}

double pump_amplitude(const OpoParams& p, const DampingRates& r) {
  const double sign = p.pump_sign == PumpSign::Negative ? -1.0 : 1.0;
  return sign * p.x * r.gamma / 2.0;
}

}  // namespace

void OpoParams::validate() const {
  if (!(T1 > 0.0 && T1 <= 1.0)) fail_bounds("T1", T1, "(0, 1]");
  if (!(L1 >= 0.0 && L1 < 1.0)) fail_bounds("L1", L1, "[0, 1)");
  if (!(l > 0.0)) fail_bounds("l", l, "(0, inf)");
  if (!(x >= 0.0)) fail_bounds("x", x, "[0, 1)");
  if (!(x < 1.0)) {
    std::ostringstream msg;
    msg << "x = " << x << " is at or above the open-loop oscillation threshold (x < 1)";
    throw ThresholdError(msg.str());
  }
}

DampingRates damping_rates(const OpoParams& p) {
  p.validate();
  DampingRates r;
  r.gamma1 = kSpeedOfLight * p.T1 / p.l;
  r.gammaL1 = kSpeedOfLight * p.L1 / p.l;
  r.gamma = r.gamma1 + r.gammaL1;
  return r;
}

TransferQuad transfer_functions(const OpoParams& p, double omega) {
  const DampingRates r = damping_rates(p);
  const double eps = pump_amplitude(p, r);

  const std::complex<double> cavity(r.gamma / 2.0, -omega);
  const std::complex<double> loss(r.gammaL1 / 2.0, -omega);
  const std::complex<double> denom = cavity * cavity - eps * eps;

  TransferQuad t;
  t.omega = omega;
  t.G = (r.gamma1 * r.gamma1 / 4.0 - loss * loss + eps * eps) / denom;
  t.g = eps * r.gamma1 / denom;
  t.Gbar = std::sqrt(r.gamma1 * r.gammaL1) * cavity / denom;
  t.gbar = std::sqrt(r.gammaL1 / r.gamma1) * t.g;
  return t;
}

double open_loop_spectrum(const OpoParams& p, double omega, QuadratureSign q) {
  const TransferQuad t = transfer_functions(p, omega);
  const double sq = quadrature_factor(q);
  return std::norm(t.G + sq * t.g) + std::norm(t.Gbar + sq * t.gbar);
}

double dc_lossless_spectrum(const OpoParams& p, QuadratureSign q) {
  p.validate();
  if (p.L1 != 0.0) fail_bounds("L1", p.L1, "{0} (lossless closed form)");
  const DampingRates r = damping_rates(p);
  const double two_eps = 2.0 * pump_amplitude(p, r) * quadrature_factor(q);
  const double ratio = (r.gamma1 + two_eps) / (r.gamma1 - two_eps);
  return ratio * ratio;
}

}  // namespace cfsqz
