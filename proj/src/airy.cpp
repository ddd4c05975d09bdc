#include "tandemq/airy.hpp"

#include <cmath>
#include <numbers>

#include "tandemq/errors.hpp"

namespace tandemq {
namespace {

// Ai(0) and -Ai'(0), DLMF 9.2.3/9.2.4.
constexpr long double kC1 = 0.35502805388781723926L;
constexpr long double kC2 = 0.25881940379280679840L;

constexpr double kSeam = 5.5;

struct AiryPair {
  double ai;
  double aip;
};

// Maclaurin series (DLMF 9.4.1). The two series are positive-term for s > 0
// and cancel against each other in the tail, so terms are accumulated in
// extended precision to keep the absolute error of the difference near
// machine epsilon of the partial sums.
AiryPair airy_series(double s) {
  const long double z = s;
  const long double z3 = z * z * z;
  long double f = 1.0L, fp = 0.0L, tf = 1.0L;
  long double g = z, gp = 1.0L, tg = z;
  for (int k = 1; k < 200; ++k) {
    const long double k3 = 3.0L * k;
    tf *= z3 / (k3 * (k3 - 1.0L));
    f += tf;
    fp += tf * k3 / z;
    tg *= z3 / ((k3 + 1.0L) * k3);
    g += tg;
    gp += tg * (k3 + 1.0L) / z;
    if (tf < f * 1e-22L && tg < g * 1e-22L) break;
  }
  return {static_cast<double>(kC1 * f - kC2 * g), static_cast<double>(kC1 * fp - kC2 * gp)};
}

// Right-tail asymptotic expansion (DLMF 9.7.5/9.7.6), truncated at the
// smallest term. At the seam the smallest term is ~3e-9 relative, i.e.
// ~3e-13 absolute against Ai(5.5) ~ 3.4e-5, and it decays rapidly beyond.
AiryPair airy_asymptotic(double s) {
  const double zeta = (2.0 / 3.0) * s * std::sqrt(s);
  double u = 1.0;
  double su = 1.0, sv = 1.0;
  double sign = 1.0;
  double pow_zeta = 1.0;
  double prev = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double kk = k;
    u *= (6.0 * kk - 5.0) * (6.0 * kk - 3.0) * (6.0 * kk - 1.0) / ((2.0 * kk - 1.0) * 216.0 * kk);
    const double v = u * (6.0 * kk + 1.0) / (1.0 - 6.0 * kk);
    sign = -sign;
    pow_zeta *= zeta;
    const double tu = u / pow_zeta;
    if (tu >= prev) break;  // past the smallest term: stop before divergence
    su += sign * tu;
    sv += sign * v / pow_zeta;
    prev = tu;
    if (tu < 1e-20) break;
  }
  const double root4 = std::pow(s, 0.25);
  const double pref = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
  return {pref / root4 * su, -pref * root4 * sv};
}

AiryPair airy_pair(double s) {
  if (!(s >= 4.0)) fail(errc::bad_argument, "airy tail routines require s >= 4");
  return s < kSeam ? airy_series(s) : airy_asymptotic(s);
}

}  // namespace

double airy_ai(double s) { return airy_pair(s).ai; }

double airy_ai_prime(double s) { return airy_pair(s).aip; }

}  // namespace tandemq
