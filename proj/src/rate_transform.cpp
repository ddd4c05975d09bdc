#include "tandemq/rate_transform.hpp"

#include <cmath>

#include "tandemq/errors.hpp"

namespace tandemq {

RateTransform RateTransform::of(const SpectralMeasure& measure, long n, long truncate_smallest,
                                bool renormalize) {
  const long m = measure.size();
  if (n <= 0) fail(errc::bad_argument, "transform needs n >= 1");
  if (truncate_smallest < 0 || truncate_smallest >= m)
    fail(errc::bad_argument, "truncation must satisfy 0 <= r < m");

  RateTransform t;
  t.n_ = static_cast<double>(n);
  t.servers_ = m - truncate_smallest;
  t.weight_ = renormalize ? static_cast<double>(m) / static_cast<double>(t.servers_) : 1.0;

  // Atoms are sorted by descending rate; drop r servers from the back.
  long drop = truncate_smallest;
  for (auto it = measure.atoms().rbegin(); it != measure.atoms().rend(); ++it) {
    if (drop >= it->count) {
      drop -= it->count;
      continue;
    }
    RateAtom kept = *it;
    kept.count -= drop;
    drop = 0;
    t.atoms_.insert(t.atoms_.begin(), kept);
  }
  t.pole_ = t.atoms_.back().value;
  return t;
}

void RateTransform::check_domain(double z) const {
  if (!(z > 0.0)) fail(errc::pole_proximity, "evaluation point at or below the z = 0 pole");
  for (const RateAtom& a : atoms_)
    if (std::abs(z - a.value) <= 1e-12 * a.value)
      fail(errc::pole_proximity, "evaluation point within 1e-12 of a rate pole");
}

double RateTransform::eval(double z) const {
  check_domain(z);
  double s = 0.0;
  for (const RateAtom& a : atoms_) s += static_cast<double>(a.count) / (a.value - z);
  return weight_ * s + n_ / z;
}

double RateTransform::derivative(double z, int order) const {
  check_domain(z);
  if (order < 1 || order > 3) fail(errc::bad_argument, "derivative order must be 1, 2, or 3");
  double s = 0.0;
  for (const RateAtom& a : atoms_) {
    const double d = a.value - z;
    const double c = static_cast<double>(a.count);
    if (order == 1)
      s += c / (d * d);
    else if (order == 2)
      s += 2.0 * c / (d * d * d);
    else
      s += 6.0 * c / (d * d * d * d);
  }
  s *= weight_;
  const double sign = (order == 2) ? 1.0 : -1.0;
  double zp = z * z;
  for (int k = 1; k < order; ++k) zp *= z;
  double fact = 1.0;
  for (int k = 2; k <= order; ++k) fact *= k;
  return s + sign * fact * n_ / zp;
}

double RateTransform::solve_lambda() const {
  const double p = pole_;
  double lo = 1e-9 * p;   // l' < 0 here: the -n/z^2 pole dominates
  double hi = p * (1.0 - 1e-9);  // l' > 0 here: the retained-rate pole dominates
  if (!(derivative(lo, 1) < 0.0) || !(derivative(hi, 1) > 0.0))
    fail(errc::bracket_failure, "no sign change of l' inside (0, pole)");
  while (hi - lo > 1e-14 * p) {
    const double mid = 0.5 * (lo + hi);
    (derivative(mid, 1) < 0.0 ? lo : hi) = mid;
  }
  double lambda = 0.5 * (lo + hi);
  lambda -= derivative(lambda, 1) / derivative(lambda, 2);  // Newton polish
  if (!(lambda > 0.0) || !(lambda < p) ||
      std::abs(derivative(lambda, 1)) > 1e-10 * std::max(1.0, std::abs(derivative(lambda, 2))))
    fail(errc::bracket_failure, "critical point polish failed to converge");
  return lambda;
}

}  // namespace tandemq
