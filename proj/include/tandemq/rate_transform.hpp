#pragma once

#include <vector>

#include "tandemq/queue_system.hpp"

namespace tandemq {

// The rational function l(z) = sum_i w/(mu_i - z) + n/z over the retained
// service rates, together with its first three derivatives as exact finite
// sums. Truncation drops the smallest rates; renormalization rescales the
// retained terms by m/(m - r) so the total server mass is preserved.
class RateTransform {
 public:
  static RateTransform of(const SpectralMeasure& measure, long n, long truncate_smallest = 0,
                          bool renormalize = false);

  double eval(double z) const;
  double derivative(double z, int order) const;  // order in {1, 2, 3}

  // Smallest retained rate: the left end of the pole-free search interval.
  double pole() const { return pole_; }
  long servers() const { return servers_; }

  // Unique root of l' in (0, pole()): bisection on the strictly increasing
  // l' followed by one Newton polish. The bracket endpoints are offset by a
  // 1e-9 relative margin from both singularities.
  double solve_lambda() const;

 private:
  void check_domain(double z) const;

  std::vector<RateAtom> atoms_;  // retained, values descending
  double weight_ = 1.0;
  double n_ = 0.0;
  double pole_ = 0.0;
  long servers_ = 0;
};

}  // namespace tandemq
