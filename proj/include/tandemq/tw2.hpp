#pragma once

#include <cstddef>
#include <vector>

namespace tandemq {

// Tabulated Tracy-Widom GUE (beta = 2) distribution, built by integrating the
// Hastings-McLeod solution of Painleve II from an Airy-function seed at the
// right edge down to s_min on a uniform grid.
struct TW2Table {
  double s_min = 0.0;
  double s_max = 0.0;
  double step = 0.0;
  std::vector<double> s;     // ascending grid nodes
  std::vector<double> q;     // Hastings-McLeod q(s) > 0
  std::vector<double> cdf;   // F2(s) = exp(-J(s))
  std::vector<double> pdf;   // f2(s) = I(s) * F2(s)
  std::vector<double> dpdf;  // f2'(s) = F2 * (I^2 - q^2), for interpolation
  double mean = 0.0;
  double variance = 0.0;

  // Cubic Hermite interpolation inside the grid; clamps to 0 below s_min and
  // to 1 above s_max.
  double cdf_at(double x) const;
  // Cubic Hermite interpolation of the density; 0 outside the grid.
  double pdf_at(double x) const;
  // Inverse CDF by bisection to 1e-10 in the argument; p must lie in (0, 1).
  // A p beyond the tabulated mass clamps to the corresponding grid end.
  double quantile(double p) const;
};

// Integrates q'' = s q + 2 q^3 backward from an Airy-tail seed at s0
// (q ~ kappa Ai, kappa fitted so the trajectory lands on the left-tail
// asymptote sqrt(-s/2); without the fit the backward instability throws the
// solution off the decaying branch before -10), together with the augmented
// tail integrals I(s) = int_s^inf q^2, J(s) = int_s^inf (x-s) q^2 seeded from
// closed forms of the Airy tail. s0 must lie in [4, 8] and be reachable from
// s_min by whole steps.
TW2Table build_tw2_table(double s0 = 6.0, double s_min = -10.0, double step = 0.005);

// Shared default table, built once on first use.
const TW2Table& shared_tw2_table();

}  // namespace tandemq
