#include <cmath>
#include <vector>

#include "doctest.h"
#include "tandemq/queue_system.hpp"
#include "tandemq/rate_transform.hpp"
#include "tandemq/rng.hpp"
#include "test_util.hpp"

using tandemq::errc;
using tandemq::RateTransform;
using tandemq::SpectralMeasure;
using tandemq::SplitMix64;
using testutil::close_rel;
using testutil::error_code_of;

namespace {

RateTransform of_rates(std::vector<double> rates, long n, long truncate = 0,
                       bool renormalize = false) {
  return RateTransform::of(SpectralMeasure(std::move(rates)), n, truncate, renormalize);
}

}  // namespace

TEST_CASE("transform values on closed-form inputs") {
  // Homogeneous m = n = 100 at the midpoint: 100/0.5 + 100/0.5.
  auto t = of_rates(std::vector<double>(100, 1.0), 100);
  CHECK(t.eval(0.5) == 400.0);
  CHECK(t.pole() == 1.0);
  CHECK(t.servers() == 100);

  // Three distinct rates, hand-summed partial fractions.
  auto u = of_rates({1.0, 1.5, 2.2}, 2);
  // Oracle: mpmath at 50 digits.
  CHECK(close_rel(u.eval(0.4), 8.1313131313131313131, 1e-14));
}

TEST_CASE("derivatives agree with central finite differences of eval") {
  auto t = of_rates({1.0, 1.5, 2.2, 0.8, 0.8}, 7);
  const double h = 1e-5 * 0.8;
  for (double z : {0.1, 0.33, 0.62, 0.75}) {
    const double d1 = (t.eval(z + h) - t.eval(z - h)) / (2.0 * h);
    CHECK(close_rel(t.derivative(z, 1), d1, 1e-6));
    const double d2 = (t.derivative(z + h, 1) - t.derivative(z - h, 1)) / (2.0 * h);
    CHECK(close_rel(t.derivative(z, 2), d2, 1e-6));
    const double d3 = (t.derivative(z + h, 2) - t.derivative(z - h, 2)) / (2.0 * h);
    CHECK(close_rel(t.derivative(z, 3), d3, 1e-6));
  }
  CHECK(error_code_of([&] { t.derivative(0.5, 0); }) == errc::bad_argument);
  CHECK(error_code_of([&] { t.derivative(0.5, 4); }) == errc::bad_argument);
}

TEST_CASE("the transform is strictly convex between its poles") {
  SplitMix64 rng(88);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> rates(1 + static_cast<std::size_t>(rng.next() % 8));
    for (auto& r : rates) r = 0.25 + 3.0 * rng.uniform();
    long n = 1 + static_cast<long>(rng.next() % 50);
    auto t = of_rates(rates, n);
    for (int k = 1; k < 200; ++k) {
      const double z = t.pole() * k / 200.0;
      CHECK(t.derivative(z, 2) > 0.0);
    }
  }
}

TEST_CASE("critical point for equal rates matches the closed form") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const long m = 1 + static_cast<long>(rng.next() % 300);
    const long n = 1 + static_cast<long>(rng.next() % 300);
    const double mu = 0.1 + 5.0 * rng.uniform();
    auto t = of_rates(std::vector<double>(static_cast<std::size_t>(m), mu), n);
    const double expected =
        mu * std::sqrt(static_cast<double>(n)) /
        (std::sqrt(static_cast<double>(m)) + std::sqrt(static_cast<double>(n)));
    CHECK(close_rel(t.solve_lambda(), expected, 1e-10));
  }
}

TEST_CASE("critical point for mixed rates") {
  auto t = of_rates({1.0, 1.5, 2.2}, 2);
  const double lambda = t.solve_lambda();
  // Oracle: mpmath findroot of l' at 50 digits.
  CHECK(close_rel(lambda, 0.55405468713220205414, 1e-12));
  CHECK(close_rel(t.eval(lambda), 7.5168765632923354601, 1e-12));

  // Independent bracket: a coarse scan of eval differences must change sign
  // exactly once, around the reported critical point.
  const int cells = 100000;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  double prev = t.eval(1e-6);
  for (int k = 1; k <= cells; ++k) {
    const double z = 1e-6 + (1.0 - 2e-6) * k / cells;
    const double cur = t.eval(z);
    if (cur < prev) {
      bracket_hi = z;  // still descending
    } else if (bracket_lo == 0.0) {
      bracket_lo = z - (1.0 - 2e-6) / cells;
      bracket_hi = z;
      break;
    }
    prev = cur;
  }
  CHECK(lambda >= bracket_lo - 1e-5);
  CHECK(lambda <= bracket_hi + 1e-5);
}

TEST_CASE("critical point scales linearly with the rates") {
  std::vector<double> rates{1.0, 1.5, 2.2, 0.8};
  auto base = of_rates(rates, 6).solve_lambda();
  for (double c : {0.5, 2.0, 3.7}) {
    std::vector<double> scaled = rates;
    for (auto& r : scaled) r *= c;
    CHECK(close_rel(of_rates(scaled, 6).solve_lambda(), c * base, 1e-9));
  }
}

TEST_CASE("evaluation near poles is refused") {
  auto t = of_rates({1.0, 2.0}, 3);
  CHECK(error_code_of([&] { t.eval(0.0); }) == errc::pole_proximity);
  CHECK(error_code_of([&] { t.eval(-0.5); }) == errc::pole_proximity);
  CHECK(error_code_of([&] { t.eval(1.0); }) == errc::pole_proximity);
  CHECK(error_code_of([&] { t.eval(2.0 * (1.0 + 1e-14)); }) == errc::pole_proximity);
  CHECK(error_code_of([&] { t.derivative(1.0, 1); }) == errc::pole_proximity);
  CHECK(t.eval(1.5) == doctest::Approx(3.0 / 1.5 + 1.0 / (1.0 - 1.5) + 1.0 / (2.0 - 1.5)));
}

TEST_CASE("truncation drops the smallest rates and can renormalize the mass") {
  std::vector<double> rates{1.0, 1.0, 1.0, 0.5, 0.5};

  auto keep4 = of_rates(rates, 10, 1, /*renormalize=*/true);
  CHECK(keep4.servers() == 4);
  CHECK(keep4.pole() == 0.5);
  // weight 5/4 over {1.0 x3, 0.5 x1} plus n/z.
  const double z = 0.25;
  CHECK(close_rel(keep4.eval(z), 1.25 * (3.0 / 0.75 + 1.0 / 0.25) + 10.0 / 0.25, 1e-14));

  auto keep3 = of_rates(rates, 10, 2, /*renormalize=*/false);
  CHECK(keep3.servers() == 3);
  CHECK(keep3.pole() == 1.0);
  CHECK(close_rel(keep3.eval(z), 3.0 / 0.75 + 10.0 / 0.25, 1e-14));

  // Truncation can split an atom.
  auto keep2 = of_rates(rates, 10, 3, /*renormalize=*/false);
  CHECK(keep2.servers() == 2);
  CHECK(keep2.pole() == 1.0);
  CHECK(close_rel(keep2.eval(z), 2.0 / 0.75 + 10.0 / 0.25, 1e-14));

  CHECK(error_code_of([&] { of_rates(rates, 10, -1); }) == errc::bad_argument);
  CHECK(error_code_of([&] { of_rates(rates, 10, 5); }) == errc::bad_argument);
  CHECK(error_code_of([&] { of_rates(rates, 0); }) == errc::bad_argument);
}

TEST_CASE("critical point of a renormalized truncation") {
  // Dropping the one slow server from {0.3, 1 x99} leaves a homogeneous
  // transform with weight 100/99, i.e. 100/(1-z) + 100/z: symmetric, so the
  // critical point is exactly 1/2.
  std::vector<double> rates(100, 1.0);
  rates[41] = 0.3;
  auto t = of_rates(rates, 100, 1, /*renormalize=*/true);
  CHECK(std::abs(t.solve_lambda() - 0.5) <= 1e-12);
  CHECK(close_rel(t.eval(0.3), 100.0 / 0.7 + 100.0 / 0.3, 1e-14));
}
