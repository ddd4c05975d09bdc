#include "tandemq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tandemq/errors.hpp"

namespace tandemq {

EmpiricalCdf::EmpiricalCdf(std::vector<double> sample) : sorted_(std::move(sample)) {
  if (sorted_.empty()) fail(errc::empty_sample, "empirical cdf of empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) fail(errc::empty_sample, "ks_two_sample needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    const double fa = static_cast<double>(i) / na;
    const double fb = static_cast<double>(j) / nb;
    d = std::max(d, std::abs(fa - fb));
  }
  // After one sample is exhausted the gap only shrinks toward |1 - 1| = 0.
  return d;
}

double ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) fail(errc::empty_sample, "ks_one_sample needs a non-empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

double ks_threshold(std::size_t na, std::size_t nb, double c) {
  if (na == 0 || nb == 0) fail(errc::empty_sample, "ks_threshold needs positive sample sizes");
  const double fa = static_cast<double>(na);
  const double fb = static_cast<double>(nb);
  return c * std::sqrt((fa + fb) / (fa * fb));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

Histogram histogram_density(const std::vector<double>& sample, double lo, double hi, std::size_t bins) {
  if (sample.empty()) fail(errc::empty_sample, "histogram of empty sample");
  if (!(hi > lo) || bins == 0) fail(errc::bad_argument, "histogram needs hi > lo and bins > 0");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.density.assign(bins, 0.0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : sample) {
    auto k = static_cast<long>(std::floor((x - lo) / width));
    if (k < 0 || k >= static_cast<long>(bins)) ++h.clamped;
    k = std::clamp<long>(k, 0, static_cast<long>(bins) - 1);
    h.density[static_cast<std::size_t>(k)] += 1.0;
  }
  const double norm = 1.0 / (static_cast<double>(sample.size()) * width);
  for (double& v : h.density) v *= norm;
  return h;
}

}  // namespace tandemq
