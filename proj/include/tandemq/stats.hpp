#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tandemq {

// Right-continuous empirical CDF of a sample.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> sample);
  double operator()(double x) const;
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// Exact two-sample Kolmogorov-Smirnov distance (merge walk; ties advance both
// samples before the gap is recorded).
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Exact one-sample distance against a continuous CDF.
double ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);

// Asymptotic two-sample rejection threshold c * sqrt((na+nb)/(na*nb));
// c = 1.63 corresponds to the 1% level.
double ks_threshold(std::size_t na, std::size_t nb, double c = 1.63);

// Standard normal CDF via erfc; abs error well below 1e-12.
double normal_cdf(double x);
double normal_pdf(double x);

// Equal-width density histogram. Out-of-range values are counted into the
// boundary bins so that sum(width * height) is exactly 1.
struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> density;
  std::size_t clamped = 0;  // values that fell outside [lo, hi)
  double bin_width() const { return (hi - lo) / static_cast<double>(density.size()); }
  double bin_center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * bin_width(); }
};

Histogram histogram_density(const std::vector<double>& sample, double lo, double hi, std::size_t bins);

}  // namespace tandemq
