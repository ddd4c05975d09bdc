#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>

namespace tandemq {

// SplitMix64 (Steele, Lea, Flood 2014; same stepping as Java SplittableRandom).
// One 64-bit state word, trivially seedable, and statistically solid for
// Monte Carlo use. Draw-level parallelism comes from derive_seed: every draw
// owns a generator seeded from (master seed, draw index), so batches are
// reproducible for any thread count.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]: 53-bit mantissa, never zero, so logs are safe.
  double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Inverse-CDF exponential draw with the given rate.
  double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

  // Box-Muller pair of independent standard normals.
  std::pair<double, double> normal_pair() {
    double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    double t = 6.283185307179586476925287 * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

  // Standard complex Gaussian: real and imaginary parts iid N(0, 1/2),
  // so E|x|^2 = 1.
  std::complex<double> complex_gaussian() {
    auto [a, b] = normal_pair();
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    return {a * inv_sqrt2, b * inv_sqrt2};
  }

 private:
  std::uint64_t state_;
};

// Per-stream seed: golden-ratio offset pushed through one SplitMix64 step.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 g(master + 0x9E3779B97F4A7C15ULL * (index + 1));
  return g.next();
}

}  // namespace tandemq
