#include "tandemq/dlpp.hpp"

#include <algorithm>

#include "tandemq/errors.hpp"
#include "tandemq/parallel.hpp"
#include "tandemq/rng.hpp"

namespace tandemq {

double last_passage(const std::vector<double>& weights, long m, long n) {
  if (m <= 0 || n <= 0) fail(errc::empty_system, "last_passage needs m > 0 and n > 0");
  if (weights.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(n))
    fail(errc::bad_argument, "weight grid size does not match m x n");
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  for (long i = 0; i < m; ++i) {
    double left = 0.0;
    const double* w = weights.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n);
    for (long j = 0; j < n; ++j) {
      left = std::max(row[static_cast<std::size_t>(j)], left) + w[j];
      row[static_cast<std::size_t>(j)] = left;
    }
  }
  return row.back();
}

std::vector<double> sample_weights(const QueueSystem& sys, std::uint64_t seed) {
  const auto m = sys.m();
  const auto n = sys.n();
  SplitMix64 rng(seed);
  std::vector<double> w(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  std::size_t idx = 0;
  for (long i = 0; i < m; ++i) {
    const double mu = sys.rates()[static_cast<std::size_t>(i)];
    for (long j = 0; j < n; ++j)
      w[idx++] = rng.exponential(j == 0 ? mu - sys.alpha() : mu);
  }
  return w;
}

double sample_latency(const QueueSystem& sys, std::uint64_t seed) {
  const auto m = sys.m();
  const auto n = sys.n();
  SplitMix64 rng(seed);
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  for (long i = 0; i < m; ++i) {
    const double mu = sys.rates()[static_cast<std::size_t>(i)];
    double left = 0.0;
    for (long j = 0; j < n; ++j) {
      const double w = rng.exponential(j == 0 ? mu - sys.alpha() : mu);
      left = std::max(row[static_cast<std::size_t>(j)], left) + w;
      row[static_cast<std::size_t>(j)] = left;
    }
  }
  return row.back();
}

std::vector<double> sample_batch(const QueueSystem& sys, std::size_t count,
                                 std::uint64_t master_seed, int threads) {
  if (count == 0) fail(errc::invalid_count, "sample_batch needs count > 0");
  std::vector<double> out(count);
  parallel_for(count, threads,
               [&](std::size_t k) { out[k] = sample_latency(sys, derive_seed(master_seed, k)); });
  return out;
}

}  // namespace tandemq
