#include "tandemq/rmt.hpp"

#include <cmath>

#include "tandemq/errors.hpp"
#include "tandemq/hermitian_eigen.hpp"
#include "tandemq/parallel.hpp"
#include "tandemq/rng.hpp"

namespace tandemq {
namespace {

using cdouble = std::complex<double>;

// Row-major m x n matrix A with column 0 ~ Gamma^{1/2} g, columns >= 1
// ~ Sigma^{1/2} G, consumed from the stream column by column.
std::vector<cdouble> draw_scaled_gaussian(const QueueSystem& sys, std::uint64_t seed) {
  const auto m = static_cast<std::size_t>(sys.m());
  const auto n = static_cast<std::size_t>(sys.n());
  std::vector<cdouble> a(m * n);
  SplitMix64 rng(seed);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const double rate = j == 0 ? sys.rates()[i] - sys.alpha() : sys.rates()[i];
      a[i * n + j] = rng.complex_gaussian() / std::sqrt(rate);
    }
  }
  return a;
}

}  // namespace

GramMatrix gram_matrix(const QueueSystem& sys, std::uint64_t seed) {
  const auto m = static_cast<std::size_t>(sys.m());
  const auto n = static_cast<std::size_t>(sys.n());
  const std::vector<cdouble> a = draw_scaled_gaussian(sys, seed);

  GramMatrix g;
  g.dim = std::min(m, n);
  g.transposed = n < m;
  g.w.assign(g.dim * g.dim, cdouble(0.0, 0.0));
  if (!g.transposed) {
    // W = A A*, m x m
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = i; k < m; ++k) {
        cdouble s(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * std::conj(a[k * n + j]);
        g.w[i * m + k] = s;
        g.w[k * m + i] = std::conj(s);
      }
    }
    for (std::size_t i = 0; i < m; ++i) g.w[i * m + i] = g.w[i * m + i].real();
  } else {
    // W = A* A, n x n
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = j; l < n; ++l) {
        cdouble s(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) s += std::conj(a[i * n + j]) * a[i * n + l];
        g.w[j * n + l] = s;
        g.w[l * n + j] = std::conj(s);
      }
    }
    for (std::size_t j = 0; j < n; ++j) g.w[j * n + j] = g.w[j * n + j].real();
  }
  return g;
}

double sample_eigen_latency(const QueueSystem& sys, std::uint64_t seed) {
  GramMatrix g = gram_matrix(sys, seed);
  return largest_hermitian_eigenvalue(std::move(g.w), g.dim);
}

std::vector<double> sample_eigen_batch(const QueueSystem& sys, std::size_t count,
                                       std::uint64_t master_seed, int threads) {
  if (count == 0) fail(errc::invalid_count, "sample_eigen_batch needs count > 0");
  std::vector<double> out(count);
  parallel_for(count, threads, [&](std::size_t k) {
    out[k] = sample_eigen_latency(sys, derive_seed(master_seed, k));
  });
  return out;
}

}  // namespace tandemq
