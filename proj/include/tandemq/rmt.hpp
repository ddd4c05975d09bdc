#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "tandemq/queue_system.hpp"

namespace tandemq {

// Random-matrix route to the same batch-latency law: L equals in distribution
// the largest eigenvalue of A A*, where A is m x n complex Gaussian with its
// first column scaled by 1/sqrt(mu_i - alpha) and the remaining columns by
// 1/sqrt(mu_i), entries CN(0,1).

struct GramMatrix {
  std::size_t dim = 0;                   // min(m, n)
  bool transposed = false;               // true when built as A* A (n < m)
  std::vector<std::complex<double>> w;   // row-major dim x dim, PSD Hermitian
};

// Draws A from the stream seeded with `seed` (first column, then the
// remaining columns in column-major order) and forms the Gram matrix on the
// smaller side; both sides share the nonzero spectrum.
GramMatrix gram_matrix(const QueueSystem& sys, std::uint64_t seed);

// Largest eigenvalue of the Gram matrix for one replication.
double sample_eigen_latency(const QueueSystem& sys, std::uint64_t seed);

// Batch of independent replications; draw k uses derive_seed(master_seed, k).
std::vector<double> sample_eigen_batch(const QueueSystem& sys, std::size_t count,
                                       std::uint64_t master_seed, int threads = 1);

}  // namespace tandemq
