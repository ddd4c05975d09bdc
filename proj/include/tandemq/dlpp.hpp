#pragma once

#include <cstdint>
#include <vector>

#include "tandemq/queue_system.hpp"

namespace tandemq {

// Batch latency as a directed last-passage time: L(i,j) = max(L(i-1,j),
// L(i,j-1)) + w(i,j) over an m x n grid of independent exponential weights.
// In equilibrium the first column (j = 0) carries rate mu_i - alpha and the
// remaining columns carry rate mu_i.

// Last-passage value over an explicit row-major weight grid (w[i*n + j]).
double last_passage(const std::vector<double>& weights, long m, long n);

// Draws the full weight grid for one replication. Weights are consumed from
// a SplitMix64 stream seeded with `seed`, server-major (i outer, j inner), so
// a replication is reproducible and replayable through last_passage().
std::vector<double> sample_weights(const QueueSystem& sys, std::uint64_t seed);

// One latency replication in O(n) memory; identical to running last_passage
// over sample_weights with the same seed.
double sample_latency(const QueueSystem& sys, std::uint64_t seed);

// Batch of independent replications. Draw k uses derive_seed(master_seed, k),
// so results are independent of the thread count.
std::vector<double> sample_batch(const QueueSystem& sys, std::size_t count,
                                 std::uint64_t master_seed, int threads = 1);

}  // namespace tandemq
