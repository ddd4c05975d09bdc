#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tandemq/queue_system.hpp"

namespace tandemq {

// Batch files hold one latency per draw. CSV ("draw_index,latency" header)
// and JSON ({"latencies": [...]}) bodies are deterministic functions of the
// draws; anything time-dependent lives in the metadata sidecar.

void write_batch_csv(std::ostream& out, const std::vector<double>& batch);
void write_batch_json(std::ostream& out, const std::vector<double>& batch);

// Reads either format, detected from the first non-space byte.
std::vector<double> read_batch(const std::string& path);

// Writes `<batch_path>.meta.json` describing how the batch was produced.
void write_batch_metadata(const std::string& batch_path, const QueueSystem& sys,
                          const std::string& sampler, std::uint64_t seed, std::size_t count);

}  // namespace tandemq
