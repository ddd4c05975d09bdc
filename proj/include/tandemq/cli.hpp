#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "tandemq/queue_system.hpp"

namespace tandemq {

// Command implementations live in the library so tests can drive them with
// in-memory streams; tools/main.cpp only parses argv into these structs.

struct GlobalOptions {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string output;          // empty: write to the provided stream
  std::string format = "csv";  // csv | json
};

struct InstanceOptions {
  long m = 0;  // 0: infer from the rate list when possible
  long n = 0;
  std::string mu;          // "v" for all-equal or "v@k,w@j" run-length groups
  std::string rates_file;  // one rate per line; overrides --mu
  double alpha = 0.0;
};

QueueSystem make_system(const InstanceOptions& opts);

struct SampleOptions {
  InstanceOptions instance;
  std::size_t count = 0;
  std::string sampler = "dlpp";  // dlpp | rmt
};

struct PredictOptions {
  InstanceOptions instance;
  bool variational = false;
};

struct CompareOptions {
  std::string batch;
  std::string law = "tw2";  // tw2 | normal
  double center = 0.0;
  double scale = 1.0;
  long bins = 60;
  double range = 6.0;  // histogram support [-range, range] in standardized units
};

struct KsOptions {
  std::string mode = "two";  // one | two
  std::string a;             // first batch (or the only one)
  std::string b;             // second batch (two-sample)
  std::string law = "tw2";   // one-sample reference law
  double center = 0.0;
  double scale = 1.0;
};

struct HeatmapOptions {
  long m = 100;
  long n = 100;
  double bulk = 1.0;
  double mu1_min = 0.1, mu1_max = 1.0, mu1_step = 0.1;
  double alpha_min = 0.0, alpha_max = 0.9, alpha_step = 0.1;
  std::size_t count = 1000;
  std::string sampler = "dlpp";
};

struct TwdistOptions {
  double s0 = 6.0;
  double s_min = -10.0;
  double step = 0.005;
  std::optional<double> quantile;
  bool table1 = false;
};

int cmd_sample(const SampleOptions&, const GlobalOptions&, std::ostream& out);
int cmd_predict(const PredictOptions&, const GlobalOptions&, std::ostream& out);
int cmd_compare(const CompareOptions&, const GlobalOptions&, std::ostream& out);
int cmd_ks(const KsOptions&, const GlobalOptions&, std::ostream& out);
int cmd_heatmap(const HeatmapOptions&, const GlobalOptions&, std::ostream& out);
int cmd_twdist(const TwdistOptions&, const GlobalOptions&, std::ostream& out);

// Parses argv (excluding the program name is fine too) and dispatches; maps
// Error codes to process exit codes and writes diagnostics to err.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tandemq
