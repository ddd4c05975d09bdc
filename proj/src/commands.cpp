#include "tandemq/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tandemq/batch_io.hpp"
#include "tandemq/dlpp.hpp"
#include "tandemq/errors.hpp"
#include "tandemq/phase.hpp"
#include "tandemq/rmt.hpp"
#include "tandemq/rng.hpp"
#include "tandemq/stats.hpp"
#include "tandemq/tw2.hpp"

namespace tandemq {
namespace {

double parse_double(std::string_view s, const char* what) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(errc::bad_format, std::string("malformed number in ") + what + ": '" + std::string(s) + "'");
  return v;
}

long parse_count(std::string_view s, const char* what) {
  long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v <= 0)
    fail(errc::bad_format, std::string("malformed count in ") + what + ": '" + std::string(s) + "'");
  return v;
}

std::vector<double> rates_from_spec(const std::string& mu, long m) {
  std::vector<double> rates;
  if (mu.find('@') == std::string::npos) {
    if (m <= 0) fail(errc::bad_argument, "--m is required when --mu is a single value");
    rates.assign(static_cast<std::size_t>(m), parse_double(mu, "--mu"));
    return rates;
  }
  std::string_view rest = mu;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view token = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto at = token.find('@');
    if (at == std::string_view::npos || at == 0 || at + 1 == token.size())
      fail(errc::bad_format, "--mu groups must look like value@count");
    const double value = parse_double(token.substr(0, at), "--mu");
    const long count = parse_count(token.substr(at + 1), "--mu");
    rates.insert(rates.end(), static_cast<std::size_t>(count), value);
  }
  return rates;
}

std::vector<double> rates_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_argument, "cannot open rates file: " + path);
  std::vector<double> rates;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rates.push_back(parse_double(line, "rates file"));
  }
  if (rates.empty()) fail(errc::bad_format, "rates file has no rates: " + path);
  return rates;
}

void check_format(const GlobalOptions& g) {
  if (g.format != "csv" && g.format != "json")
    fail(errc::bad_argument, "--format must be csv or json");
}

// Routes a command's text payload to --output when given, else to `out`.
void emit_text(const GlobalOptions& g, std::ostream& out, const std::string& text) {
  if (g.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.output, std::ios::binary);
  if (!f) fail(errc::bad_argument, "cannot open output file: " + g.output);
  f << text;
}

std::function<double(double)> law_cdf(const std::string& law) {
  if (law == "tw2") return [](double x) { return shared_tw2_table().cdf_at(x); };
  if (law == "normal") return [](double x) { return normal_cdf(x); };
  fail(errc::bad_argument, "--law must be tw2 or normal");
}

std::function<double(double)> law_pdf(const std::string& law) {
  if (law == "tw2") return [](double x) { return shared_tw2_table().pdf_at(x); };
  if (law == "normal") return [](double x) { return normal_pdf(x); };
  fail(errc::bad_argument, "--law must be tw2 or normal");
}

double snap_grid(double v) { return std::round(v * 1e12) / 1e12; }

struct ReferenceQuantile {
  double p;
  double value;
};

// Reference TW2 quantiles computed with the spectral collocation toolbox of
// Bornemann, Math. Comp. 79 (2010) 871-915.
constexpr ReferenceQuantile kReferenceQuantiles[] = {
    {0.010000, -3.72444594640057}, {0.050000, -3.19416673215810},
    {0.100000, -2.90135093847591}, {0.300000, -2.26618203984916},
    {0.500000, -1.80491240893658}, {0.700000, -1.32485955606020},
    {0.900000, -0.59685129711735}, {0.950000, -0.23247446976400},
    {0.990000, 0.47763604739084},  {0.999000, 1.31441948008634},
    {0.999900, 2.03469175457082},  {0.999990, 2.68220732168978},
    {0.999999, 3.27858828203370},
};

}  // namespace

QueueSystem make_system(const InstanceOptions& o) {
  std::vector<double> rates;
  if (!o.rates_file.empty())
    rates = rates_from_file(o.rates_file);
  else if (!o.mu.empty())
    rates = rates_from_spec(o.mu, o.m);
  else
    fail(errc::bad_argument, "provide service rates via --mu or --rates-file");
  if (o.m > 0 && o.m != static_cast<long>(rates.size()))
    fail(errc::bad_argument, "--m disagrees with the number of rates given");
  const long m = static_cast<long>(rates.size());
  return QueueSystem(m, o.n, std::move(rates), o.alpha);
}

int cmd_sample(const SampleOptions& o, const GlobalOptions& g, std::ostream& out) {
  check_format(g);
  if (o.count == 0) fail(errc::invalid_count, "--count must be at least 1");
  if (o.sampler != "dlpp" && o.sampler != "rmt")
    fail(errc::bad_argument, "--sampler must be dlpp or rmt");
  const QueueSystem sys = make_system(o.instance);
  const std::vector<double> batch = o.sampler == "dlpp"
                                        ? sample_batch(sys, o.count, g.seed, g.threads)
                                        : sample_eigen_batch(sys, o.count, g.seed, g.threads);
  std::ostringstream body;
  if (g.format == "json")
    write_batch_json(body, batch);
  else
    write_batch_csv(body, batch);
  if (g.output.empty()) {
    out << body.str();
    return 0;
  }
  emit_text(g, out, body.str());
  write_batch_metadata(g.output, sys, o.sampler, g.seed, o.count);
  out << "wrote " << g.output << " (" << o.count << " draws, " << o.sampler << ")\n";
  return 0;
}

int cmd_predict(const PredictOptions& o, const GlobalOptions& g, std::ostream& out) {
  const QueueSystem sys = make_system(o.instance);
  nlohmann::ordered_json j;
  int code = 0;
  try {
    const PhaseDiagnosis d = classify_phase(sys);
    j = nlohmann::ordered_json::parse(d.to_json_text());
  } catch (const Error& e) {
    if (e.code() != errc::boundary_regime) throw;
    j["case"] = "boundary";
    j["message"] = e.what();
    code = 3;
  }
  if (o.variational) {
    try {
      j["variational"] = variational_leading_order(sys);
    } catch (const Error& e) {
      if (e.code() != errc::unsupported_profile) throw;
      j["variational"] = nullptr;
    }
  }
  emit_text(g, out, j.dump() + "\n");
  return code;
}

int cmd_compare(const CompareOptions& o, const GlobalOptions& g, std::ostream& out) {
  check_format(g);
  if (!(o.scale > 0.0)) fail(errc::bad_argument, "--scale must be positive");
  if (o.bins <= 0 || !(o.range > 0.0)) fail(errc::bad_argument, "need --bins > 0 and --range > 0");
  std::vector<double> draws = read_batch(o.batch);
  for (double& x : draws) x = (x - o.center) / o.scale;

  const double d = ks_one_sample(draws, law_cdf(o.law));
  out << "ks_distance=" << format_double(d) << '\n';

  const Histogram h = histogram_density(draws, -o.range, o.range, static_cast<std::size_t>(o.bins));
  const auto pdf = law_pdf(o.law);
  std::ostringstream body;
  if (g.format == "json") {
    nlohmann::ordered_json j;
    j["ks_distance"] = d;
    j["law"] = o.law;
    j["bin_width"] = h.bin_width();
    auto cells = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < h.density.size(); ++k)
      cells.push_back({{"center", h.bin_center(k)},
                       {"empirical_density", h.density[k]},
                       {"law_density", pdf(h.bin_center(k))}});
    j["bins"] = cells;
    body << j.dump() << '\n';
  } else {
    body << "bin_center,empirical_density,law_density\n";
    for (std::size_t k = 0; k < h.density.size(); ++k)
      body << format_double(h.bin_center(k)) << ',' << format_double(h.density[k]) << ','
           << format_double(pdf(h.bin_center(k))) << '\n';
  }
  emit_text(g, out, body.str());
  return 0;
}

int cmd_ks(const KsOptions& o, const GlobalOptions& g, std::ostream& out) {
  check_format(g);
  if (o.mode == "two") {
    if (o.a.empty() || o.b.empty()) fail(errc::bad_argument, "ks two needs --a and --b");
    const std::vector<double> a = read_batch(o.a);
    const std::vector<double> b = read_batch(o.b);
    const double d = ks_two_sample(a, b);
    const double thr = ks_threshold(a.size(), b.size());
    std::ostringstream body;
    if (g.format == "json") {
      nlohmann::ordered_json j{{"ks_distance", d}, {"threshold_1pct", thr}};
      body << j.dump() << '\n';
    } else {
      body << "ks_distance=" << format_double(d) << '\n'
           << "threshold_1pct=" << format_double(thr) << '\n';
    }
    emit_text(g, out, body.str());
    return 0;
  }
  if (o.mode != "one") fail(errc::bad_argument, "ks mode must be one or two");
  if (o.a.empty()) fail(errc::bad_argument, "ks one needs --batch");
  if (!(o.scale > 0.0)) fail(errc::bad_argument, "--scale must be positive");
  std::vector<double> draws = read_batch(o.a);
  for (double& x : draws) x = (x - o.center) / o.scale;
  const double d = ks_one_sample(draws, law_cdf(o.law));
  std::ostringstream body;
  if (g.format == "json") {
    nlohmann::ordered_json j{{"ks_distance", d}};
    body << j.dump() << '\n';
  } else {
    body << "ks_distance=" << format_double(d) << '\n';
  }
  emit_text(g, out, body.str());
  return 0;
}

int cmd_heatmap(const HeatmapOptions& o, const GlobalOptions& g, std::ostream& out) {
  check_format(g);
  if (o.m <= 0 || o.n <= 0) fail(errc::bad_argument, "need --m >= 1 and --n >= 1");
  if (!(o.bulk > 0.0)) fail(errc::bad_argument, "--bulk must be positive");
  if (!(o.mu1_min > 0.0)) fail(errc::bad_argument, "--mu1-min must be positive");
  if (!(o.mu1_step > 0.0) || !(o.alpha_step > 0.0))
    fail(errc::bad_argument, "grid steps must be positive");
  if (o.mu1_max < o.mu1_min || o.alpha_max < o.alpha_min || o.alpha_min < 0.0)
    fail(errc::bad_argument, "grid bounds are inverted or negative");
  if (o.count < 500) fail(errc::invalid_count, "--count must be at least 500");
  if (o.sampler != "dlpp" && o.sampler != "rmt")
    fail(errc::bad_argument, "--sampler must be dlpp or rmt");

  const auto sample_with = [&](const QueueSystem& sys, std::uint64_t seed) {
    return o.sampler == "dlpp" ? sample_batch(sys, o.count, seed, g.threads)
                               : sample_eigen_batch(sys, o.count, seed, g.threads);
  };

  const auto mu_cells = static_cast<long>(std::floor((o.mu1_max - o.mu1_min) / o.mu1_step + 1e-9)) + 1;
  const auto al_cells =
      static_cast<long>(std::floor((o.alpha_max - o.alpha_min) / o.alpha_step + 1e-9)) + 1;

  // Shared reference batch: homogeneous rates, empty start.
  const QueueSystem baseline(o.m, o.n, std::vector<double>(static_cast<std::size_t>(o.m), o.bulk),
                             0.0);
  const std::vector<double> base_batch = sample_with(baseline, derive_seed(g.seed, 0));

  std::ostringstream body;
  auto cells_json = nlohmann::ordered_json::array();
  if (g.format == "csv") body << "mu1,alpha,ks_distance\n";
  std::size_t cell_index = 0;
  for (long i = 0; i < mu_cells; ++i) {
    const double mu1 = snap_grid(o.mu1_min + static_cast<double>(i) * o.mu1_step);
    for (long k = 0; k < al_cells; ++k) {
      const double alpha = snap_grid(o.alpha_min + static_cast<double>(k) * o.alpha_step);
      ++cell_index;
      double d = -1.0;
      if (alpha < std::min(mu1, o.bulk)) {
        std::vector<double> rates(static_cast<std::size_t>(o.m), o.bulk);
        rates[0] = mu1;
        const QueueSystem sys(o.m, o.n, std::move(rates), alpha);
        d = ks_two_sample(sample_with(sys, derive_seed(g.seed, cell_index)), base_batch);
      }
      if (g.format == "csv")
        body << format_double(mu1) << ',' << format_double(alpha) << ',' << format_double(d)
             << '\n';
      else
        cells_json.push_back({{"mu1", mu1}, {"alpha", alpha}, {"ks", d}});
    }
  }
  if (g.format == "json") {
    nlohmann::ordered_json j{{"m", o.m},         {"n", o.n},         {"bulk", o.bulk},
                             {"count", o.count}, {"sampler", o.sampler}, {"cells", cells_json}};
    body << j.dump() << '\n';
  }
  emit_text(g, out, body.str());
  return 0;
}

int cmd_twdist(const TwdistOptions& o, const GlobalOptions& g, std::ostream& out) {
  check_format(g);
  const bool default_table = o.s0 == 6.0 && o.s_min == -10.0 && o.step == 0.005;
  TW2Table local;
  if (!default_table) local = build_tw2_table(o.s0, o.s_min, o.step);
  const TW2Table& tab = default_table ? shared_tw2_table() : local;

  std::ostringstream body;
  if (o.quantile) {
    body << format_double(tab.quantile(*o.quantile)) << '\n';
  } else if (o.table1) {
    if (g.format == "json") {
      auto rows = nlohmann::ordered_json::array();
      for (const auto& rq : kReferenceQuantiles)
        rows.push_back({{"p", rq.p},
                        {"quantile", tab.quantile(rq.p)},
                        {"reference", rq.value},
                        {"delta", tab.quantile(rq.p) - rq.value}});
      body << nlohmann::ordered_json{{"quantiles", rows}}.dump() << '\n';
    } else {
      body << "p,quantile,reference,delta\n";
      for (const auto& rq : kReferenceQuantiles) {
        const double q = tab.quantile(rq.p);
        body << format_double(rq.p) << ',' << format_double(q) << ',' << format_double(rq.value)
             << ',' << format_double(q - rq.value) << '\n';
      }
    }
  } else if (g.format == "json") {
    nlohmann::ordered_json j{{"s", tab.s}, {"q", tab.q},
                             {"cdf", tab.cdf}, {"pdf", tab.pdf},
                             {"mean", tab.mean}, {"variance", tab.variance}};
    body << j.dump() << '\n';
  } else {
    body << "s,q,cdf,pdf\n";
    for (std::size_t k = 0; k < tab.s.size(); ++k)
      body << format_double(tab.s[k]) << ',' << format_double(tab.q[k]) << ','
           << format_double(tab.cdf[k]) << ',' << format_double(tab.pdf[k]) << '\n';
  }
  emit_text(g, out, body.str());
  return 0;
}

namespace {

void add_instance_options(CLI::App* cmd, InstanceOptions& io) {
  cmd->add_option("--m", io.m, "number of servers (inferred from the rate list when omitted)");
  cmd->add_option("--n", io.n, "batch size (number of customers)")->required();
  cmd->add_option("--mu", io.mu, "service rates: one value for all servers, or value@count groups");
  cmd->add_option("--rates-file", io.rates_file, "file with one service rate per line");
  cmd->add_option("--alpha", io.alpha, "equilibrium arrival rate (0 = empty start)");
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Batch latency of tandem exponential queues: samplers, limit-law "
               "predictions, and distribution tables"};
  app.name("tandemq");
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--seed", g.seed, "master seed for all derived streams");
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)");
  app.add_option("--output", g.output, "write the payload to this file instead of stdout");
  app.add_option("--format", g.format, "payload format: csv or json");

  SampleOptions so;
  auto* sample = app.add_subcommand("sample", "draw a latency batch and write it out");
  sample->fallthrough();
  add_instance_options(sample, so.instance);
  sample->add_option("--count", so.count, "number of independent draws")->required();
  sample->add_option("--sampler", so.sampler, "dlpp (lattice recursion) or rmt (eigenvalue)");

  PredictOptions po;
  auto* predict = app.add_subcommand("predict", "classify the phase and print limit constants");
  predict->fallthrough();
  add_instance_options(predict, po.instance);
  predict->add_flag("--variational", po.variational,
                    "also print the independent leading-order path value");

  CompareOptions co;
  auto* compare = app.add_subcommand("compare", "standardize a batch and compare to a limit law");
  compare->fallthrough();
  compare->add_option("--batch", co.batch, "batch file from `sample`")->required();
  compare->add_option("--law", co.law, "tw2 or normal");
  compare->add_option("--center", co.center, "centering constant")->required();
  compare->add_option("--scale", co.scale, "scale constant")->required();
  compare->add_option("--bins", co.bins, "histogram bins");
  compare->add_option("--range", co.range, "histogram half-range in standardized units");

  KsOptions ko;
  auto* ks = app.add_subcommand("ks", "Kolmogorov-Smirnov distances");
  ks->fallthrough();
  ks->add_option("mode", ko.mode, "one or two")->required();
  ks->add_option("--a", ko.a, "first batch file (two-sample)");
  ks->add_option("--b", ko.b, "second batch file (two-sample)");
  ks->add_option("--batch", ko.a, "batch file (one-sample)");
  ks->add_option("--law", ko.law, "one-sample reference law: tw2 or normal");
  ks->add_option("--center", ko.center, "center subtracted before the one-sample test");
  ks->add_option("--scale", ko.scale, "scale divided out before the one-sample test");

  HeatmapOptions ho;
  auto* heatmap = app.add_subcommand(
      "heatmap", "two-sample KS distances over a (mu1, alpha) grid against the homogeneous baseline");
  heatmap->fallthrough();
  heatmap->add_option("--m", ho.m, "number of servers");
  heatmap->add_option("--n", ho.n, "batch size");
  heatmap->add_option("--bulk", ho.bulk, "rate of servers 2..m");
  heatmap->add_option("--mu1-min", ho.mu1_min, "first-server rate grid start");
  heatmap->add_option("--mu1-max", ho.mu1_max, "first-server rate grid end");
  heatmap->add_option("--mu1-step", ho.mu1_step, "first-server rate grid step");
  heatmap->add_option("--alpha-min", ho.alpha_min, "arrival rate grid start");
  heatmap->add_option("--alpha-max", ho.alpha_max, "arrival rate grid end");
  heatmap->add_option("--alpha-step", ho.alpha_step, "arrival rate grid step");
  heatmap->add_option("--count", ho.count, "draws per cell (minimum 500)");
  heatmap->add_option("--sampler", ho.sampler, "dlpp or rmt");

  TwdistOptions to;
  double quantile_value = 0.0;
  auto* twdist = app.add_subcommand("twdist", "emit the TW2 table, a quantile, or the "
                                              "reference-quantile comparison");
  twdist->fallthrough();
  twdist->add_option("--s0", to.s0, "integration seed point in [4, 8]");
  twdist->add_option("--smin", to.s_min, "left end of the table grid");
  twdist->add_option("--step", to.step, "table grid step");
  auto* qopt = twdist->add_option("--quantile", quantile_value, "print the inverse CDF at p");
  twdist->add_flag("--table1", to.table1, "print reference quantiles with deltas");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (qopt->count() > 0) to.quantile = quantile_value;

  try {
    if (sample->parsed()) return cmd_sample(so, g, out);
    if (predict->parsed()) return cmd_predict(po, g, out);
    if (compare->parsed()) return cmd_compare(co, g, out);
    if (ks->parsed()) return cmd_ks(ko, g, out);
    if (heatmap->parsed()) return cmd_heatmap(ho, g, out);
    if (twdist->parsed()) return cmd_twdist(to, g, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << "error: no subcommand given\n";
  return 2;
}

}  // namespace tandemq
