#include "tandemq/batch_io.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tandemq/errors.hpp"

namespace tandemq {
namespace {

std::string iso8601_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::vector<double> parse_batch_csv(const std::string& text) {
  std::vector<double> draws;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {  // "draw_index,latency"
      header = false;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail(errc::bad_format, "batch CSV row missing a comma");
    const char* first = line.data() + comma + 1;
    const char* last = line.data() + line.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
      fail(errc::bad_format, "batch CSV row has a malformed latency");
    draws.push_back(value);
  }
  return draws;
}

}  // namespace

void write_batch_csv(std::ostream& out, const std::vector<double>& batch) {
  out << "draw_index,latency\n";
  for (std::size_t k = 0; k < batch.size(); ++k)
    out << k << ',' << format_double(batch[k]) << '\n';
}

void write_batch_json(std::ostream& out, const std::vector<double>& batch) {
  nlohmann::ordered_json j;
  j["latencies"] = batch;
  out << j.dump() << '\n';
}

std::vector<double> read_batch(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::bad_argument, "cannot open batch file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::size_t k = 0;
  while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
  if (k == text.size()) fail(errc::empty_sample, "batch file is empty: " + path);

  std::vector<double> draws;
  if (text[k] == '{' || text[k] == '[') {
    try {
      const nlohmann::json j = nlohmann::json::parse(text);
      const nlohmann::json& arr = j.is_array() ? j : j.at("latencies");
      draws = arr.get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      fail(errc::bad_format, std::string("batch JSON: ") + e.what());
    }
  } else {
    draws = parse_batch_csv(text);
  }
  if (draws.empty()) fail(errc::empty_sample, "batch file has no draws: " + path);
  return draws;
}

void write_batch_metadata(const std::string& batch_path, const QueueSystem& sys,
                          const std::string& sampler, std::uint64_t seed, std::size_t count) {
  nlohmann::ordered_json j;
  j["sampler"] = sampler;
  j["seed"] = seed;
  j["count"] = count;
  j["instance_hash"] = sys.hash();
  j["instance"] = nlohmann::json::parse(sys.to_json_text());
  j["created_at"] = iso8601_now();
  std::ofstream out(batch_path + ".meta.json", std::ios::binary);
  if (!out) fail(errc::bad_argument, "cannot write metadata sidecar for " + batch_path);
  out << j.dump(2) << '\n';
}

}  // namespace tandemq
