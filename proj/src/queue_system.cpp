#include "tandemq/queue_system.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"
#include "tandemq/errors.hpp"

namespace tandemq {

namespace {

void validate(long m, long n, const std::vector<double>& rates, double alpha) {
  if (m <= 0 || n <= 0) fail(errc::empty_system, "system needs m >= 1 servers and n >= 1 customers");
  if (static_cast<long>(rates.size()) != m)
    fail(errc::bad_format, "rates list does not match m");
  for (double r : rates) {
    if (!(r > 0.0) || !std::isfinite(r))
      fail(errc::non_positive_rate, "service rates must be positive and finite");
  }
  if (!std::isfinite(alpha) || alpha < 0.0)
    fail(errc::bad_argument, "arrival rate alpha must be nonnegative");
  double mn = *std::min_element(rates.begin(), rates.end());
  if (alpha >= mn) fail(errc::unstable, "unstable: alpha must be strictly below every service rate");
}

}  // namespace

QueueSystem::QueueSystem(long m, long n, std::vector<double> rates, double alpha)
    : m_(m), n_(n), rates_(std::move(rates)), alpha_(alpha) {
  validate(m_, n_, rates_, alpha_);
}

QueueSystem QueueSystem::equal_rates(long m, long n, double mu, double alpha) {
  return QueueSystem(m, n, std::vector<double>(static_cast<std::size_t>(m > 0 ? m : 0), mu), alpha);
}

QueueSystem QueueSystem::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::bad_format, std::string("instance JSON parse error: ") + e.what());
  }
  try {
    long n = j.at("n").get<long>();
    double alpha = j.value("alpha", 0.0);
    std::vector<double> rates;
    for (const auto& entry : j.at("rates")) {
      if (entry.is_object()) {
        double v = entry.at("value").get<double>();
        long c = entry.at("count").get<long>();
        if (c <= 0) fail(errc::bad_format, "run-length group count must be positive");
        rates.insert(rates.end(), static_cast<std::size_t>(c), v);
      } else {
        rates.push_back(entry.get<double>());
      }
    }
    long m = j.contains("m") ? j.at("m").get<long>() : static_cast<long>(rates.size());
    return QueueSystem(m, n, std::move(rates), alpha);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::bad_format, std::string("instance JSON missing/ill-typed field: ") + e.what());
  }
}

std::string QueueSystem::to_json_text(int indent) const {
  nlohmann::json groups = nlohmann::json::array();
  std::size_t i = 0;
  while (i < rates_.size()) {
    std::size_t j = i;
    while (j < rates_.size() && rates_[j] == rates_[i]) ++j;
    if (j - i > 1)
      groups.push_back({{"value", rates_[i]}, {"count", j - i}});
    else
      groups.push_back(rates_[i]);
    i = j;
  }
  nlohmann::json j{{"m", m_}, {"n", n_}, {"rates", groups}, {"alpha", alpha_}};
  return j.dump(indent);
}

std::string QueueSystem::hash() const {
  std::vector<double> sorted = rates_;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::string canon;
  canon.reserve(32 + 24 * sorted.size());
  char buf[64];
  auto put = [&](const char* fmt, auto v) {
    std::snprintf(buf, sizeof buf, fmt, v);
    canon += buf;
    canon += ';';
  };
  put("%ld", m_);
  put("%ld", n_);
  for (double r : sorted) put("%.15g", r);
  put("%.15g", alpha_);

  std::uint64_t h = 14695981039346656037ULL;  // FNV-1a 64
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SpectralMeasure::SpectralMeasure(const QueueSystem& sys) : sorted_(sys.rates()) { build(); }

SpectralMeasure::SpectralMeasure(std::vector<double> rates) : sorted_(std::move(rates)) {
  if (sorted_.empty()) fail(errc::empty_system, "spectral measure of an empty rate list");
  build();
}

void SpectralMeasure::build() {
  std::sort(sorted_.begin(), sorted_.end(), std::greater<>());
  atoms_.clear();
  for (double r : sorted_) {
    if (!atoms_.empty() && atoms_.back().value == r)
      ++atoms_.back().count;
    else
      atoms_.push_back({r, 1});
  }
  double mn = sorted_.back();
  min_multiplicity_ = 0;
  for (double r : sorted_) {
    if (r - mn <= 1e-9 * mn) ++min_multiplicity_;
  }
}

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace tandemq
