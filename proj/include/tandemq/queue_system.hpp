#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tandemq {

// A batch of n customers pushed through m tandem exponential servers, with
// equilibrium arrival rate alpha (alpha = 0 means the system starts empty).
// Immutable value type; stability (alpha < min rate) and positivity are
// checked on construction.
class QueueSystem {
 public:
  QueueSystem(long m, long n, std::vector<double> rates, double alpha);

  static QueueSystem equal_rates(long m, long n, double mu, double alpha);

  // Instance JSON: {"m":..,"n":..,"rates":[..],"alpha":..}. Each rates entry
  // is either a number or a run-length group {"value":v,"count":k}; groups
  // are expanded before validation and "m" must match the expanded size.
  static QueueSystem from_json_text(const std::string& text);
  std::string to_json_text(int indent = -1) const;

  long m() const { return m_; }
  long n() const { return n_; }
  double alpha() const { return alpha_; }
  // Service rates in the order given (permutations are preserved; the latency
  // distribution does not depend on the order).
  const std::vector<double>& rates() const { return rates_; }

  // Canonical FNV-1a hash over (m, n, rates sorted descending at 15
  // significant digits, alpha); 16 hex digits. Order-insensitive.
  std::string hash() const;

 private:
  long m_;
  long n_;
  std::vector<double> rates_;
  double alpha_;
};

struct RateAtom {
  double value = 0.0;
  long count = 0;
};

// The empirical rate measure: sorted rates, distinct atoms, and the
// multiplicity of the minimum (rates within 1e-9 relative of the minimum
// count toward it).
class SpectralMeasure {
 public:
  explicit SpectralMeasure(const QueueSystem& sys);
  explicit SpectralMeasure(std::vector<double> rates);

  // Nonincreasing.
  const std::vector<double>& sorted_rates() const { return sorted_; }
  // Distinct values, descending, with exact-equality multiplicities.
  const std::vector<RateAtom>& atoms() const { return atoms_; }
  double min_rate() const { return sorted_.back(); }
  long min_multiplicity() const { return min_multiplicity_; }
  long size() const { return static_cast<long>(sorted_.size()); }

 private:
  void build();
  std::vector<double> sorted_;
  std::vector<RateAtom> atoms_;
  long min_multiplicity_ = 0;
};

// Shortest round-trip decimal rendering (used everywhere CSV/JSON output must
// be byte-deterministic).
std::string format_double(double v);

}  // namespace tandemq
