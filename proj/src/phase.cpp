#include "tandemq/phase.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "tandemq/errors.hpp"
#include "tandemq/rate_transform.hpp"

namespace tandemq {
namespace {

constexpr double kEdgeWindow = 1e-6;  // relative to the minimum rate

const char* case_name(PhaseCase c) {
  switch (c) {
    case PhaseCase::A_TracyWidom: return "A";
    case PhaseCase::B_ArrivalGaussian: return "B";
    case PhaseCase::C_SlowServerGaussian: return "C";
    case PhaseCase::C_RankR_GUE: return "C_GUE";
  }
  return "?";
}

const char* law_name(LimitLaw l) {
  switch (l) {
    case LimitLaw::TW2: return "TW2";
    case LimitLaw::StdNormal: return "StdNormal";
    case LimitLaw::GUE_r: return "GUE_r";
  }
  return "?";
}

// Arrival-column path functional: a fraction x of the path runs against the
// arrival boundary, the rest through the fastest-rate bulk.
double arrival_functional(double x, double m, double n, double mu, double alpha) {
  const double root = std::sqrt(m * (1.0 - x)) + std::sqrt(n);
  return m * x / (mu - alpha) + root * root / mu;
}

// Slow-server path functional: a fraction y of the customers is delayed by
// the slowest server, the rest by the bulk. Any intermediate rate drops out
// of the reduced form.
double slow_functional(double y, double m, double n, double mu, double mu_slow) {
  const double root = std::sqrt(m) + std::sqrt(n * (1.0 - y));
  return n * y / mu_slow + root * root / mu;
}

template <typename F>
double grid_plus_golden_max(const F& f, double lo, double hi) {
  // Coarse pass at step 1e-4 of the interval, then golden-section refinement
  // of the bracketing cell pair down to 1e-8 relative width.
  const int cells = 10000;
  const double step = (hi - lo) / cells;
  int best = 0;
  double best_val = f(lo);
  for (int k = 1; k <= cells; ++k) {
    const double v = f(lo + step * k);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  double a = lo + step * std::max(0, best - 1);
  double b = lo + step * std::min(cells, best + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > 1e-8 * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(best_val, std::max(f1, f2));
}

}  // namespace

std::string PhaseDiagnosis::to_json_text() const {
  nlohmann::ordered_json j;
  j["case"] = case_name(label);
  j["lambda"] = lambda;
  j["center"] = center;
  if (scale)
    j["scale"] = *scale;
  else
    j["scale"] = nullptr;
  j["scale_exponent"] = scale_exponent;
  j["law"] = law_name(law);
  j["r"] = rank;
  return j.dump();
}

PhaseDiagnosis classify_phase(const QueueSystem& sys) {
  const SpectralMeasure measure(sys.rates());
  const double mu_min = measure.min_rate();
  const double edge = kEdgeWindow * mu_min;
  const RateTransform full = RateTransform::of(measure, sys.n());
  const double lambda = full.solve_lambda();
  const double alpha = sys.alpha();

  if (std::abs(alpha - lambda) <= edge)
    fail(errc::boundary_regime, "arrival rate within the edge window of the critical point");

  PhaseDiagnosis d;
  if (alpha > lambda) {
    const double radicand = full.derivative(alpha, 1);
    if (!(radicand > 0.0))
      fail(errc::boundary_regime, "supercritical arrival with non-positive variance slope");
    d.label = PhaseCase::B_ArrivalGaussian;
    d.law = LimitLaw::StdNormal;
    d.lambda = lambda;
    d.center = full.eval(alpha);
    d.scale = std::sqrt(radicand);
    d.scale_exponent = 0.5;
    return d;
  }

  // Slow-server probe: drop the minimum-rate servers (mass-preserving
  // renormalization) and test whether the truncated critical point clears
  // the minimum rate. A spike of extensive multiplicity is bulk, not spike.
  const long m = sys.m();
  const long r = measure.min_multiplicity();
  if (r < m && r <= std::max<long>(1, m / 10)) {
    const RateTransform truncated = RateTransform::of(measure, sys.n(), r, /*renormalize=*/true);
    const double lambda_r = truncated.solve_lambda();
    if (lambda_r > mu_min + edge) {
      d.lambda = lambda_r;
      d.center = truncated.eval(mu_min);
      d.rank = r;
      d.scale_exponent = 0.5;
      if (r == 1) {
        const double radicand = -truncated.derivative(mu_min, 1);
        if (!(radicand > 0.0))
          fail(errc::boundary_regime, "slow-server variance radicand not positive");
        d.label = PhaseCase::C_SlowServerGaussian;
        d.law = LimitLaw::StdNormal;
        d.scale = std::sqrt(radicand);
      } else {
        d.label = PhaseCase::C_RankR_GUE;
        d.law = LimitLaw::GUE_r;
        d.scale.reset();
      }
      return d;
    }
    if (lambda_r > mu_min - edge)
      fail(errc::boundary_regime, "slow-server root inside the edge window of the minimum rate");
  }

  if (mu_min - lambda <= edge)
    fail(errc::boundary_regime,
         "critical point at the minimum rate without an admissible slow-server root");

  d.label = PhaseCase::A_TracyWidom;
  d.law = LimitLaw::TW2;
  d.lambda = lambda;
  d.center = full.eval(lambda);
  d.scale = std::cbrt(full.derivative(lambda, 2) / 2.0);
  d.scale_exponent = 1.0 / 3.0;
  return d;
}

double variational_leading_order(const QueueSystem& sys) {
  const SpectralMeasure measure(sys.rates());
  const auto& atoms = measure.atoms();
  if (atoms.size() > 3)
    fail(errc::unsupported_profile, "path functional supports at most 3 distinct rates");
  const RateAtom& bulk = atoms.front();  // fastest rate
  const long m = sys.m();
  if (2 * bulk.count <= m)
    fail(errc::unsupported_profile, "path functional needs the fastest rate in the majority");

  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(sys.n());
  const double mu = bulk.value;
  const double alpha = sys.alpha();

  double best = grid_plus_golden_max(
      [&](double x) { return arrival_functional(x, md, nd, mu, alpha); }, 0.0, 1.0);
  if (atoms.size() > 1) {
    const double mu_slow = atoms.back().value;
    best = std::max(best, grid_plus_golden_max(
                              [&](double y) { return slow_functional(y, md, nd, mu, mu_slow); },
                              0.0, 1.0));
  }
  return best;
}

}  // namespace tandemq
