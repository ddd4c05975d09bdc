#pragma once

#include <optional>
#include <string>

#include "tandemq/queue_system.hpp"

namespace tandemq {

enum class PhaseCase {
  A_TracyWidom,         // subcritical arrival, no dominant slow server
  B_ArrivalGaussian,    // supercritical arrival
  C_SlowServerGaussian,  // single dominant slow server
  C_RankR_GUE,          // r > 1 tied slow servers: center only
};

enum class LimitLaw { TW2, StdNormal, GUE_r };

struct PhaseDiagnosis {
  PhaseCase label = PhaseCase::A_TracyWidom;
  LimitLaw law = LimitLaw::TW2;
  double lambda = 0.0;          // critical point of the governing transform
  double center = 0.0;          // leading-order latency
  std::optional<double> scale;  // fluctuation scale; absent for GUE_r
  double scale_exponent = 0.0;  // 1/3 for TW2, 1/2 for the Gaussian cases
  long rank = 0;                // slow-server multiplicity r (0 outside case C)

  std::string to_json_text() const;
};

// Classifies the fluctuation regime of the batch latency. Near-critical
// inputs (arrival rate within the edge window of the critical point, or a
// slow-server root inside the window around the minimum rate) raise
// boundary_regime rather than guessing.
PhaseDiagnosis classify_phase(const QueueSystem& sys);

// Independent leading-order value from the coarse-grained path functional,
// maximized by grid search plus golden-section refinement. Supports at most
// three distinct rates with the fastest rate in the majority.
double variational_leading_order(const QueueSystem& sys);

}  // namespace tandemq
