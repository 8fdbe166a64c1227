#pragma once

// Simulated decision maker: picks the true optimum, or with probability
// p_noise a uniformly random non-optimal vertex, and grades applied
// decisions good or bad against the true optimum.

#include "prefadapt/estimator.hpp"
#include "prefadapt/lp.hpp"
#include "prefadapt/random.hpp"

#include <cstdint>

namespace prefadapt {

struct OperatorConfig {
  double p_noise = 0.0;
  double delta_good = 0.0;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless both probabilities lie in [0, 1].
  void validate() const;

  friend bool operator==(const OperatorConfig&, const OperatorConfig&) = default;
};

/// The operator's decision for one situation. Consumes exactly one draw from
/// `rng` plus, for a noisy choice, one index draw.
Vertex choose(const LpInstance& inst, const UnitPreference& c_true, const OperatorConfig& cfg, Rng& rng);

/// Good iff c_true.x >= (1 - delta_good) * optimum; good when the optimum is 0.
Label evaluate(const LpInstance& inst, const Vertex& chosen, const UnitPreference& c_true,
               const OperatorConfig& cfg);

}  // namespace prefadapt
