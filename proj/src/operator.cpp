#include "prefadapt/operator.hpp"

#include "prefadapt/errors.hpp"

#include <algorithm>
#include <vector>

namespace prefadapt {

void OperatorConfig::validate() const {
  if (!(p_noise >= 0.0 && p_noise <= 1.0)) throw InvalidArgument("OperatorConfig: p_noise must lie in [0, 1]");
  if (!(delta_good >= 0.0 && delta_good <= 1.0)) {
    throw InvalidArgument("OperatorConfig: delta_good must lie in [0, 1]");
  }
}

Vertex choose(const LpInstance& inst, const UnitPreference& c_true, const OperatorConfig& cfg, Rng& rng) {
  cfg.validate();
  Vertex best = solve_lp(inst, c_true).vertex;
  if (rng.uniform01() >= cfg.p_noise) return best;

  std::vector<Vertex> others;
  for (auto& v : enumerate_vertices(inst)) {
    if (!same_point(v.x, best.x)) others.push_back(std::move(v));
  }
  if (others.empty()) return best;
  return std::move(others[rng.below(others.size())]);
}

Label evaluate(const LpInstance& inst, const Vertex& chosen, const UnitPreference& c_true,
               const OperatorConfig& cfg) {
  cfg.validate();
  if (!is_feasible(inst, chosen.x)) throw InvalidArgument("evaluate: chosen point is infeasible");
  const double optimum = solve_lp(inst, c_true).value;
  if (optimum == 0.0) return Label::kGood;
  // Roundoff slack so that a re-derived copy of the optimum still grades good.
  const double slack = 1e-9 * std::max(1.0, optimum);
  return objective_value(c_true, chosen.x) >= (1.0 - cfg.delta_good) * optimum - slack ? Label::kGood : Label::kBad;
}

}  // namespace prefadapt
