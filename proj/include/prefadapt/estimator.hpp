#pragma once

// Reverse LP: recover preference vectors under which observed decisions are
// optimal. Each good observation contributes homogeneous half-spaces
// c.(x_chosen - v) >= 0, one per competing vertex v; the point estimate is
// the max-margin direction inside the resulting cone.

#include "prefadapt/lp.hpp"

#include <cstddef>
#include <deque>
#include <vector>

namespace prefadapt {

enum class Label { kGood, kBad };

/// One decision event: the situation, the operator's choice and its label.
struct Observation {
  std::size_t k = 0;
  LpInstance inst;
  Vertex chosen;
  Label label = Label::kGood;
};

/// Half-space {c : g.c >= 0} with unit normal g.
struct Cut {
  Vector g;
  std::size_t origin_k = 0;

  /// Normalizes `direction` to unit length. Throws InvalidArgument on a zero
  /// or non-finite direction.
  static Cut from_direction(const Vector& direction, std::size_t origin_k);
};

/// Cuts from the most recent good observations, grouped per observation.
class CutSet {
 public:
  static constexpr std::size_t kDefaultWindow = 40;

  /// `n` is the preference dimension, `window` the number of good
  /// observations retained (at least 1).
  explicit CutSet(std::size_t n, std::size_t window = kDefaultWindow);

  std::size_t n() const noexcept { return n_; }
  std::size_t window() const noexcept { return window_; }
  std::size_t observation_count() const noexcept { return blocks_.size(); }
  std::size_t cut_count() const noexcept;
  bool empty() const noexcept { return cut_count() == 0; }

  /// All retained cuts, ordered by origin_k.
  std::vector<Cut> cuts() const;

  /// Step indices of the retained observations, oldest first.
  std::vector<std::size_t> observed_steps() const;

  /// Cut normals stacked as rows, in the order of cuts().
  Matrix normals() const;

  /// Appends one observation's cuts and evicts beyond the window.
  void push(std::size_t k, std::vector<Cut> cuts);

  /// Drops the oldest observation's cuts. No-op when empty.
  void pop_oldest();

 private:
  struct Block {
    std::size_t k;
    std::vector<Cut> cuts;
  };

  std::size_t n_;
  std::size_t window_;
  std::deque<Block> blocks_;
};

struct PreferenceEstimate {
  UnitPreference c_hat;
  double margin = 0.0;
  std::size_t support_count = 0;
};

/// Emits the cut c.(chosen - v) >= 0 for every other vertex v of the
/// instance, skipping coincident vertices. Throws InvalidArgument for bad
/// observations and DimensionLimitError for instances too large to enumerate.
std::vector<Cut> cuts_from_observation(const Observation& obs);

/// Result of the max-margin LP before the unit rescale.
struct MarginSolution {
  Vector c;               // sum(c) = 1 when margin > 0
  double margin = 0.0;    // max over c of min slack
  std::size_t support = 0;  // cuts tight at the optimum
};

/// Solves: maximize e subject to g.c >= e for every cut, c_i >= e,
/// sum(c) = 1, c >= 0. The orthant faces carry the margin too, which keeps
/// the estimate strictly inside the nonnegative orthant. `normals` holds one
/// cut per row. Rows are added to the LP lazily (most violated first) until
/// the incumbent satisfies every cut; the result is optimal for the full set.
MarginSolution max_margin(const Matrix& normals, std::size_t n);

/// The max-margin estimate, rescaled to unit length. An empty set yields the
/// uniform direction with margin 0. Throws InfeasibleConeError when the cone
/// has no interior (margin below tol::kMargin).
PreferenceEstimate estimate_from_cuts(const CutSet& state);

struct EstimateUpdate {
  CutSet state;
  PreferenceEstimate estimate;
};

/// One learning step. Bad observations leave `state` unchanged. A good
/// observation's cuts are appended, the window is enforced, and then the
/// oldest observations are evicted one at a time while the cone has no
/// interior. The newest observation is never evicted; if it is inconsistent
/// with the orthant on its own, it is discarded and `state` is kept.
EstimateUpdate update_estimate(const CutSet& state, const Observation& obs);

}  // namespace prefadapt
