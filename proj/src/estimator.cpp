#include "prefadapt/estimator.hpp"

#include "prefadapt/errors.hpp"
#include "prefadapt/tolerances.hpp"
#include "simplex.hpp"

#include <algorithm>
#include <numeric>

namespace prefadapt {

namespace {
// Incumbent counts as feasible for a cut once its slack is above -kViolation.
constexpr double kViolation = 1e-10;
// Tightness threshold used for support_count.
constexpr double kSupport = 1e-9;
}  // namespace

Cut Cut::from_direction(const Vector& direction, std::size_t origin_k) {
  const double norm = direction.norm();
  if (!direction.allFinite() || norm == 0.0) throw InvalidArgument("Cut: degenerate normal");
  return Cut{direction / norm, origin_k};
}

CutSet::CutSet(std::size_t n, std::size_t window) : n_(n), window_(window) {
  if (n == 0) throw InvalidArgument("CutSet: dimension must be positive");
  if (window == 0) throw InvalidArgument("CutSet: window must be at least 1");
}

std::size_t CutSet::cut_count() const noexcept {
  std::size_t total = 0;
  for (const auto& b : blocks_) total += b.cuts.size();
  return total;
}

std::vector<Cut> CutSet::cuts() const {
  std::vector<Cut> out;
  out.reserve(cut_count());
  for (const auto& b : blocks_) out.insert(out.end(), b.cuts.begin(), b.cuts.end());
  return out;
}

std::vector<std::size_t> CutSet::observed_steps() const {
  std::vector<std::size_t> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.k);
  return out;
}

Matrix CutSet::normals() const {
  Matrix g(static_cast<Eigen::Index>(cut_count()), static_cast<Eigen::Index>(n_));
  Eigen::Index row = 0;
  for (const auto& b : blocks_) {
    for (const auto& cut : b.cuts) g.row(row++) = cut.g.transpose();
  }
  return g;
}

void CutSet::push(std::size_t k, std::vector<Cut> cuts) {
  for (const auto& cut : cuts) {
    if (cut.g.size() != static_cast<Eigen::Index>(n_)) throw InvalidArgument("CutSet: cut dimension mismatch");
  }
  blocks_.push_back(Block{k, std::move(cuts)});
  while (blocks_.size() > window_) blocks_.pop_front();
}

void CutSet::pop_oldest() {
  if (!blocks_.empty()) blocks_.pop_front();
}

std::vector<Cut> cuts_from_observation(const Observation& obs) {
  if (obs.label != Label::kGood) throw InvalidArgument("cuts_from_observation: observation is labeled bad");
  if (obs.chosen.x.size() != static_cast<Eigen::Index>(obs.inst.n())) {
    throw InvalidArgument("cuts_from_observation: chosen vertex has the wrong dimension");
  }
  std::vector<Cut> cuts;
  for (const auto& v : enumerate_vertices(obs.inst)) {
    const Vector diff = obs.chosen.x - v.x;
    if (diff.norm() < tol::kVertex) continue;
    cuts.push_back(Cut::from_direction(diff, obs.k));
  }
  return cuts;
}

namespace {

// maximize e s.t. e - g.c <= 0 (rows in `active`), e - c_i <= 0, sum(c) <= 1,
// over (c, e) >= 0. The all-zero point is feasible.
std::pair<Vector, double> solve_restricted(const Matrix& normals, const std::vector<Eigen::Index>& active,
                                           Eigen::Index n) {
  const auto rows = static_cast<Eigen::Index>(active.size()) + n + 1;
  Matrix a = Matrix::Zero(rows, n + 1);
  Vector b = Vector::Zero(rows);
  Eigen::Index r = 0;
  for (const auto k : active) {
    a.row(r).head(n) = -normals.row(k);
    a(r, n) = 1.0;
    ++r;
  }
  for (Eigen::Index i = 0; i < n; ++i, ++r) {
    a(r, i) = -1.0;
    a(r, n) = 1.0;
  }
  a.row(r).head(n).setOnes();
  b[r] = 1.0;

  detail::Dictionary dict(a, b);
  Vector objective = Vector::Zero(n + 1 + rows);
  objective[n] = 1.0;
  if (!dict.maximize(objective)) throw InternalError("max_margin: unbounded restricted LP");
  const Vector sol = dict.structural_values();
  if (sol.head(n).sum() > 1.0 + 1e-7 || (sol.head(n).array() < sol[n] - 1e-7).any()) {
    throw InternalError("max_margin: restricted LP lost feasibility");
  }
  return {sol.head(n), sol[n]};
}

}  // namespace

MarginSolution max_margin(const Matrix& normals, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  if (normals.rows() > 0 && normals.cols() != dim) throw InvalidArgument("max_margin: normal dimension mismatch");

  const Eigen::Index batch = std::max<Eigen::Index>(2 * (dim + 1), 8);
  std::vector<Eigen::Index> active;
  std::vector<bool> in_active(static_cast<std::size_t>(normals.rows()), false);

  while (true) {
    auto [c, eps] = solve_restricted(normals, active, dim);
    const Vector slack = normals * c - Vector::Constant(normals.rows(), eps);

    std::vector<Eigen::Index> violated;
    for (Eigen::Index k = 0; k < slack.size(); ++k) {
      if (!in_active[static_cast<std::size_t>(k)] && slack[k] < -kViolation) violated.push_back(k);
    }
    if (violated.empty()) {
      MarginSolution out;
      out.support = static_cast<std::size_t>((slack.array() <= kSupport).count());
      out.c = std::move(c);
      out.margin = std::max(eps, 0.0);
      return out;
    }
    const auto take = std::min<Eigen::Index>(batch, static_cast<Eigen::Index>(violated.size()));
    std::partial_sort(violated.begin(), violated.begin() + take, violated.end(), [&](Eigen::Index lhs, Eigen::Index rhs) {
      return slack[lhs] < slack[rhs] || (slack[lhs] == slack[rhs] && lhs < rhs);
    });
    for (Eigen::Index i = 0; i < take; ++i) {
      active.push_back(violated[static_cast<std::size_t>(i)]);
      in_active[static_cast<std::size_t>(violated[static_cast<std::size_t>(i)])] = true;
    }
  }
}

namespace {

PreferenceEstimate to_estimate(const MarginSolution& sol) {
  Vector c = sol.c.cwiseMax(0.0);
  return PreferenceEstimate{UnitPreference::normalized(c), sol.margin, sol.support};
}

}  // namespace

PreferenceEstimate estimate_from_cuts(const CutSet& state) {
  if (state.empty()) return PreferenceEstimate{UnitPreference::uniform(state.n()), 0.0, 0};
  const MarginSolution sol = max_margin(state.normals(), state.n());
  if (sol.margin < tol::kMargin) {
    throw InfeasibleConeError("estimate_from_cuts: preference cone has no interior");
  }
  return to_estimate(sol);
}

EstimateUpdate update_estimate(const CutSet& state, const Observation& obs) {
  if (obs.inst.n() != state.n()) throw InvalidArgument("update_estimate: observation dimension mismatch");
  if (obs.label == Label::kBad) return EstimateUpdate{state, estimate_from_cuts(state)};

  CutSet next = state;
  next.push(obs.k, cuts_from_observation(obs));
  if (next.empty()) return EstimateUpdate{next, PreferenceEstimate{UnitPreference::uniform(next.n()), 0.0, 0}};

  MarginSolution sol = max_margin(next.normals(), next.n());
  while (sol.margin < tol::kMargin && next.observation_count() > 1) {
    next.pop_oldest();
    if (next.empty()) break;
    sol = max_margin(next.normals(), next.n());
  }
  if (next.empty()) return EstimateUpdate{next, PreferenceEstimate{UnitPreference::uniform(next.n()), 0.0, 0}};
  if (sol.margin < tol::kMargin) return EstimateUpdate{state, estimate_from_cuts(state)};
  return EstimateUpdate{next, to_estimate(sol)};
}

}  // namespace prefadapt
