#include "prefadapt/lp.hpp"

#include "prefadapt/errors.hpp"
#include "prefadapt/tolerances.hpp"
#include "simplex.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <string>

namespace prefadapt {

LpInstance::LpInstance(Matrix a, Vector a0) : a_(std::move(a)), a0_(std::move(a0)) {
  if (a_.rows() != a0_.size()) {
    throw InvalidArgument("LpInstance: a has " + std::to_string(a_.rows()) + " rows but a0 has " +
                          std::to_string(a0_.size()) + " entries");
  }
  if (a_.cols() == 0) throw InvalidArgument("LpInstance: no variables");
  if (!a_.allFinite() || !a0_.allFinite()) throw InvalidArgument("LpInstance: non-finite entry");
  if ((a_.array() < 0.0).any()) throw InvalidArgument("LpInstance: negative resource demand");
  if ((a0_.array() < 0.0).any()) {
    throw InvalidArgument("LpInstance: negative availability makes the origin infeasible");
  }
  for (Eigen::Index j = 0; j < a_.cols(); ++j) {
    if (!(a_.col(j).array() > 0.0).any()) {
      throw InvalidArgument("LpInstance: variable " + std::to_string(j) + " is unbounded");
    }
  }
}

LpInstance LpInstance::permuted_rows(const std::vector<std::size_t>& order) const {
  if (order.size() != m()) throw InvalidArgument("permuted_rows: order length mismatch");
  Matrix a(a_.rows(), a_.cols());
  Vector a0(a0_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) = a_.row(static_cast<Eigen::Index>(order[i]));
    a0[static_cast<Eigen::Index>(i)] = a0_[static_cast<Eigen::Index>(order[i])];
  }
  return LpInstance(std::move(a), std::move(a0));
}

UnitPreference::UnitPreference(Vector c) : c_(std::move(c)) {
  if (c_.size() == 0) throw InvalidArgument("UnitPreference: empty vector");
  if (!c_.allFinite()) throw InvalidArgument("UnitPreference: non-finite component");
  if ((c_.array() < 0.0).any()) throw InvalidArgument("UnitPreference: negative component");
  if (std::abs(c_.norm() - 1.0) > tol::kUnitNorm) {
    throw InvalidArgument("UnitPreference: norm is not 1");
  }
}

UnitPreference UnitPreference::normalized(const Vector& raw) {
  if (raw.size() == 0) throw InvalidArgument("UnitPreference: empty vector");
  if (!raw.allFinite()) throw InvalidArgument("UnitPreference: non-finite component");
  if ((raw.array() < 0.0).any()) throw InvalidArgument("UnitPreference: negative component");
  const double norm = raw.norm();
  if (norm == 0.0) throw InvalidArgument("UnitPreference: all components are zero");
  // Leave already-unit vectors bit-identical so normalization is idempotent.
  if (std::abs(norm - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) return UnitPreference(raw);
  return UnitPreference(raw / norm);
}

UnitPreference UnitPreference::uniform(std::size_t n) {
  if (n == 0) throw InvalidArgument("UnitPreference: empty vector");
  return UnitPreference(Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(static_cast<double>(n))));
}

LpInstance canonicalize(const Matrix& a_raw, const Vector& a0_raw, const Vector& b) {
  const Eigen::Index n = b.size();
  if (n == 0) throw InvalidArgument("canonicalize: no variables");
  if (a_raw.rows() != a0_raw.size()) throw InvalidArgument("canonicalize: a_raw and a0_raw disagree");
  if (a_raw.rows() > 0 && a_raw.cols() != n) throw InvalidArgument("canonicalize: a_raw and b disagree");
  if (!b.allFinite() || (b.array() < 0.0).any()) {
    throw InvalidArgument("canonicalize: bounds must be finite and nonnegative");
  }
  if ((a0_raw.array() < 0.0).any()) {
    throw InvalidArgument("canonicalize: negative availability makes the origin infeasible");
  }

  const Eigen::Index m_raw = a_raw.rows();
  Matrix a(m_raw + n, n);
  Vector a0(m_raw + n);
  if (m_raw > 0) {
    a.topRows(m_raw) = a_raw;
    a0.head(m_raw) = a0_raw;
  }
  a.bottomRows(n) = Matrix::Identity(n, n);
  a0.tail(n) = b;
  return LpInstance(std::move(a), std::move(a0));
}

namespace {

LpSolution make_solution(const LpInstance& inst, const Vector& weights, Vector x) {
  LpSolution sol;
  sol.value = weights.dot(x);
  sol.vertex.active_set = active_constraints(inst, x);
  sol.vertex.x = std::move(x);
  sol.status = LpStatus::kOptimal;
  return sol;
}

}  // namespace

LpSolution solve_lp(const LpInstance& inst, const Vector& weights) {
  const auto n = static_cast<Eigen::Index>(inst.n());
  const auto m = static_cast<Eigen::Index>(inst.m());
  if (weights.size() != n) throw InvalidArgument("solve_lp: weight length mismatch");

  detail::Dictionary dict(inst.a(), inst.a0());
  Vector objective = Vector::Zero(n + m);
  objective.head(n) = weights;
  if (!dict.maximize(objective)) throw InternalError("solve_lp: unbounded despite bounded instance");
  dict.lock_worsening(objective);

  // Walk the optimal face toward the lexicographically smallest point.
  for (Eigen::Index s = 0; s < n; ++s) {
    Vector minimize_coord = Vector::Zero(n + m);
    minimize_coord[s] = -1.0;
    if (!dict.maximize(minimize_coord)) throw InternalError("solve_lp: unbounded tie-break stage");
    dict.lock_worsening(minimize_coord);
  }

  Vector x = dict.structural_values();
  if (!is_feasible(inst, x)) throw InternalError("solve_lp: solution is infeasible");
  return make_solution(inst, weights, std::move(x));
}

LpSolution solve_lp(const LpInstance& inst, const UnitPreference& pref) {
  return solve_lp(inst, pref.c());
}

bool is_feasible(const LpInstance& inst, const Vector& x) {
  if (x.size() != static_cast<Eigen::Index>(inst.n())) return false;
  if ((x.array() < -tol::kVertex).any()) return false;
  return ((inst.a() * x - inst.a0()).array() <= tol::kVertex).all();
}

std::vector<std::size_t> active_constraints(const LpInstance& inst, const Vector& x) {
  std::vector<std::size_t> active;
  const Vector slack = inst.a0() - inst.a() * x;
  for (Eigen::Index i = 0; i < slack.size(); ++i) {
    if (std::abs(slack[i]) <= tol::kVertex) active.push_back(static_cast<std::size_t>(i));
  }
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (std::abs(x[j]) <= tol::kVertex) active.push_back(inst.m() + static_cast<std::size_t>(j));
  }
  return active;
}

bool same_point(const Vector& lhs, const Vector& rhs) {
  return lhs.size() == rhs.size() && (lhs - rhs).cwiseAbs().maxCoeff() <= tol::kVertex;
}

std::vector<Vertex> enumerate_vertices(const LpInstance& inst) {
  const std::size_t n = inst.n();
  const std::size_t m = inst.m();
  if (n > kMaxEnumerationVars || m + n > kMaxEnumerationHyperplanes) {
    throw DimensionLimitError("enumerate_vertices: n = " + std::to_string(n) + ", m + n = " +
                              std::to_string(m + n) + " exceeds the enumeration limit");
  }

  using Small = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxEnumerationVars, kMaxEnumerationVars>;
  using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxEnumerationVars, 1>;

  const std::size_t planes = m + n;
  Matrix normals = Matrix::Zero(static_cast<Eigen::Index>(planes), static_cast<Eigen::Index>(n));
  Vector offsets = Vector::Zero(static_cast<Eigen::Index>(planes));
  normals.topRows(static_cast<Eigen::Index>(m)) = inst.a();
  offsets.head(static_cast<Eigen::Index>(m)) = inst.a0();
  normals.bottomRows(static_cast<Eigen::Index>(n)).setIdentity();

  std::vector<Vector> points;
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);

  Small sys(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  SmallVec rhs(static_cast<Eigen::Index>(n));
  while (true) {
    for (std::size_t r = 0; r < n; ++r) {
      sys.row(static_cast<Eigen::Index>(r)) = normals.row(static_cast<Eigen::Index>(pick[r]));
      rhs[static_cast<Eigen::Index>(r)] = offsets[static_cast<Eigen::Index>(pick[r])];
    }
    Eigen::FullPivLU<Small> lu(sys);
    lu.setThreshold(1e-10);
    if (lu.isInvertible()) {
      Vector x = lu.solve(rhs);
      if (is_feasible(inst, x)) {
        const bool seen = std::any_of(points.begin(), points.end(),
                                      [&](const Vector& p) { return same_point(p, x); });
        if (!seen) points.push_back(std::move(x));
      }
    }

    // Next n-combination of 0..planes-1 in lexicographic order.
    std::size_t k = n;
    while (k > 0 && pick[k - 1] == planes - n + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t r = k; r < n; ++r) pick[r] = pick[r - 1] + 1;
  }

  std::sort(points.begin(), points.end(), [](const Vector& lhs, const Vector& rhs) {
    return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
  });

  std::vector<Vertex> vertices;
  vertices.reserve(points.size());
  for (auto& p : points) {
    // Snap roundoff so that bounds read as exact zeros.
    for (auto& v : p) {
      if (std::abs(v) < 1e-12) v = 0.0;
    }
    auto active = active_constraints(inst, p);
    vertices.push_back(Vertex{std::move(p), std::move(active)});
  }
  return vertices;
}

double objective_value(const UnitPreference& pref, const Vector& x) {
  if (pref.c().size() != x.size()) throw InvalidArgument("objective_value: length mismatch");
  return pref.c().dot(x);
}

}  // namespace prefadapt
