#pragma once

// Forward allocation LP: maximize c.x subject to A x <= a0, x >= 0.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace prefadapt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// An allocation problem with variable bounds already folded into the rows.
///
/// Invariants (checked on construction): every entry of `a` is finite and
/// nonnegative, every entry of `a0` is finite and nonnegative (the origin is
/// feasible), and every column of `a` has a strictly positive entry, which
/// together make the polytope {x >= 0, a x <= a0} bounded.
class LpInstance {
 public:
  /// Throws InvalidArgument when an invariant does not hold.
  LpInstance(Matrix a, Vector a0);

  const Matrix& a() const noexcept { return a_; }
  const Vector& a0() const noexcept { return a0_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(a_.cols()); }
  std::size_t m() const noexcept { return static_cast<std::size_t>(a_.rows()); }

  /// The same instance with rows listed in `order` (a permutation of 0..m-1).
  LpInstance permuted_rows(const std::vector<std::size_t>& order) const;

 private:
  Matrix a_;
  Vector a0_;
};

/// Objective coefficients: nonnegative, unit Euclidean length, no constant term.
class UnitPreference {
 public:
  /// Accepts `c` as is; throws InvalidArgument unless c >= 0 and |c| = 1
  /// within tol::kUnitNorm.
  explicit UnitPreference(Vector c);

  /// Rescales a raw nonnegative, nonzero vector to unit length.
  static UnitPreference normalized(const Vector& raw);

  /// (1/sqrt(n), ..., 1/sqrt(n)).
  static UnitPreference uniform(std::size_t n);

  const Vector& c() const noexcept { return c_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(c_.size()); }

  friend bool operator==(const UnitPreference& lhs, const UnitPreference& rhs) {
    return lhs.c_ == rhs.c_;
  }

 private:
  Vector c_;
};

/// A basic feasible point. Constraint indices in `active_set` run over the
/// instance rows 0..m-1 followed by the nonnegativity bounds m..m+n-1.
struct Vertex {
  Vector x;
  std::vector<std::size_t> active_set;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  Vertex vertex;
  double value = 0.0;
  LpStatus status = LpStatus::kOptimal;
};

/// Folds the bounds 0 <= x <= b into the resource rows: appends e_i.x <= b_i
/// for every variable. `a_raw` may have zero rows.
LpInstance canonicalize(const Matrix& a_raw, const Vector& a0_raw, const Vector& b);

/// Maximizes `pref` over the instance with a Bland-rule dense tableau simplex.
/// Among several optimal vertices the lexicographically smallest x is
/// returned, so the result does not depend on row order. Throws
/// InternalError if the solver reports unbounded or infeasible.
LpSolution solve_lp(const LpInstance& inst, const UnitPreference& pref);

/// Same as above for an arbitrary nonnegative weight vector (no unit-norm
/// requirement). The argmax is invariant to positive scaling of `weights`.
LpSolution solve_lp(const LpInstance& inst, const Vector& weights);

/// Maximum instance size accepted by enumerate_vertices.
inline constexpr std::size_t kMaxEnumerationVars = 12;
inline constexpr std::size_t kMaxEnumerationHyperplanes = 28;

/// Every vertex of the feasible polytope exactly once, found by solving each
/// n-subset of the m+n bounding hyperplanes. Sorted lexicographically by x.
/// Throws DimensionLimitError when n > 12 or m + n > 28.
std::vector<Vertex> enumerate_vertices(const LpInstance& inst);

/// L(x) = c.x. Throws InvalidArgument on a length mismatch.
double objective_value(const UnitPreference& pref, const Vector& x);

/// Indices of constraints tight at `x` within tol::kVertex.
std::vector<std::size_t> active_constraints(const LpInstance& inst, const Vector& x);

/// True when x >= 0 and a x <= a0 within tol::kVertex.
bool is_feasible(const LpInstance& inst, const Vector& x);

/// Max-norm identity within tol::kVertex.
bool same_point(const Vector& lhs, const Vector& rhs);

}  // namespace prefadapt
