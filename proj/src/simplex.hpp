#pragma once

// Dense condensed-tableau simplex shared by the forward solver and the
// max-margin estimator. Internal to the library.

#include "prefadapt/lp.hpp"

#include <vector>

namespace prefadapt::detail {

/// Dictionary for max obj.x subject to A x <= b, x >= 0 with b >= 0, so the
/// all-slack basis is feasible and no phase one is needed.
///
/// Variables 0..n-1 are structural, n..n+m-1 are the row slacks. Each basic
/// variable satisfies x_B[i] = rhs[i] - sum_j t(i, j) x_N[j].
class Dictionary {
 public:
  Dictionary(const Matrix& a, const Vector& b);

  /// Bland's rule for the entering column (lowest improving index). The
  /// leaving row has the minimum ratio; ties go to the largest pivot, then
  /// to the lowest basic index. `objective` has one
  /// weight per variable (structural then slack). Returns false when the
  /// objective is unbounded.
  bool maximize(const Vector& objective);

  /// Freezes at zero every nonbasic column whose reduced cost for
  /// `objective` is strictly negative. Afterwards only points that are
  /// optimal for `objective` remain reachable.
  void lock_worsening(const Vector& objective);

  /// Values of the structural variables at the current basis.
  Vector structural_values() const;

  Eigen::Index num_structural() const noexcept { return n_; }
  Eigen::Index num_rows() const noexcept { return m_; }

 private:
  Vector reduced_costs(const Vector& objective) const;
  void pivot(Eigen::Index row, Eigen::Index col);

  Eigen::Index n_;
  Eigen::Index m_;
  Matrix t_;
  Vector rhs_;
  std::vector<Eigen::Index> basic_;
  std::vector<Eigen::Index> nonbasic_;
  std::vector<bool> locked_;  // by variable index
};

}  // namespace prefadapt::detail
