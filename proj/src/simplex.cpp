#include "simplex.hpp"

#include "prefadapt/errors.hpp"
#include "prefadapt/tolerances.hpp"

#include <limits>

namespace prefadapt::detail {

namespace {
constexpr int kMaxPivots = 200000;
constexpr double kRatioTie = 1e-12;
}  // namespace

Dictionary::Dictionary(const Matrix& a, const Vector& b)
    : n_(a.cols()), m_(a.rows()), t_(a), rhs_(b), locked_(static_cast<std::size_t>(n_ + m_), false) {
  basic_.reserve(static_cast<std::size_t>(m_));
  nonbasic_.reserve(static_cast<std::size_t>(n_));
  for (Eigen::Index i = 0; i < m_; ++i) basic_.push_back(n_ + i);
  for (Eigen::Index j = 0; j < n_; ++j) nonbasic_.push_back(j);
}

Vector Dictionary::reduced_costs(const Vector& objective) const {
  Vector basic_weights(m_);
  for (Eigen::Index i = 0; i < m_; ++i) basic_weights[i] = objective[basic_[i]];
  Vector d = -(t_.transpose() * basic_weights);
  for (Eigen::Index j = 0; j < n_; ++j) d[j] += objective[nonbasic_[j]];
  return d;
}

void Dictionary::pivot(Eigen::Index row, Eigen::Index col) {
  const double p = t_(row, col);
  t_.row(row) /= p;
  t_(row, col) = 1.0 / p;
  rhs_[row] /= p;
  for (Eigen::Index i = 0; i < m_; ++i) {
    if (i == row) continue;
    const double f = t_(i, col);
    if (f == 0.0) continue;
    t_.row(i) -= f * t_.row(row);
    t_(i, col) = -f / p;
    rhs_[i] -= f * rhs_[row];
    if (rhs_[i] < 0.0 && rhs_[i] > -tol::kPivot) rhs_[i] = 0.0;
  }
  std::swap(basic_[static_cast<std::size_t>(row)], nonbasic_[static_cast<std::size_t>(col)]);
}

bool Dictionary::maximize(const Vector& objective) {
  for (int iter = 0; iter < kMaxPivots; ++iter) {
    const Vector d = reduced_costs(objective);

    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (locked_[nonbasic_[j]] || d[j] <= tol::kPivot) continue;
      if (entering < 0 || nonbasic_[j] < nonbasic_[entering]) entering = j;
    }
    if (entering < 0) return true;

    Eigen::Index leaving = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m_; ++i) {
      const double coeff = t_(i, entering);
      if (coeff <= tol::kPivot) continue;
      const double ratio = rhs_[i] / coeff;
      if (ratio < best - kRatioTie) {
        best = ratio;
        leaving = i;
      } else if (ratio <= best + kRatioTie) {
        // Among tied rows take the largest pivot; degenerate margin LPs
        // otherwise pivot on near-zero entries and lose the tableau.
        const double held = t_(leaving, entering);
        if (coeff > held || (coeff == held && basic_[i] < basic_[leaving])) leaving = i;
      }
    }
    if (leaving < 0) return false;
    pivot(leaving, entering);
  }
  throw InternalError("simplex exceeded the pivot limit");
}

void Dictionary::lock_worsening(const Vector& objective) {
  const Vector d = reduced_costs(objective);
  for (Eigen::Index j = 0; j < n_; ++j) {
    if (d[j] < -tol::kPivot) locked_[nonbasic_[j]] = true;
  }
}

Vector Dictionary::structural_values() const {
  Vector x = Vector::Zero(n_);
  for (Eigen::Index i = 0; i < m_; ++i) {
    if (basic_[i] < n_) x[basic_[i]] = rhs_[i] > 0.0 ? rhs_[i] : 0.0;
  }
  return x;
}

}  // namespace prefadapt::detail
