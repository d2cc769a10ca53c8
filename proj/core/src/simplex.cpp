#include "nsgap/detail/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "nsgap/error.hpp"

namespace nsgap::detail {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;

class Tableau {
 public:
  Tableau(const Matrix& a, std::span<const double> b)
      : m_(a.rows()), n_(a.cols()), width_(n_ + m_ + 1), t_(m_, width_), sign_(m_, 1.0), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      sign_[i] = b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) t_(i, j) = sign_[i] * a(i, j);
      t_(i, n_ + i) = 1.0;
      t_(i, width_ - 1) = sign_[i] * b[i];
      basis_[i] = n_ + i;
    }
  }

  // Minimizes cost^T x over the current feasible basis. Columns flagged in
  // `barred` never enter. Returns false when unbounded.
  bool optimize(const std::vector<double>& cost, const std::vector<bool>& barred) {
    const std::size_t total = n_ + m_;
    std::vector<double> reduced(total);
    int degenerate_run = 0;
    for (std::size_t iter = 0; iter < 50000; ++iter) {
      for (std::size_t j = 0; j < total; ++j) {
        double r = cost[j];
        for (std::size_t i = 0; i < m_; ++i) r -= cost[basis_[i]] * t_(i, j);
        reduced[j] = r;
      }
      const bool bland = degenerate_run > 50;
      std::size_t enter = total;
      double best = -kCostTol;
      for (std::size_t j = 0; j < total; ++j) {
        if (barred[j] || reduced[j] >= -kCostTol) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (reduced[j] < best) {
          best = reduced[j];
          enter = j;
        }
      }
      if (enter == total) return true;

      std::size_t leave = m_;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double tij = t_(i, enter);
        if (tij <= kPivotTol) continue;
        const double r = t_(i, width_ - 1) / tij;
        if (r < ratio - 1e-14 || (std::abs(r - ratio) <= 1e-14 && leave < m_ && basis_[i] < basis_[leave])) {
          ratio = r;
          leave = i;
        }
      }
      if (leave == m_) return false;
      degenerate_run = ratio <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
    fail(ErrorCode::NoConvergence, "simplex iteration limit");
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = t_(row, col);
    for (std::size_t j = 0; j < width_; ++j) t_(row, j) /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) t_(i, j) -= f * t_(row, j);
    }
    basis_[row] = col;
  }

  // Pivots zero-level artificial variables out of the basis where possible.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(t_(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  double objective(const std::vector<double>& cost) const {
    double v = 0.0;
    for (std::size_t i = 0; i < m_; ++i) v += cost[basis_[i]] * t_(i, width_ - 1);
    return v;
  }

  Vector primal() const {
    Vector x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = t_(i, width_ - 1);
    return x;
  }

  // y^T = c_B^T B^{-1}, with B^{-1} read from the artificial columns.
  Vector dual(const std::vector<double>& cost) const {
    Vector y(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < m_; ++i) s += cost[basis_[i]] * t_(i, n_ + k);
      y[k] = sign_[k] * s;
    }
    return y;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  Matrix t_;
  std::vector<double> sign_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_standard_lp(const Matrix& a, std::span<const double> b, std::span<const double> c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  require(b.size() == m && c.size() == n, ErrorCode::DimensionMismatch, "LP shapes");

  Tableau tab(a, b);
  std::vector<double> phase1(n + m, 0.0);
  for (std::size_t k = 0; k < m; ++k) phase1[n + k] = 1.0;
  std::vector<bool> open(n + m, false);
  tab.optimize(phase1, open);

  double bscale = 1.0;
  for (double v : b) bscale = std::max(bscale, std::abs(v));
  LpResult result;
  if (tab.objective(phase1) > 1e-9 * bscale) {
    result.status = LpStatus::infeasible;
    return result;
  }
  tab.expel_artificials();

  std::vector<double> phase2(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  std::vector<bool> barred(n + m, false);
  for (std::size_t k = 0; k < m; ++k) barred[n + k] = true;
  if (!tab.optimize(phase2, barred)) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.value = tab.objective(phase2);
  result.primal = tab.primal();
  result.dual = tab.dual(phase2);
  return result;
}

}  // namespace nsgap::detail
