#pragma once

#include <span>

#include "nsgap/linalg.hpp"

namespace nsgap {

// Hilbertian norm ||y||_Q = sqrt(y^T Q y) for a symmetric positive definite Q.
class EllipsoidNorm {
 public:
  explicit EllipsoidNorm(Matrix form);
  static EllipsoidNorm euclidean(std::size_t dim);

  std::size_t dim() const noexcept { return form_.rows(); }
  const Matrix& form() const noexcept { return form_; }
  const Matrix& inverse_form() const noexcept { return inverse_; }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

  double norm(std::span<const double> y) const;
  // Norm of the dual functional: sqrt(g^T Q^{-1} g).
  double dual_norm(std::span<const double> g) const;

  // The norm multiplied by `factor` (form scaled by factor^2).
  EllipsoidNorm scaled(double factor) const;

 private:
  Matrix form_;
  Matrix inverse_;
  double min_eigenvalue_ = 0.0;
};

}  // namespace nsgap
