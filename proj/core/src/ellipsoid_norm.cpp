#include "nsgap/ellipsoid_norm.hpp"

#include <algorithm>
#include <cmath>

#include "nsgap/error.hpp"

namespace nsgap {

EllipsoidNorm::EllipsoidNorm(Matrix form) : form_(std::move(form)) {
  require(form_.square() && form_.rows() > 0, ErrorCode::DimensionMismatch,
          "ellipsoid form must be a non-empty square matrix");
  const std::size_t d = form_.rows();
  const double scale = std::max(1.0, max_abs(form_));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      require(std::abs(form_(i, j) - form_(j, i)) <= 1e-12 * scale, ErrorCode::InvalidArgument,
              "ellipsoid form is not symmetric");
      form_(i, j) = form_(j, i) = 0.5 * (form_(i, j) + form_(j, i));
    }
  min_eigenvalue_ = jacobi_eigen(form_).values.back();
  require(min_eigenvalue_ > 0.0, ErrorCode::InvalidArgument, "ellipsoid form is not positive definite");
  auto inv = spd_inverse(form_);
  require(inv.has_value(), ErrorCode::InvalidArgument, "ellipsoid form is not positive definite");
  inverse_ = std::move(*inv);
}

EllipsoidNorm EllipsoidNorm::euclidean(std::size_t dim) { return EllipsoidNorm(Matrix::identity(dim)); }

double EllipsoidNorm::norm(std::span<const double> y) const {
  require(y.size() == dim(), ErrorCode::DimensionMismatch, "ellipsoid norm argument");
  return std::sqrt(std::max(0.0, dot(y, form_ * y)));
}

double EllipsoidNorm::dual_norm(std::span<const double> g) const {
  require(g.size() == dim(), ErrorCode::DimensionMismatch, "ellipsoid dual norm argument");
  return std::sqrt(std::max(0.0, dot(g, inverse_ * g)));
}

EllipsoidNorm EllipsoidNorm::scaled(double factor) const {
  require(factor > 0.0, ErrorCode::InvalidArgument, "ellipsoid scale must be positive");
  return EllipsoidNorm((factor * factor) * form_);
}

}  // namespace nsgap
