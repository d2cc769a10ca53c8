#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace nsgap {

using Vector = std::vector<double>;

// Dense row-major matrix. Sizes in this project are desk scale (n <= a few
// thousand), so no expression templates or blocking.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix diagonal(std::span<const double> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector column(std::size_t j) const;

  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<std::vector<double>> to_rows() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

Matrix transpose(const Matrix& a);
Matrix matrix_power(const Matrix& a, unsigned exponent);
double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double trace(const Matrix& a);
// Frobenius inner product.
double inner(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

// Eigen-decomposition of a symmetric matrix. Values sorted descending;
// column k of `vectors` is the unit eigenvector for values[k].
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
  int sweeps = 0;
};

// Cyclic Jacobi rotations. Converged when the off-diagonal Frobenius norm
// falls below tol * ||a||_F. Throws NoConvergence after max_sweeps.
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-13, int max_sweeps = 100);

// Least-squares solution of a x = b (rows >= cols) by Householder QR.
// Returns nullopt when a is numerically rank deficient, i.e. some |R_kk|
// is below rank_tol * max_k |R_kk|.
std::optional<Vector> least_squares(const Matrix& a, std::span<const double> b,
                                    double rank_tol = 1e-10);

// Lower Cholesky factor of a symmetric positive definite matrix, or nullopt.
std::optional<Matrix> cholesky(const Matrix& a);
// Inverse of a symmetric positive definite matrix via its Cholesky factor.
std::optional<Matrix> spd_inverse(const Matrix& a);

}  // namespace nsgap
