#include "nsgap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nsgap/error.hpp"

namespace nsgap {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, ErrorCode::DimensionMismatch, "ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, ErrorCode::DimensionMismatch,
          "matrix sum shape");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require(rows_ == other.rows_ && cols_ == other.cols_, ErrorCode::DimensionMismatch,
          "matrix difference shape");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorCode::DimensionMismatch, "matrix product shape");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  require(a.cols() == x.size(), ErrorCode::DimensionMismatch, "matrix-vector shape");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix matrix_power(const Matrix& a, unsigned exponent) {
  require(a.square(), ErrorCode::DimensionMismatch, "power of a non-square matrix");
  Matrix result = Matrix::identity(a.rows());
  Matrix base = a;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

double frobenius_norm(const Matrix& a) { return norm2(a.data()); }

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::DimensionMismatch,
          "matrix comparison shape");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

double trace(const Matrix& a) {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

double inner(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::DimensionMismatch,
          "inner product shape");
  return dot(a.data(), b.data());
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

SymmetricEigen jacobi_eigen(const Matrix& input, double tol, int max_sweeps) {
  require(input.square(), ErrorCode::DimensionMismatch, "eigen-decomposition of non-square matrix");
  const std::size_t n = input.rows();
  Matrix a = input;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (input(i, j) + input(j, i));
  Matrix v = Matrix::identity(n);

  const double scale = frobenius_norm(a);
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep <= max_sweeps; ++sweep) {
    if (off_norm() <= tol * scale) break;
    if (sweep == max_sweeps) fail(ErrorCode::NoConvergence, "Jacobi sweep limit reached");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation would not change the diagonal at working precision.
        if (std::abs(apq) < 1e-300 ||
            (sweep > 3 && std::abs(apq) * 1e17 < std::abs(a(p, p)) &&
             std::abs(apq) * 1e17 < std::abs(a(q, q)))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  out.sweeps = sweep;
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::optional<Vector> least_squares(const Matrix& input, std::span<const double> rhs,
                                    double rank_tol) {
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  require(m >= n, ErrorCode::DimensionMismatch, "least squares needs rows >= cols");
  require(rhs.size() == m, ErrorCode::DimensionMismatch, "least squares right-hand side");
  Matrix a = input;
  Vector b(rhs.begin(), rhs.end());
  Vector diag(n);

  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i) norm += a(i, k) * a(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      diag[k] = 0.0;
      continue;
    }
    const double alpha = a(k, k) > 0.0 ? -norm : norm;
    // Householder vector stored in column k below (and at) the diagonal.
    a(k, k) -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) vnorm2 += a(i, k) * a(i, k);
    if (vnorm2 > 0.0) {
      for (std::size_t j = k + 1; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < m; ++i) s += a(i, k) * a(i, j);
        s *= 2.0 / vnorm2;
        for (std::size_t i = k; i < m; ++i) a(i, j) -= s * a(i, k);
      }
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += a(i, k) * b[i];
      s *= 2.0 / vnorm2;
      for (std::size_t i = k; i < m; ++i) b[i] -= s * a(i, k);
    }
    diag[k] = alpha;
  }

  double max_diag = 0.0;
  for (double d : diag) max_diag = std::max(max_diag, std::abs(d));
  if (max_diag == 0.0) return std::nullopt;
  for (double d : diag)
    if (std::abs(d) <= rank_tol * max_diag) return std::nullopt;

  Vector x(n);
  for (std::size_t kk = n; kk-- > 0;) {
    double s = b[kk];
    for (std::size_t j = kk + 1; j < n; ++j) s -= a(kk, j) * x[j];
    x[kk] = s / diag[kk];
  }
  return x;
}

std::optional<Matrix> cholesky(const Matrix& a) {
  require(a.square(), ErrorCode::DimensionMismatch, "Cholesky of non-square matrix");
  const std::size_t n = a.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return std::nullopt;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

std::optional<Matrix> spd_inverse(const Matrix& a) {
  auto factor = cholesky(a);
  if (!factor) return std::nullopt;
  const Matrix& l = *factor;
  const std::size_t n = a.rows();
  Matrix inv(n, n);
  Vector col(n);
  for (std::size_t c = 0; c < n; ++c) {
    // Solve L y = e_c, then L^T x = y.
    for (std::size_t i = 0; i < n; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * col[k];
      col[i] = s / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = col[i];
      for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * inv(k, c);
      inv(i, c) = s / l(i, i);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) inv(i, j) = inv(j, i) = 0.5 * (inv(i, j) + inv(j, i));
  return inv;
}

}  // namespace nsgap
