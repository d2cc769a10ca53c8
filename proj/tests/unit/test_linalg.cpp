#include <doctest.h>

#include <cmath>

#include "nsgap/detail/simplex.hpp"
#include "nsgap/ellipsoid_norm.hpp"
#include "nsgap/linalg.hpp"
#include "nsgap/random.hpp"
#include "oracles.hpp"

using namespace nsgap;

namespace {

Matrix random_symmetric(std::size_t n, Rng& rng) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rng.normal();
  return m;
}

}  // namespace

TEST_CASE("jacobi eigenvalues agree with an independent solver") {
  Rng rng(11);
  for (std::size_t n : {1, 2, 5, 12, 30}) {
    const Matrix m = random_symmetric(n, rng);
    const auto eig = jacobi_eigen(m);
    const auto ref = oracle::symmetric_spectrum(m);
    for (std::size_t k = 0; k < n; ++k) CHECK(eig.values[k] == doctest::Approx(ref[k]).epsilon(1e-10));
    // A V = V diag(values), V orthogonal.
    const Matrix av = m * eig.vectors;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(av(i, k) - eig.vectors(i, k) * eig.values[k]) < 1e-10);
    CHECK(max_abs_diff(transpose(eig.vectors) * eig.vectors, Matrix::identity(n)) < 1e-12);
  }
}

TEST_CASE("matrix power, transpose and products") {
  const Matrix a = Matrix::from_rows({{0, 1}, {1, 1}});
  const Matrix f = matrix_power(a, 10);
  CHECK(f(0, 1) == 55.0);  // Fibonacci
  CHECK(f(1, 1) == 89.0);
  CHECK(matrix_power(a, 1) == a);
  CHECK(transpose(Matrix::from_rows({{1, 2, 3}}))(2, 0) == 3.0);
  CHECK(trace(Matrix::identity(4)) == 4.0);
  CHECK(inner(a, a) == doctest::Approx(3.0));
}

TEST_CASE("least squares solves consistent systems and flags rank deficiency") {
  const Matrix a = Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}});
  const Vector b{1, 2, 3};
  const auto x = least_squares(a, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == doctest::Approx(1.0));
  CHECK((*x)[1] == doctest::Approx(2.0));
  CHECK_FALSE(least_squares(Matrix::from_rows({{1, 1}, {2, 2}}), Vector{1, 2}).has_value());
}

TEST_CASE("cholesky and spd inverse") {
  const Matrix a = Matrix::from_rows({{4, 2}, {2, 3}});
  const auto l = cholesky(a);
  REQUIRE(l.has_value());
  CHECK(max_abs_diff(*l * transpose(*l), a) < 1e-14);
  const auto inv = spd_inverse(a);
  REQUIRE(inv.has_value());
  CHECK(max_abs_diff(a * *inv, Matrix::identity(2)) < 1e-14);
  CHECK_FALSE(cholesky(Matrix::from_rows({{1, 2}, {2, 1}})).has_value());
}

TEST_CASE("simplex solves a small LP with matching dual") {
  // min -x - y  s.t.  x + 2y + s1 = 4,  3x + y + s2 = 6.
  const Matrix a = Matrix::from_rows({{1, 2, 1, 0}, {3, 1, 0, 1}});
  const Vector b{4, 6};
  const Vector c{-1, -1, 0, 0};
  const auto r = detail::solve_standard_lp(a, b, c);
  REQUIRE(r.status == detail::LpStatus::optimal);
  CHECK(r.value == doctest::Approx(-2.8));
  CHECK(dot(r.dual, b) == doctest::Approx(r.value));

  const auto infeasible = detail::solve_standard_lp(Matrix::from_rows({{1, 1}}), Vector{-1}, Vector{1, 1});
  CHECK(infeasible.status == detail::LpStatus::infeasible);
  const auto unbounded = detail::solve_standard_lp(Matrix::from_rows({{1, -1}}), Vector{0}, Vector{-1, 0});
  CHECK(unbounded.status == detail::LpStatus::unbounded);
}

TEST_CASE("ellipsoid norm and its dual") {
  const EllipsoidNorm h(Matrix::from_rows({{4, 0}, {0, 1}}));
  CHECK(h.norm(Vector{1, 0}) == doctest::Approx(2.0));
  CHECK(h.dual_norm(Vector{1, 0}) == doctest::Approx(0.5));
  CHECK(h.scaled(3.0).norm(Vector{0, 1}) == doctest::Approx(3.0));
  CHECK(h.min_eigenvalue() == doctest::Approx(1.0));
}

TEST_CASE("rng streams are deterministic and independent of call order") {
  Rng a(5);
  Rng b(5);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  const Rng root(9);
  Rng s1 = root.split(1);
  Rng s2 = root.split(2);
  Rng s1_again = root.split(1);
  CHECK(s1() == s1_again());
  CHECK(s1() != s2());
  Rng u(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
    CHECK(u.below(7) < 7);
  }
}
