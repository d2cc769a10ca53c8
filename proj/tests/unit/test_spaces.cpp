#include <doctest.h>

#include <cmath>
#include <limits>

#include "nsgap/error.hpp"
#include "nsgap/john.hpp"
#include "nsgap/random.hpp"
#include "nsgap/spaces.hpp"

using namespace nsgap;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix cycle_metric(std::size_t n) {
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      d(i, j) = static_cast<double>(std::min(k, n - k));
    }
  return d;
}

Vector random_vector(std::size_t d, Rng& rng) {
  Vector v(d);
  for (double& x : v) x = rng.normal();
  return v;
}

}  // namespace

TEST_CASE("distance examples") {
  const Vector o{0, 0};
  const Vector b{3, 4};
  CHECK(MetricSpace::lp(kInf, 2).distance(o, b) == doctest::Approx(4.0));
  CHECK(MetricSpace::euclidean(2, 0.5).distance(o, b) == doctest::Approx(std::sqrt(5.0)));
  CHECK(MetricSpace::finite(cycle_metric(4)).distance(0, 2) == 2.0);
  CHECK(MetricSpace::lp(1, 2).distance(o, b) == doctest::Approx(7.0));
  CHECK(MetricSpace::lp(3, 2).distance(o, b) == doctest::Approx(std::cbrt(27.0 + 64.0)));
  CHECK_THROWS_AS(MetricSpace::euclidean(3).distance(o, b), Error);
}

TEST_CASE("finite metric validation") {
  CHECK_THROWS_AS(MetricSpace::finite(Matrix::from_rows({{0, 1}, {2, 0}})), Error);
  CHECK_THROWS_AS(MetricSpace::finite(Matrix::from_rows({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}})), Error);
  CHECK_THROWS_AS(MetricSpace::finite(Matrix::from_rows({{1, 1}, {1, 0}})), Error);
  CHECK_THROWS_AS(MetricSpace::finite(Matrix(513, 513)), Error);
  CHECK_THROWS_AS(MetricSpace::lp(2, 2, 0.0), Error);
  CHECK_THROWS_AS(MetricSpace::lp(2, 2, 1.5), Error);
}

TEST_CASE("snowflakes are metrics and monotone in theta") {
  Rng rng(3);
  const auto space = MetricSpace::lp(1, 3);
  for (int t = 0; t < 200; ++t) {
    const Vector a = random_vector(3, rng);
    const Vector b = random_vector(3, rng);
    const Vector c = random_vector(3, rng);
    const double theta = rng.uniform(0.05, 1.0);
    const auto snow = space.with_theta(theta);
    CHECK(snow.distance(a, c) <= snow.distance(a, b) + snow.distance(b, c) + 1e-12);
    const double base = space.distance(a, b);
    const double lower = rng.uniform(0.05, theta);
    if (base >= 1)
      CHECK(std::pow(base, lower) <= snow.distance(a, b) + 1e-12);
    else
      CHECK(std::pow(base, lower) >= snow.distance(a, b) - 1e-12);
  }
}

TEST_CASE("gauges are positively homogeneous") {
  Rng rng(6);
  std::vector<MetricSpace> spaces{MetricSpace::lp(1, 3), MetricSpace::lp(2.5, 3), MetricSpace::lp(kInf, 3),
                                  MetricSpace::polytope(cube_vertices(3)),
                                  MetricSpace::ellipsoid(EllipsoidNorm(Matrix::from_rows({{2, 1, 0}, {1, 2, 0}, {0, 0, 1}})))};
  const Vector zero(3, 0.0);
  for (const auto& s : spaces)
    for (int t = 0; t < 50; ++t) {
      Vector b = random_vector(3, rng);
      const double lambda = rng.uniform(-3.0, 3.0);
      Vector lb = b;
      for (double& x : lb) x *= lambda;
      CHECK(s.distance(zero, lb) == doctest::Approx(std::abs(lambda) * s.distance(zero, b)).epsilon(1e-12));
    }
}

TEST_CASE("polytope gauges match the closed-form norms") {
  Rng rng(12);
  const auto cube = MetricSpace::polytope(cube_vertices(3));
  const auto cross = MetricSpace::polytope(cross_polytope_vertices(3));
  const auto linf = MetricSpace::lp(kInf, 3);
  const auto l1 = MetricSpace::lp(1, 3);
  for (int t = 0; t < 100; ++t) {
    const Vector v = random_vector(3, rng);
    CHECK(cube.norm(v) == doctest::Approx(linf.norm(v)).epsilon(1e-9));
    CHECK(cross.norm(v) == doctest::Approx(l1.norm(v)).epsilon(1e-9));
  }
  // Negations are added and duplicates removed.
  CHECK(MetricSpace::polytope({Vector{1, 1}, Vector{1, -1}}).vertices().size() == 4);
  CHECK_THROWS_AS(MetricSpace::polytope({Vector{1, 1}, Vector{2, 2}}), Error);
}

TEST_CASE("subgradients and the unit-ball maximizer") {
  Rng rng(13);
  std::vector<MetricSpace> spaces{MetricSpace::lp(1, 4), MetricSpace::lp(3, 4), MetricSpace::lp(kInf, 4),
                                  MetricSpace::polytope(cross_polytope_vertices(4))};
  for (const auto& s : spaces)
    for (int t = 0; t < 30; ++t) {
      const Vector v = random_vector(4, rng);
      const Vector g = s.norm_subgradient(v);
      // <g, v> = |v| and <g, w> <= |w| for all w.
      CHECK(dot(g, v) == doctest::Approx(s.norm(v)).epsilon(1e-9));
      const Vector w = random_vector(4, rng);
      CHECK(dot(g, w) <= s.norm(w) + 1e-9);
      const Vector y = s.unit_ball_argmax(w);
      CHECK(s.norm(y) <= 1 + 1e-9);
      CHECK(dot(w, y) >= dot(w, g) / std::max(1.0, s.norm(g)) - 1e-9);
    }
}

TEST_CASE("product distance examples and triangle inequality") {
  const auto line = MetricSpace::euclidean(1);
  const Configuration x(line, Matrix::from_rows({{0}, {0}}));
  const Configuration y(line, Matrix::from_rows({{1}, {-1}}));
  CHECK(product_distance(Vector{.5, .5}, x, x, 2) == 0.0);
  CHECK(product_distance(Vector{.5, .5}, x, y, 2) == doctest::Approx(1.0));
  const Configuration z(line, Matrix::from_rows({{2}, {0}}));
  CHECK(product_distance(Vector{.25, .75}, x, z, 1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(product_distance(Vector{1.0}, x, y, 2), Error);

  Rng rng(14);
  const auto space = MetricSpace::lp(1.5, 2);
  const Vector pi{0.1, 0.2, 0.3, 0.4};
  for (int t = 0; t < 100; ++t) {
    auto draw = [&] {
      Matrix m(4, 2);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t c = 0; c < 2; ++c) m(i, c) = rng.normal();
      return Configuration(space, m);
    };
    const auto a = draw();
    const auto b = draw();
    const auto c = draw();
    const double p = rng.uniform(1.0, 4.0);
    CHECK(product_distance(pi, a, c, p) <= product_distance(pi, a, b, p) + product_distance(pi, b, c, p) + 1e-9);
  }
}

TEST_CASE("configurations") {
  const auto m = MetricSpace::finite(cycle_metric(4));
  const Configuration same(m, std::vector<std::size_t>{1, 1, 1});
  CHECK_FALSE(same.nonconstant());
  const Configuration two(m, std::vector<std::size_t>{0, 2, 2});
  CHECK(two.nonconstant());
  CHECK(two.distance(0, 1) == 2.0);
  CHECK(two.powered_distances(3)(0, 1) == 8.0);
  CHECK_THROWS_AS(Configuration(m, std::vector<std::size_t>{0, 4}), Error);
}

TEST_CASE("modulus check examples") {
  using Kind = ModulusMode::Kind;
  const auto hilbert = modulus_check(MetricSpace::euclidean(3), {Kind::convex, 2.0, 1.0}, 2000, 1);
  CHECK(hilbert.violations == 0);
  CHECK(hilbert.worst_ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(modulus_check(MetricSpace::lp(4, 3), {Kind::convex, 4.0, 1.0}, 10000, 2).violations == 0);
  CHECK(modulus_check(MetricSpace::lp(1, 2), {Kind::smooth, 1.0, 1.0}, 2000, 3).violations == 0);
  // l_1 is not 2-uniformly convex with constant 1.
  CHECK(modulus_check(MetricSpace::lp(1, 2), {Kind::convex, 2.0, 1.0}, 2000, 4).violations > 0);
  CHECK_THROWS_AS(modulus_check(MetricSpace::euclidean(2), {Kind::smooth, 3.0, 1.0}, 10, 1), Error);
  CHECK_THROWS_AS(modulus_check(MetricSpace::euclidean(2), {Kind::convex, 1.5, 1.0}, 10, 1), Error);
  CHECK_THROWS_AS(modulus_check(MetricSpace::finite(cycle_metric(3)), {Kind::convex, 2.0, 1.0}, 10, 1), Error);
}
