#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

#include "nsgap/embed.hpp"
#include "nsgap/error.hpp"
#include "nsgap/random.hpp"
#include "oracles.hpp"

using namespace nsgap;

namespace {

Matrix cycle_metric(std::size_t n) {
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = i > j ? i - j : j - i;
      d(i, j) = static_cast<double>(std::min(k, n - k));
    }
  return d;
}

Vector uniform(std::size_t n) { return Vector(n, 1.0 / static_cast<double>(n)); }

StochasticChain cycle_chain(std::size_t n) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, (i + 1) % n) = a(i, (i + n - 1) % n) = 0.5;
  return build_reversible_chain(a);
}

Matrix random_graph_metric(std::size_t n, Rng& rng) {
  // Shortest paths over random positive weights on a connected graph.
  constexpr double big = 1e300;
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = i == j ? 0.0 : big;
  for (std::size_t i = 0; i + 1 < n; ++i) d(i, i + 1) = d(i + 1, i) = rng.uniform(0.5, 2.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = rng.below(n), b = rng.below(n);
    if (a != b) d(a, b) = d(b, a) = std::min(d(a, b), rng.uniform(0.5, 2.0));
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return d;
}

// Oracle for the 4-cycle with uniform measure. The problem is convex and
// dihedrally symmetric, so an optimal Gram matrix is circulant: points
// (r cos(k pi/2), r sin(k pi/2), (-1)^k h). Edges have squared length
// 2r^2 + 4h^2 <= 1 and diagonals 4r^2 <= 4; scan the feasible boundary.
double cycle4_optimal_distortion() {
  double best_spread = 0.0;
  for (int a = 0; a <= 100000; ++a) {
    const double r2 = 0.5 * a / 100000.0;
    const double h2 = (1.0 - 2.0 * r2) / 4.0;
    const double edge2 = 2.0 * r2 + 4.0 * h2, diag2 = 4.0 * r2;
    best_spread = std::max(best_spread, (4.0 * edge2 + 2.0 * diag2) / (4.0 * 1.0 + 2.0 * 4.0));
  }
  return 1.0 / std::sqrt(best_spread);
}

}  // namespace

TEST_CASE("embedding examples") {
  const Vector two{0.5, 0.5};
  const auto e = average_embed_hilbert(Matrix::from_rows({{0, 1}, {1, 0}}), two, 1.0);
  CHECK(e.d_achieved == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(e.status == SolverStatus::converged);

  Matrix eq(5, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) eq(i, j) = i == j ? 0.0 : 3.0;
  CHECK(average_embed_hilbert(eq, uniform(5), 0.5).d_achieved == doctest::Approx(1.0).epsilon(1e-6));

  const auto c4 = average_embed_hilbert(cycle_metric(4), uniform(4), 1.0);
  CHECK(c4.d_achieved == doctest::Approx(cycle4_optimal_distortion()).epsilon(1e-4));
  CHECK(c4.d_achieved >= c4.d_lower - 1e-9);
  CHECK(c4.d_achieved - c4.d_lower <= 1e-5);

  const auto c6 = average_embed_hilbert(cycle_metric(6), uniform(6), 1.0);
  CHECK(c6.d_achieved > 1.1);
  CHECK(c6.d_achieved <= c6.d_lower * (1 + 1e-5));
}

TEST_CASE("embedding invariants on random metrics") {
  const Rng root(51);
  for (std::size_t k = 0; k < 6; ++k) {
    Rng rng = root.split(k);
    const std::size_t n = 4 + rng.below(8);
    const Matrix d = random_graph_metric(n, rng);
    Vector mu(n);
    double s = 0.0;
    for (double& v : mu) s += (v = rng.uniform(0.2, 1.0));
    for (double& v : mu) v /= s;
    const double theta = rng.uniform() < 0.5 ? 1.0 : 0.5;
    const auto e = average_embed_hilbert(d, mu, theta);

    // Feasible Gram matrix and matching factor.
    const auto spec = oracle::symmetric_spectrum(e.gram);
    CHECK(spec.back() >= -1e-9 * std::max(1.0, spec.front()));
    const auto f = oracle::to_eigen(e.factor);
    const Eigen::MatrixXd g = f * f.transpose();
    CHECK((g - oracle::to_eigen(e.gram)).norm() <= 1e-8 * std::max(1.0, g.norm()));
    CHECK(e.factor.cols() <= n);

    // Certificates recomputed from the factor.
    const auto r = evaluate_average_distortion(e.factor, d, mu, 2.0, theta);
    CHECK(r.lip == doctest::Approx(e.lip).epsilon(1e-9));
    CHECK(r.distortion == doctest::Approx(e.d_achieved).epsilon(1e-9));
    CHECK(e.lip <= 1.0 + 1e-6);
    CHECK(e.d_lower <= e.d_achieved * (1 + 1e-9));
    CHECK(e.d_achieved >= 1.0 - 1e-9);

    // The accepted objective never decreases.
    for (std::size_t t = 1; t < e.objective_trace.size(); ++t)
      CHECK(e.objective_trace[t] >= e.objective_trace[t - 1]);
  }
}

TEST_CASE("average distortion evaluation") {
  const Matrix d = cycle_metric(4);
  const Matrix square = Matrix::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto r = evaluate_average_distortion(square, d, uniform(4), 2.0, 1.0);
  CHECK(r.lip == doctest::Approx(1.0));
  CHECK(r.spread == doctest::Approx(8.0 / 12.0));
  CHECK(r.distortion == doctest::Approx(std::sqrt(1.5)));

  Matrix scaled = square;
  scaled *= 3.0;
  CHECK(evaluate_average_distortion(scaled, d, uniform(4), 2.0, 1.0).distortion == doctest::Approx(r.distortion));

  const Matrix collapsed(4, 2);
  CHECK(std::isinf(evaluate_average_distortion(collapsed, d, uniform(4), 2.0, 1.0).distortion));
}

TEST_CASE("embedding rejects bad input") {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code([] { average_embed_hilbert(Matrix::from_rows({{0, 0}, {0, 0}}), Vector{.5, .5}, 1.0); }) ==
        ErrorCode::NotAMetric);
  CHECK(code([] { average_embed_hilbert(Matrix::from_rows({{0, 1}, {1, 0}}), Vector{1.0, 0.0}, 1.0); }) ==
        ErrorCode::ZeroWeight);
  CHECK(code([] { average_embed_hilbert(Matrix::from_rows({{0, 1}, {1, 0}}), Vector{.5, .6}, 1.0); }) ==
        ErrorCode::NotNormalized);
  const auto e = average_embed_hilbert(cycle_metric(4), uniform(4), 1.0);
  const auto skewed = build_reversible_chain(
      Matrix::from_rows({{.5, .5, 0, 0}, {.25, .5, .25, 0}, {0, .25, .5, .25}, {0, 0, .5, .5}}));
  CHECK(code([&] { duality_forward_check(e, skewed, cycle_metric(4)); }) == ErrorCode::MismatchedStationary);
  CHECK(code([&] { duality_forward_check(e, cycle_chain(4), cycle_metric(4), 3.0); }) == ErrorCode::UnsupportedSpace);
}

TEST_CASE("forward duality on cycles") {
  for (std::size_t n = 3; n <= 8; ++n) {
    const Matrix d = cycle_metric(n);
    const auto e = average_embed_hilbert(d, uniform(n), 1.0);
    const auto r = duality_forward_check(e, cycle_chain(n), d);
    const double lambda2 = std::cos(2.0 * std::numbers::pi / static_cast<double>(n));
    CHECK(r.gamma_target == doctest::Approx(1.0 / (1.0 - lambda2)));
    CHECK(r.product_ok);
    CHECK(r.gamma_source_le);
    CHECK(r.slack >= -1e-9);
  }
}

TEST_CASE("duality witness") {
  // Two configurations of the 4-cycle: the two coordinate projections of
  // the unit square.
  const Matrix d = cycle_metric(4);
  const std::vector<Matrix> configs{Matrix::from_rows({{0}, {1}, {1}, {0}}), Matrix::from_rows({{0}, {0}, {1}, {1}})};
  const Vector lambda{0.5, 0.5};
  const auto w = witness_weights(configs, lambda, d, uniform(4), 2.0, 1.0);
  REQUIRE(w.size() == 2);
  // Over ordered pairs sum mu mu d^2 = 24/16 and each projection has 8/16.
  CHECK(w[0] == doctest::Approx(0.5 * 24.0 / 8.0));
  CHECK(w[1] == doctest::Approx(0.5 * 24.0 / 8.0));

  double bound = 0.0;
  for (std::size_t k = 0; k < 2; ++k) bound += w[k];  // both projections are 1-Lipschitz
  const double dmax = std::sqrt(bound);
  const auto ok = duality_witness_check(w, configs, d, uniform(4), 2.0, 1.0, dmax, 1e-9);
  CHECK(ok.lipschitz_ok);
  CHECK(ok.average_ok);
  CHECK(ok.average_lhs == doctest::Approx(ok.average_rhs));

  const auto control = duality_witness_check(w, configs, d, uniform(4), 2.0, 1.0, dmax / 2, 1e-9);
  CHECK_FALSE(control.lipschitz_ok);

  CHECK_THROWS_AS(witness_weights({}, Vector{}, d, uniform(4), 2.0, 1.0), Error);
  CHECK_THROWS_AS(witness_weights({Matrix(4, 1)}, Vector{1.0}, d, uniform(4), 2.0, 1.0), Error);
}

TEST_CASE("l_p distance matrix and hypercube corners") {
  const Matrix pts = Matrix::from_rows({{0, 0}, {3, 4}});
  CHECK(lp_distance_matrix(pts, 2.0)(0, 1) == doctest::Approx(5.0));
  CHECK(lp_distance_matrix(pts, 1.0)(0, 1) == doctest::Approx(7.0));
  CHECK(lp_distance_matrix(pts, std::numeric_limits<double>::infinity())(1, 0) == doctest::Approx(4.0));

  const auto full = hypercube_corners(3, 64, 1);
  CHECK(full.points.rows() == 8);
  CHECK(full.face_dimension == 3);
  for (std::size_t i = 0; i < 8; ++i) {
    std::size_t degree = 0;
    for (std::size_t j = 0; j < 8; ++j) {
      std::size_t diff = 0;
      for (std::size_t c = 0; c < 3; ++c) diff += full.points(i, c) != full.points(j, c);
      CHECK(full.adjacency(i, j) == (diff == 1 ? 1.0 : 0.0));
      degree += diff == 1;
    }
    CHECK(degree == 3);
  }
  const auto face = hypercube_corners(16, 64, 2);
  CHECK(face.points.rows() == 64);
  CHECK(face.face_dimension == 6);
  const auto again = hypercube_corners(16, 64, 2);
  CHECK(again.points.rows() == face.points.rows());
  for (std::size_t i = 0; i < 64; ++i)
    for (std::size_t c = 0; c < 16; ++c) CHECK(face.points(i, c) == again.points(i, c));
}

TEST_CASE("average distortion of l_1 cubes grows") {
  // l_1 on {-1,1}^d needs average distortion growing with d.
  double prev = 0.0;
  for (std::size_t dim : {1u, 2u, 3u, 4u}) {
    const auto cube = hypercube_corners(dim, 64, 0);
    const Matrix d = lp_distance_matrix(cube.points, 1.0);
    const auto e = average_embed_hilbert(d, uniform(cube.points.rows()), 1.0);
    CHECK(e.d_achieved >= prev - 1e-6);
    prev = e.d_achieved;
  }
  CHECK(prev > 1.2);
}
