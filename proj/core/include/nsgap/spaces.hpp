#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "nsgap/ellipsoid_norm.hpp"
#include "nsgap/linalg.hpp"

namespace nsgap {

enum class SpaceKind { finite, lp_norm, polytope_norm, ellipsoid_norm };

std::string_view to_string(SpaceKind kind);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// A finite metric (distance matrix) or a norm on R^d, viewed through the
// snowflake d^theta with theta in (0, 1].
class MetricSpace {
 public:
  static constexpr std::size_t kMaxFinitePoints = 512;

  // dist must be symmetric, zero on the diagonal, nonnegative and satisfy
  // the triangle inequality within 1e-9 (NotAMetric otherwise).
  static MetricSpace finite(Matrix dist, double theta = 1.0);
  // l_p^dim for p in [1, inf]; p = inf is the max-coordinate norm.
  static MetricSpace lp(double p, std::size_t dim, double theta = 1.0);
  static MetricSpace euclidean(std::size_t dim, double theta = 1.0) { return lp(2.0, dim, theta); }
  // Norm whose unit ball is the convex hull of the vertices and their
  // negations. The vertices must span R^d.
  static MetricSpace polytope(std::vector<Vector> vertices, double theta = 1.0);
  static MetricSpace ellipsoid(EllipsoidNorm norm, double theta = 1.0);

  SpaceKind kind() const noexcept { return kind_; }
  double theta() const noexcept { return theta_; }
  bool normed() const noexcept { return kind_ != SpaceKind::finite; }
  bool hilbertian() const noexcept;
  // Ambient dimension of a normed space.
  std::size_t dim() const;
  // Number of points of a finite space.
  std::size_t point_count() const;
  double p() const;
  const Matrix& base_distances() const;
  const std::vector<Vector>& vertices() const;
  const EllipsoidNorm& ellipsoid() const;

  MetricSpace with_theta(double theta) const;

  // Gauge of v (no snowflake).
  double norm(std::span<const double> v) const;
  // A subgradient of the gauge at v; zero at v = 0.
  Vector norm_subgradient(std::span<const double> v) const;
  // A maximizer of <g, y> over the unit ball.
  Vector unit_ball_argmax(std::span<const double> g) const;

  double distance(std::size_t a, std::size_t b) const;
  double distance(std::span<const double> a, std::span<const double> b) const;

 private:
  MetricSpace() = default;

  SpaceKind kind_ = SpaceKind::finite;
  double theta_ = 1.0;
  double p_ = 2.0;
  std::size_t dim_ = 0;
  std::shared_ptr<const Matrix> dist_;
  std::shared_ptr<const std::vector<Vector>> vertices_;
  std::shared_ptr<const Matrix> vertex_matrix_;  // d x m, columns are vertices
  std::shared_ptr<const EllipsoidNorm> ellipsoid_;
};

// An n-tuple of points of one metric space: state indices for finite
// spaces, an n x d coordinate matrix for normed spaces.
class Configuration {
 public:
  Configuration(MetricSpace space, std::vector<std::size_t> indices);
  Configuration(MetricSpace space, Matrix coordinates);

  std::size_t size() const noexcept { return size_; }
  const MetricSpace& space() const noexcept { return *space_; }
  bool on_finite_space() const noexcept { return !space_->normed(); }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  const Matrix& coordinates() const noexcept { return coordinates_; }

  // Snowflaked distance between the i-th and j-th points.
  double distance(std::size_t i, std::size_t j) const;
  // Matrix of d(x_i, x_j)^p.
  Matrix powered_distances(double p) const;
  // At least two points at positive distance.
  bool nonconstant() const;

 private:
  std::shared_ptr<const MetricSpace> space_;
  std::vector<std::size_t> indices_;
  Matrix coordinates_;
  std::size_t size_ = 0;
};

// (sum_i pi_i d(x_i, y_i)^p)^(1/p), the metric of L_p(pi; M).
double product_distance(std::span<const double> pi, const Configuration& x, const Configuration& y,
                        double p);

struct ModulusMode {
  enum class Kind { smooth, convex };
  Kind kind = Kind::convex;
  double exponent = 2.0;
  double constant = 1.0;
};

struct ModulusReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  // max over sampled pairs of lhs / rhs of the two-point inequality.
  double worst_ratio = 0.0;
};

// Samples `trials` random pairs and tests the p-uniform smoothness
//   (|x|^p + |y|^p)/2 <= |(x+y)/2|^p + S^p |(x-y)/2|^p,     p in [1, 2]
// or the q-uniform convexity
//   |(x+y)/2|^q + K^-q |(x-y)/2|^q <= (|x|^q + |y|^q)/2,    q in [2, inf)
// with the asserted constant.
ModulusReport modulus_check(const MetricSpace& space, ModulusMode mode, std::size_t trials,
                            std::uint64_t seed);

}  // namespace nsgap
