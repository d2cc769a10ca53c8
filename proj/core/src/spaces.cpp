#include "nsgap/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nsgap/detail/simplex.hpp"
#include "nsgap/error.hpp"
#include "nsgap/random.hpp"

namespace nsgap {

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::finite: return "finite";
    case SpaceKind::lp_norm: return "lp";
    case SpaceKind::polytope_norm: return "polytope";
    case SpaceKind::ellipsoid_norm: return "ellipsoid";
  }
  return "unknown";
}

namespace {

void check_theta(double theta) {
  require(theta > 0.0 && theta <= 1.0, ErrorCode::InvalidArgument, "snowflake exponent must lie in (0, 1]");
}

double snowflake(double base, double theta) { return theta == 1.0 ? base : std::pow(base, theta); }

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

MetricSpace MetricSpace::finite(Matrix dist, double theta) {
  check_theta(theta);
  require(dist.square() && !dist.empty(), ErrorCode::DimensionMismatch, "distance matrix must be square");
  const std::size_t n = dist.rows();
  require(n <= kMaxFinitePoints, ErrorCode::InstanceTooLarge,
          "finite metric has more than " + std::to_string(kMaxFinitePoints) + " points");
  for (std::size_t i = 0; i < n; ++i) {
    require(dist(i, i) == 0.0, ErrorCode::NotAMetric, "distance matrix diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      require(std::isfinite(dist(i, j)) && dist(i, j) >= 0.0, ErrorCode::NotAMetric,
              "distances must be finite and nonnegative");
      require(dist(i, j) == dist(j, i), ErrorCode::NotAMetric, "distance matrix must be symmetric");
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        require(dist(i, j) <= dist(i, k) + dist(k, j) + 1e-9, ErrorCode::NotAMetric,
                "triangle inequality fails at (" + std::to_string(i) + ", " + std::to_string(k) + ", " +
                    std::to_string(j) + ")");
  MetricSpace s;
  s.kind_ = SpaceKind::finite;
  s.theta_ = theta;
  s.dist_ = std::make_shared<const Matrix>(std::move(dist));
  return s;
}

MetricSpace MetricSpace::lp(double p, std::size_t dim, double theta) {
  check_theta(theta);
  require(p >= 1.0, ErrorCode::BadExponentRange, "l_p needs p >= 1");
  require(dim > 0, ErrorCode::DimensionMismatch, "l_p dimension must be positive");
  MetricSpace s;
  s.kind_ = SpaceKind::lp_norm;
  s.theta_ = theta;
  s.p_ = p;
  s.dim_ = dim;
  return s;
}

MetricSpace MetricSpace::polytope(std::vector<Vector> vertices, double theta) {
  check_theta(theta);
  require(!vertices.empty(), ErrorCode::DegenerateSpan, "polytope needs vertices");
  const std::size_t d = vertices.front().size();
  require(d > 0, ErrorCode::DimensionMismatch, "polytope vertices must be non-empty");
  std::vector<Vector> all;
  std::set<Vector> seen;
  auto add = [&](const Vector& v) {
    if (seen.insert(v).second) all.push_back(v);
  };
  for (const auto& v : vertices) {
    require(v.size() == d, ErrorCode::DimensionMismatch, "polytope vertices differ in dimension");
    for (double c : v) require(std::isfinite(c), ErrorCode::InvalidArgument, "non-finite vertex coordinate");
    if (norm2(v) == 0.0) continue;
    add(v);
    Vector neg(v);
    for (double& c : neg) c = -c;
    add(neg);
  }
  Matrix vm(d, all.size());
  for (std::size_t j = 0; j < all.size(); ++j)
    for (std::size_t k = 0; k < d; ++k) vm(k, j) = all[j][k];
  // Span check through the Gram matrix V V^T.
  require(all.size() >= d, ErrorCode::DegenerateSpan, "polytope vertices do not span the space");
  const Matrix gram = vm * transpose(vm);
  const auto eig = jacobi_eigen(gram);
  require(eig.values.back() > 1e-10 * std::max(1.0, eig.values.front()), ErrorCode::DegenerateSpan,
          "polytope vertices do not span the space");
  MetricSpace s;
  s.kind_ = SpaceKind::polytope_norm;
  s.theta_ = theta;
  s.dim_ = d;
  s.vertices_ = std::make_shared<const std::vector<Vector>>(std::move(all));
  s.vertex_matrix_ = std::make_shared<const Matrix>(std::move(vm));
  return s;
}

MetricSpace MetricSpace::ellipsoid(EllipsoidNorm norm, double theta) {
  check_theta(theta);
  MetricSpace s;
  s.kind_ = SpaceKind::ellipsoid_norm;
  s.theta_ = theta;
  s.dim_ = norm.dim();
  s.ellipsoid_ = std::make_shared<const EllipsoidNorm>(std::move(norm));
  return s;
}

bool MetricSpace::hilbertian() const noexcept {
  return kind_ == SpaceKind::ellipsoid_norm || (kind_ == SpaceKind::lp_norm && p_ == 2.0);
}

std::size_t MetricSpace::dim() const {
  require(normed(), ErrorCode::UnsupportedSpace, "finite metric has no ambient dimension");
  return dim_;
}

std::size_t MetricSpace::point_count() const {
  require(!normed(), ErrorCode::UnsupportedSpace, "normed space has no finite point set");
  return dist_->rows();
}

double MetricSpace::p() const {
  require(kind_ == SpaceKind::lp_norm, ErrorCode::UnsupportedSpace, "exponent only defined for l_p");
  return p_;
}

const Matrix& MetricSpace::base_distances() const {
  require(kind_ == SpaceKind::finite, ErrorCode::UnsupportedSpace, "not a finite metric");
  return *dist_;
}

const std::vector<Vector>& MetricSpace::vertices() const {
  require(kind_ == SpaceKind::polytope_norm, ErrorCode::UnsupportedSpace, "not a polytope norm");
  return *vertices_;
}

const EllipsoidNorm& MetricSpace::ellipsoid() const {
  require(kind_ == SpaceKind::ellipsoid_norm, ErrorCode::UnsupportedSpace, "not an ellipsoid norm");
  return *ellipsoid_;
}

MetricSpace MetricSpace::with_theta(double theta) const {
  check_theta(theta);
  MetricSpace s = *this;
  s.theta_ = theta;
  return s;
}

double MetricSpace::norm(std::span<const double> v) const {
  require(normed(), ErrorCode::UnsupportedSpace, "finite metric has no norm");
  require(v.size() == dim_, ErrorCode::DimensionMismatch, "vector dimension does not match the space");
  switch (kind_) {
    case SpaceKind::lp_norm: {
      if (std::isinf(p_)) {
        double m = 0.0;
        for (double c : v) m = std::max(m, std::abs(c));
        return m;
      }
      if (p_ == 1.0) {
        double s = 0.0;
        for (double c : v) s += std::abs(c);
        return s;
      }
      if (p_ == 2.0) return norm2(v);
      // Scale by the max coordinate so large exponents do not overflow.
      double m = 0.0;
      for (double c : v) m = std::max(m, std::abs(c));
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (double c : v) s += std::pow(std::abs(c) / m, p_);
      return m * std::pow(s, 1.0 / p_);
    }
    case SpaceKind::polytope_norm: {
      if (norm2(v) == 0.0) return 0.0;
      const Matrix& vm = *vertex_matrix_;
      const Vector ones(vm.cols(), 1.0);
      const auto lp = detail::solve_standard_lp(vm, v, ones);
      require(lp.status == detail::LpStatus::optimal, ErrorCode::NoConvergence, "polytope gauge LP failed");
      return lp.value;
    }
    case SpaceKind::ellipsoid_norm: return ellipsoid_->norm(v);
    case SpaceKind::finite: break;
  }
  return 0.0;
}

Vector MetricSpace::norm_subgradient(std::span<const double> v) const {
  require(normed(), ErrorCode::UnsupportedSpace, "finite metric has no norm");
  require(v.size() == dim_, ErrorCode::DimensionMismatch, "vector dimension does not match the space");
  Vector g(dim_, 0.0);
  const double nv = norm(v);
  if (nv == 0.0) return g;
  switch (kind_) {
    case SpaceKind::lp_norm: {
      if (std::isinf(p_)) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < dim_; ++k)
          if (std::abs(v[k]) > std::abs(v[best])) best = k;
        g[best] = sign(v[best]);
      } else if (p_ == 1.0) {
        for (std::size_t k = 0; k < dim_; ++k) g[k] = sign(v[k]);
      } else {
        for (std::size_t k = 0; k < dim_; ++k) g[k] = sign(v[k]) * std::pow(std::abs(v[k]) / nv, p_ - 1.0);
      }
      break;
    }
    case SpaceKind::polytope_norm: {
      const Matrix& vm = *vertex_matrix_;
      const Vector ones(vm.cols(), 1.0);
      const auto lp = detail::solve_standard_lp(vm, v, ones);
      require(lp.status == detail::LpStatus::optimal, ErrorCode::NoConvergence, "polytope gauge LP failed");
      g = lp.dual;
      break;
    }
    case SpaceKind::ellipsoid_norm: {
      g = ellipsoid_->form() * v;
      for (double& c : g) c /= nv;
      break;
    }
    case SpaceKind::finite: break;
  }
  return g;
}

Vector MetricSpace::unit_ball_argmax(std::span<const double> g) const {
  require(normed(), ErrorCode::UnsupportedSpace, "finite metric has no unit ball");
  require(g.size() == dim_, ErrorCode::DimensionMismatch, "vector dimension does not match the space");
  Vector y(dim_, 0.0);
  switch (kind_) {
    case SpaceKind::lp_norm: {
      if (std::isinf(p_)) {
        for (std::size_t k = 0; k < dim_; ++k) y[k] = g[k] >= 0.0 ? 1.0 : -1.0;
      } else if (p_ == 1.0) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < dim_; ++k)
          if (std::abs(g[k]) > std::abs(g[best])) best = k;
        y[best] = g[best] >= 0.0 ? 1.0 : -1.0;
      } else {
        const double q = p_ / (p_ - 1.0);
        const double gq = MetricSpace::lp(q, dim_).norm(g);
        if (gq == 0.0) {
          y[0] = 1.0;
          break;
        }
        for (std::size_t k = 0; k < dim_; ++k) y[k] = sign(g[k]) * std::pow(std::abs(g[k]) / gq, q - 1.0);
      }
      break;
    }
    case SpaceKind::polytope_norm: {
      const auto& verts = *vertices_;
      std::size_t best = 0;
      double best_value = -kInfinity;
      for (std::size_t j = 0; j < verts.size(); ++j) {
        const double value = dot(verts[j], g);
        if (value > best_value) {
          best_value = value;
          best = j;
        }
      }
      y = verts[best];
      break;
    }
    case SpaceKind::ellipsoid_norm: {
      const double dn = ellipsoid_->dual_norm(g);
      if (dn == 0.0) {
        Vector e(dim_, 0.0);
        e[0] = 1.0;
        const double ne = ellipsoid_->norm(e);
        e[0] /= ne;
        return e;
      }
      y = ellipsoid_->inverse_form() * g;
      for (double& c : y) c /= dn;
      break;
    }
    case SpaceKind::finite: break;
  }
  return y;
}

double MetricSpace::distance(std::size_t a, std::size_t b) const {
  require(!normed(), ErrorCode::UnsupportedSpace, "index distance needs a finite metric");
  require(a < dist_->rows() && b < dist_->rows(), ErrorCode::DimensionMismatch, "point index out of range");
  return snowflake((*dist_)(a, b), theta_);
}

double MetricSpace::distance(std::span<const double> a, std::span<const double> b) const {
  require(normed(), ErrorCode::UnsupportedSpace, "coordinate distance needs a normed space");
  require(a.size() == dim_ && b.size() == dim_, ErrorCode::DimensionMismatch,
          "point dimension does not match the space");
  Vector diff(dim_);
  for (std::size_t k = 0; k < dim_; ++k) diff[k] = a[k] - b[k];
  return snowflake(norm(diff), theta_);
}

Configuration::Configuration(MetricSpace space, std::vector<std::size_t> indices)
    : space_(std::make_shared<const MetricSpace>(std::move(space))), indices_(std::move(indices)) {
  require(!space_->normed(), ErrorCode::UnsupportedSpace, "index configuration needs a finite metric");
  for (auto i : indices_)
    require(i < space_->point_count(), ErrorCode::DimensionMismatch, "configuration index out of range");
  size_ = indices_.size();
}

Configuration::Configuration(MetricSpace space, Matrix coordinates)
    : space_(std::make_shared<const MetricSpace>(std::move(space))), coordinates_(std::move(coordinates)) {
  require(space_->normed(), ErrorCode::UnsupportedSpace, "coordinate configuration needs a normed space");
  require(coordinates_.cols() == space_->dim(), ErrorCode::DimensionMismatch,
          "configuration coordinates do not match the space dimension");
  size_ = coordinates_.rows();
}

double Configuration::distance(std::size_t i, std::size_t j) const {
  require(i < size_ && j < size_, ErrorCode::DimensionMismatch, "configuration index out of range");
  if (on_finite_space()) return space_->distance(indices_[i], indices_[j]);
  return space_->distance(coordinates_.row(i), coordinates_.row(j));
}

Matrix Configuration::powered_distances(double p) const {
  Matrix out(size_, size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = i + 1; j < size_; ++j) {
      const double d = distance(i, j);
      out(i, j) = out(j, i) = p == 1.0 ? d : std::pow(d, p);
    }
  return out;
}

bool Configuration::nonconstant() const {
  for (std::size_t i = 1; i < size_; ++i)
    if (distance(0, i) > 0.0) return true;
  return false;
}

double product_distance(std::span<const double> pi, const Configuration& x, const Configuration& y, double p) {
  require(std::isfinite(p) && p >= 1.0, ErrorCode::BadExponentRange, "product metric needs finite p >= 1");
  require(x.size() == pi.size() && y.size() == pi.size(), ErrorCode::LengthMismatch,
          "configurations must match the stationary vector length");
  const MetricSpace& space = x.space();
  double total = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    double d = 0.0;
    if (space.normed()) {
      require(y.space().normed(), ErrorCode::DimensionMismatch, "configurations live in different spaces");
      d = space.distance(x.coordinates().row(i), y.coordinates().row(i));
    } else {
      d = space.distance(x.indices()[i], y.indices()[i]);
    }
    total += pi[i] * std::pow(d, p);
  }
  return std::pow(total, 1.0 / p);
}

ModulusReport modulus_check(const MetricSpace& space, ModulusMode mode, std::size_t trials, std::uint64_t seed) {
  require(space.normed(), ErrorCode::UnsupportedSpace, "modulus check needs a normed space");
  const double e = mode.exponent;
  if (mode.kind == ModulusMode::Kind::smooth)
    require(e >= 1.0 && e <= 2.0, ErrorCode::BadExponentRange, "smoothness exponent must lie in [1, 2]");
  else
    require(e >= 2.0 && std::isfinite(e), ErrorCode::BadExponentRange, "convexity exponent must lie in [2, inf)");
  require(mode.constant > 0.0, ErrorCode::InvalidArgument, "modulus constant must be positive");

  const std::size_t d = space.dim();
  Rng rng(seed);
  ModulusReport report;
  report.trials = trials;
  Vector x(d), y(d), half_sum(d), half_diff(d);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = rng.normal();
      y[k] = rng.normal();
    }
    for (std::size_t k = 0; k < d; ++k) {
      half_sum[k] = 0.5 * (x[k] + y[k]);
      half_diff[k] = 0.5 * (x[k] - y[k]);
    }
    const double nx = std::pow(space.norm(x), e);
    const double ny = std::pow(space.norm(y), e);
    const double ns = std::pow(space.norm(half_sum), e);
    const double nd = std::pow(space.norm(half_diff), e);
    const double c = std::pow(mode.constant, e);
    double lhs = 0.0;
    double rhs = 0.0;
    if (mode.kind == ModulusMode::Kind::smooth) {
      lhs = 0.5 * (nx + ny);
      rhs = ns + c * nd;
    } else {
      lhs = ns + nd / c;
      rhs = 0.5 * (nx + ny);
    }
    const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInfinity : 1.0);
    report.worst_ratio = std::max(report.worst_ratio, ratio);
    if (lhs > rhs * (1.0 + 1e-12)) ++report.violations;
  }
  return report;
}

}  // namespace nsgap
