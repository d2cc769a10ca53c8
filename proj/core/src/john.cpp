#include "nsgap/john.hpp"

#include <algorithm>
#include <cmath>

#include "nsgap/error.hpp"
#include "nsgap/random.hpp"

namespace nsgap {

namespace {

constexpr std::size_t kMaxVertexDimension = 16;

double form_value(const Matrix& q, std::span<const double> y) { return dot(y, q * y); }

// argmax of <g, y> over {y^T Q y <= 1}.
Vector ellipsoid_argmax(const EllipsoidNorm& h, std::span<const double> g) {
  const double dn = h.dual_norm(g);
  Vector y = h.inverse_form() * g;
  if (dn == 0.0) return Vector(g.size(), 0.0);
  for (double& c : y) c /= dn;
  return y;
}

Vector random_direction(std::size_t d, Rng& rng) {
  Vector v(d);
  for (double& c : v) c = rng.normal();
  return v;
}

// max |y|_X over |y|_H <= 1 by alternating subgradient and ellipsoid
// maximization; every iterate is feasible so the result is a lower bound.
double polar_ascent(const MetricSpace& space, const EllipsoidNorm& h, const std::vector<Vector>& starts,
                    std::size_t steps) {
  double best = 0.0;
  for (const auto& g0 : starts) {
    Vector y = ellipsoid_argmax(h, g0);
    double value = space.norm(y);
    for (std::size_t s = 0; s < steps; ++s) {
      const Vector g = space.norm_subgradient(y);
      Vector next = ellipsoid_argmax(h, g);
      const double next_value = space.norm(next);
      if (next_value <= value * (1.0 + 1e-15)) break;
      y = std::move(next);
      value = next_value;
    }
    best = std::max(best, value);
  }
  return best;
}

// max |y|_Q over the unit ball of X by alternating gradient and linear
// maximization over the ball.
double containment_ascent(const MetricSpace& space, const EllipsoidNorm& q, const std::vector<Vector>& starts,
                          std::size_t steps) {
  double best = 0.0;
  for (const auto& y0 : starts) {
    Vector y = space.unit_ball_argmax(y0);
    double value = q.norm(y);
    for (std::size_t s = 0; s < steps; ++s) {
      Vector next = space.unit_ball_argmax(q.form() * y);
      const double next_value = q.norm(next);
      if (next_value <= value * (1.0 + 1e-15)) break;
      y = std::move(next);
      value = next_value;
    }
    best = std::max(best, value);
  }
  return best;
}

std::vector<Vector> ascent_starts(std::size_t d, const HilbertDistanceOptions& options) {
  std::vector<Vector> starts;
  for (std::size_t k = 0; k < d; ++k) {
    Vector e(d, 0.0);
    e[k] = 1.0;
    starts.push_back(e);
  }
  Rng rng(options.seed);
  for (std::size_t s = 0; s < options.ascent_starts; ++s) starts.push_back(random_direction(d, rng));
  return starts;
}

std::vector<Vector> sampled_sphere(const MetricSpace& space, const HilbertDistanceOptions& options) {
  const std::size_t d = space.dim();
  Rng rng(options.seed ^ 0x5A5A5A5AULL);
  std::vector<Vector> points = cube_vertices(d);
  for (auto& v : points) {
    const double nv = space.norm(v);
    for (double& c : v) c /= nv;
  }
  for (std::size_t orthant = 0; orthant < (std::size_t{1} << d); ++orthant)
    for (std::size_t k = 0; k < options.samples_per_orthant; ++k) {
      Vector v(d);
      for (std::size_t c = 0; c < d; ++c) v[c] = std::abs(rng.normal()) * (((orthant >> c) & 1U) ? -1.0 : 1.0);
      const double nv = space.norm(v);
      for (double& c : v) c /= nv;
      points.push_back(std::move(v));
    }
  for (const auto& e : cross_polytope_vertices(d)) points.push_back(e);
  return points;
}

}  // namespace

std::vector<Vector> cube_vertices(std::size_t d) {
  require(d >= 1 && d <= 20, ErrorCode::InstanceTooLarge, "cube vertex enumeration allows d <= 20");
  std::vector<Vector> out;
  out.reserve(std::size_t{1} << d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Vector v(d);
    for (std::size_t k = 0; k < d; ++k) v[k] = ((mask >> k) & 1U) ? -1.0 : 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> cross_polytope_vertices(std::size_t d) {
  std::vector<Vector> out;
  for (std::size_t k = 0; k < d; ++k)
    for (double s : {1.0, -1.0}) {
      Vector v(d, 0.0);
      v[k] = s;
      out.push_back(std::move(v));
    }
  return out;
}

MveeResult mvee(const std::vector<Vector>& points, const MveeOptions& options) {
  require(!points.empty(), ErrorCode::DegenerateSpan, "MVEE needs points");
  const std::size_t d = points.front().size();
  require(d >= 1, ErrorCode::DimensionMismatch, "points must be non-empty vectors");
  std::vector<Vector> pts;
  pts.reserve(2 * points.size());
  for (const auto& p : points) {
    require(p.size() == d, ErrorCode::DimensionMismatch, "points differ in dimension");
    pts.push_back(p);
    Vector neg(p);
    for (double& c : neg) c = -c;
    pts.push_back(std::move(neg));
  }
  const std::size_t m = pts.size();
  require(m >= d + 1, ErrorCode::DegenerateSpan, "MVEE needs at least d + 1 points");
  const double dd = static_cast<double>(d);

  Vector u(m, 1.0 / static_cast<double>(m));
  auto moment = [&] {
    Matrix x(d, d);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) x(a, b) += u[i] * pts[i][a] * pts[i][b];
    return x;
  };
  {
    const auto eig = jacobi_eigen(moment());
    require(eig.values.back() > 1e-12 * std::max(1.0, eig.values.front()), ErrorCode::DegenerateSpan,
            "points do not span the space");
  }

  Vector mvals(m);
  std::size_t it = 0;
  Matrix xinv;
  for (;; ++it) {
    auto inv = spd_inverse(moment());
    require(inv.has_value(), ErrorCode::DegenerateSpan, "moment matrix became singular");
    xinv = std::move(*inv);
    std::size_t jmax = 0;
    std::size_t jmin = m;
    for (std::size_t i = 0; i < m; ++i) {
      mvals[i] = form_value(xinv, pts[i]);
      if (mvals[i] > mvals[jmax]) jmax = i;
      if (u[i] > 0.0 && (jmin == m || mvals[i] < mvals[jmin])) jmin = i;
    }
    if (mvals[jmax] <= dd * (1.0 + options.tol)) break;
    if (it >= options.max_iterations)
      fail(ErrorCode::NoConvergence, "Khachiyan iteration cap reached");
    const double up = mvals[jmax] / dd - 1.0;
    const double down = jmin < m ? 1.0 - mvals[jmin] / dd : 0.0;
    if (up >= down || jmin == m) {
      const double alpha = (mvals[jmax] - dd) / (dd * (mvals[jmax] - 1.0));
      for (double& w : u) w *= 1.0 - alpha;
      u[jmax] += alpha;
    } else {
      // Away step: move weight off the least useful supporting point.
      const double cap = u[jmin] / (1.0 - u[jmin]);
      const double beta =
          mvals[jmin] > 1.0 ? std::min((dd - mvals[jmin]) / (dd * (mvals[jmin] - 1.0)), cap) : cap;
      for (double& w : u) w *= 1.0 + beta;
      u[jmin] -= beta;
      if (u[jmin] < 1e-300) u[jmin] = 0.0;
    }
  }
  Matrix q = (1.0 / dd) * xinv;
  double max_value = 0.0;
  for (const auto& p : pts) max_value = std::max(max_value, form_value(q, p));
  q *= 1.0 / max_value;
  MveeResult out{EllipsoidNorm(std::move(q)), std::move(u), it, 1.0};
  return out;
}

HilbertDistance hilbert_distance(const MetricSpace& space, const HilbertDistanceOptions& options) {
  require(space.normed(), ErrorCode::UnsupportedSpace, "D_X needs a normed space");
  const std::size_t d = space.dim();
  HilbertDistance out;
  if (space.kind() == SpaceKind::ellipsoid_norm) {
    out.h = space.ellipsoid();
    out.d_x = 1.0;
    out.exact = true;
    return out;
  }
  if (space.kind() == SpaceKind::lp_norm && space.p() == 2.0) {
    out.h = EllipsoidNorm::euclidean(d);
    out.d_x = 1.0;
    out.exact = true;
    return out;
  }

  const bool cube = space.kind() == SpaceKind::lp_norm && std::isinf(space.p());
  const bool cross = space.kind() == SpaceKind::lp_norm && space.p() == 1.0;
  const bool sampled = space.kind() == SpaceKind::lp_norm && !cube && !cross;
  if (cube || sampled)
    require(d <= kMaxVertexDimension, ErrorCode::InstanceTooLarge, "vertex description allows d <= 16");

  std::vector<Vector> verts;
  if (cube)
    verts = cube_vertices(d);
  else if (cross)
    verts = cross_polytope_vertices(d);
  else if (sampled)
    verts = sampled_sphere(space, options);
  else
    verts = space.vertices();

  const MveeResult ell = mvee(verts, options.mvee);
  out.mvee_iterations = ell.iterations;
  EllipsoidNorm h = ell.ellipsoid;
  const auto starts = ascent_starts(d, options);

  // Containment: |y|_H <= |y|_X, i.e. the unit ball of X inside {|y|_H <= 1}.
  double reach = 0.0;
  for (const auto& v : verts) reach = std::max(reach, h.norm(v));
  if (sampled) reach = std::max(reach, containment_ascent(space, h, starts, options.ascent_steps));
  h = h.scaled(1.0 / reach);

  double dx = 0.0;
  if (cube) {
    for (const auto& e : cross_polytope_vertices(d)) dx = std::max(dx, h.dual_norm(e));
    out.exact = true;
  } else if (cross && d <= kMaxVertexDimension) {
    for (const auto& s : cube_vertices(d)) dx = std::max(dx, h.dual_norm(s));
    out.exact = true;
  } else {
    dx = polar_ascent(space, h, starts, options.ascent_steps);
    out.exact = false;
    const double john = std::sqrt(static_cast<double>(d) * (1.0 + options.mvee.tol));
    out.slack = std::max(0.0, john - dx) / dx;
  }
  out.d_x = std::max(1.0, dx);
  out.h = std::move(h);
  return out;
}

SandwichReport sandwich_check(const MetricSpace& space, const EllipsoidNorm& h, double d, std::size_t samples,
                              std::uint64_t seed) {
  require(space.normed() && space.dim() == h.dim(), ErrorCode::DimensionMismatch,
          "sandwich needs a normed space matching the Hilbertian norm");
  Rng rng(seed);
  SandwichReport report;
  report.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vector u = random_direction(h.dim(), rng);
    const double nh = h.norm(u);
    const double nx = space.norm(u);
    const double lower = nh / nx;
    const double upper = nx / (d * nh);
    report.worst_lower = std::max(report.worst_lower, lower);
    report.worst_upper = std::max(report.worst_upper, upper);
    if (lower > 1.0 + 1e-6 || upper > 1.0 + 1e-6) ++report.violations;
  }
  return report;
}

}  // namespace nsgap
