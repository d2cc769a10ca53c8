#include "nsgap/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nsgap/error.hpp"
#include "nsgap/random.hpp"
#include "nsgap/spaces.hpp"

namespace nsgap {

std::string_view to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::converged: return "converged";
    case SolverStatus::iteration_cap: return "iteration_cap";
    case SolverStatus::stalled: return "stalled";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Pair {
  std::size_t i;
  std::size_t j;
};

std::vector<Pair> all_pairs(std::size_t n) {
  std::vector<Pair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
  return pairs;
}

void check_measure(std::span<const double> mu, std::size_t n) {
  require(mu.size() == n, ErrorCode::SizeMismatch, "measure length differs from the number of points");
  double sum = 0.0;
  for (double m : mu) {
    require(std::isfinite(m) && m >= 0.0, ErrorCode::InvalidArgument, "measure must be nonnegative");
    require(m > 0.0, ErrorCode::ZeroWeight, "measure has a zero atom");
    sum += m;
  }
  require(std::abs(sum - 1.0) <= 1e-9, ErrorCode::NotNormalized, "measure must sum to 1");
}

void check_metric(const Matrix& dist) {
  (void)MetricSpace::finite(dist);
  for (std::size_t i = 0; i < dist.rows(); ++i)
    for (std::size_t j = i + 1; j < dist.rows(); ++j)
      require(dist(i, j) > 0.0, ErrorCode::NotAMetric, "distinct points must be at positive distance");
}

// Squared distances G_ii + G_jj - 2 G_ij for every pair.
void pair_distances(const Matrix& g, const std::vector<Pair>& pairs, Vector& out) {
  out.resize(pairs.size());
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    const auto [i, j] = pairs[e];
    out[e] = g(i, i) + g(j, j) - 2.0 * g(i, j);
  }
}

// Weighted graph Laplacian sum_e y_e (e_i - e_j)(e_i - e_j)^T.
Matrix laplacian(std::size_t n, const std::vector<Pair>& pairs, std::span<const double> y) {
  Matrix l(n, n);
  for (std::size_t e = 0; e < pairs.size(); ++e) {
    const auto [i, j] = pairs[e];
    l(i, i) += y[e];
    l(j, j) += y[e];
    l(i, j) -= y[e];
    l(j, i) -= y[e];
  }
  return l;
}

Matrix project_psd(const Matrix& m) {
  const auto eig = jacobi_eigen(m);
  const std::size_t n = m.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.values[k];
    if (lambda <= 0.0) break;
    for (std::size_t a = 0; a < n; ++a) {
      const double va = lambda * eig.vectors(a, k);
      for (std::size_t b = 0; b < n; ++b) out(a, b) += va * eig.vectors(b, k);
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) out(a, b) = out(b, a) = 0.5 * (out(a, b) + out(b, a));
  return out;
}

// Orthonormal basis of the complement of the all-ones vector (columns).
Matrix centered_basis(std::size_t n) {
  Matrix v(n, n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double scale = 1.0 / std::sqrt(kk * (kk + 1.0));
    for (std::size_t i = 0; i < k; ++i) v(i, k - 1) = scale;
    v(k, k - 1) = -kk * scale;
  }
  return v;
}

// Smallest t with t L(y) >= W on the centered subspace; +inf if L(y) is
// singular there.
double pencil_max(const Matrix& basis, const Matrix& lap, const Matrix& w) {
  const Matrix bt = transpose(basis);
  const Matrix lc = bt * lap * basis;
  const Matrix wc = bt * w * basis;
  const auto eig = jacobi_eigen(lc);
  const std::size_t r = lc.rows();
  if (eig.values.back() <= 1e-13 * std::max(1.0, eig.values.front())) return kInf;
  Matrix inv_sqrt(r, r);
  for (std::size_t k = 0; k < r; ++k) {
    const double s = 1.0 / std::sqrt(eig.values[k]);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) inv_sqrt(a, b) += s * eig.vectors(a, k) * eig.vectors(b, k);
  }
  Matrix m = inv_sqrt * wc * inv_sqrt;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b) m(a, b) = m(b, a) = 0.5 * (m(a, b) + m(b, a));
  return jacobi_eigen(m).values.front();
}

Matrix gram_factor(const Matrix& g) {
  const auto eig = jacobi_eigen(g);
  const std::size_t n = g.rows();
  const double top = std::max(eig.values.front(), 0.0);
  std::size_t rank = 0;
  while (rank < n && eig.values[rank] > 1e-12 * top) ++rank;
  if (rank == 0) rank = 1;
  Matrix f(n, rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const double s = std::sqrt(std::max(eig.values[k], 0.0));
    for (std::size_t a = 0; a < n; ++a) f(a, k) = s * eig.vectors(a, k);
  }
  return f;
}

double euclid(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

}  // namespace

GramEmbedding average_embed_hilbert(const Matrix& dist, std::span<const double> mu, double theta,
                                    const EmbedOptions& options) {
  require(theta > 0.0 && theta <= 1.0, ErrorCode::InvalidArgument, "snowflake exponent must lie in (0, 1]");
  check_metric(dist);
  const std::size_t n = dist.rows();
  require(n >= 2, ErrorCode::InvalidArgument, "embedding needs at least two points");
  check_measure(mu, n);

  const auto pairs = all_pairs(n);
  const std::size_t m = pairs.size();
  Vector c(m);
  Vector w(m);
  for (std::size_t e = 0; e < m; ++e) {
    const auto [i, j] = pairs[e];
    c[e] = std::pow(dist(i, j), 2.0 * theta);
    w[e] = 2.0 * mu[i] * mu[j];
  }
  // Work in units where mean(c) = 1 and sum(w) = 1.
  const double c_scale = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(m);
  const double w_scale = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : c) v /= c_scale;
  for (double& v : w) v /= w_scale;
  const Matrix wmat = laplacian(n, pairs, w);
  const Matrix basis = centered_basis(n);
  double spread_total = 0.0;
  for (std::size_t e = 0; e < m; ++e) spread_total += w[e] * c[e];

  // For the complete pair set |A|^2 = 2n exactly.
  const double op_norm = std::sqrt(2.0 * static_cast<double>(n));
  const double ratio = norm2(c) / norm2(w);
  const double tau = 0.95 * std::sqrt(ratio) / op_norm;
  const double sigma = 0.95 / (std::sqrt(ratio) * op_norm);

  Matrix g(n, n);
  Matrix g_bar(n, n);
  Vector y(m, 0.0);
  Vector ag;
  GramEmbedding out;
  out.theta = theta;
  out.mu.assign(mu.begin(), mu.end());
  out.status = SolverStatus::iteration_cap;
  double best = 0.0;
  Matrix best_g;
  double best_upper = kInf;
  double last_objective = -1.0;
  std::size_t flat_iterations = 0;
  std::size_t it = 0;
  for (it = 1; it <= options.max_iterations; ++it) {
    pair_distances(g_bar, pairs, ag);
    for (std::size_t e = 0; e < m; ++e) y[e] = std::max(0.0, y[e] + sigma * (ag[e] - c[e]));
    Matrix step = g + tau * (wmat - laplacian(n, pairs, y));
    Matrix g_new = project_psd(step);
    g_bar = 2.0 * g_new - g;
    g = std::move(g_new);

    pair_distances(g, pairs, ag);
    double worst = 0.0;
    double objective = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      worst = std::max(worst, ag[e] / c[e]);
      objective += w[e] * ag[e];
    }
    if (worst > 0.0) {
      const double feasible = objective / worst;
      if (feasible > best) {
        best = feasible;
        best_g = (1.0 / worst) * g;
        out.objective_trace.push_back(best);
      }
    }

    // Stalled: the raw iterate stops moving while it is still infeasible.
    if (std::abs(objective - last_objective) <= 1e-10 * std::max(1.0, std::abs(objective)) && worst - 1.0 > 1e-6)
      ++flat_iterations;
    else
      flat_iterations = 0;
    last_objective = objective;

    if (it % options.check_every == 0 || it == options.max_iterations) {
      double yc = 0.0;
      for (std::size_t e = 0; e < m; ++e) yc += y[e] * c[e];
      if (yc > 0.0) best_upper = std::min(best_upper, pencil_max(basis, laplacian(n, pairs, y), wmat) * yc);
      if (best > 0.0 && best_upper - best <= options.gap_tolerance * best_upper) {
        out.status = SolverStatus::converged;
        break;
      }
    }
    if (flat_iterations >= 200) {
      out.status = SolverStatus::stalled;
      break;
    }
  }
  out.iterations = std::min(it, options.max_iterations);
  require(!best_g.empty(), ErrorCode::NoConvergence, "solver produced no feasible iterate");

  // Factor, rebuild the Gram matrix from the factor and rescale so the
  // tightest pair constraint holds with equality.
  Matrix factor = gram_factor(best_g);
  Matrix gram = factor * transpose(factor);
  pair_distances(gram, pairs, ag);
  double worst = 0.0;
  for (std::size_t e = 0; e < m; ++e) worst = std::max(worst, ag[e] / c[e]);
  const double rescale = std::sqrt(c_scale / worst);
  factor *= rescale;
  out.factor = std::move(factor);
  out.gram = out.factor * transpose(out.factor);

  const auto report = evaluate_average_distortion(out.factor, dist, mu, 2.0, theta);
  out.lip = report.lip;
  out.spread = report.spread;
  out.d_achieved = report.distortion;
  out.d_lower = std::isfinite(best_upper) ? std::sqrt(spread_total / best_upper) : 1.0;
  return out;
}

DistortionReport evaluate_average_distortion(const Matrix& points, const Matrix& dist, std::span<const double> mu,
                                             double q, double theta) {
  const std::size_t n = points.rows();
  require(dist.rows() == n && dist.cols() == n && mu.size() == n, ErrorCode::SizeMismatch,
          "points, metric and measure sizes differ");
  require(q >= 1.0, ErrorCode::BadExponentRange, "q must be at least 1");
  DistortionReport report;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double fd = euclid(points.row(i), points.row(j));
      const double md = std::pow(dist(i, j), theta);
      if (md > 0.0) report.lip = std::max(report.lip, fd / md);
      num += 2.0 * mu[i] * mu[j] * std::pow(fd, q);
      den += 2.0 * mu[i] * mu[j] * std::pow(md, q);
    }
  report.spread = den > 0.0 ? num / den : 0.0;
  report.distortion = report.spread > 0.0 ? report.lip / std::pow(report.spread, 1.0 / q) : kInf;
  return report;
}

DistortionReport evaluate_average_distortion(const GramEmbedding& embedding, const Matrix& dist, double q) {
  return evaluate_average_distortion(embedding.factor, dist, embedding.mu, q, embedding.theta);
}

ForwardDualityReport duality_forward_check(const GramEmbedding& embedding, const StochasticChain& chain,
                                           const Matrix& dist, double q) {
  require(q == 2.0, ErrorCode::UnsupportedSpace, "forward duality is evaluated for q = 2 only");
  require(chain.reversible(), ErrorCode::NotReversibleChain, "forward duality needs a reversible chain");
  const std::size_t n = chain.size();
  require(embedding.factor.rows() == n && dist.rows() == n, ErrorCode::SizeMismatch,
          "chain, embedding and metric sizes differ");
  const auto& pi = chain.stationary();
  for (std::size_t i = 0; i < n; ++i)
    require(std::abs(pi[i] - embedding.mu[i]) <= 1e-12, ErrorCode::MismatchedStationary,
            "chain stationary vector differs from the embedding measure");
  const auto spec = spectral_data(chain);
  const auto dr = evaluate_average_distortion(embedding, dist, q);
  const auto& a = chain.transition();

  ForwardDualityReport report;
  report.distortion = dr.distortion;
  report.gamma_target = spec.gamma_classical;
  double source_pair = 0.0;
  double source_edge = 0.0;
  double image_pair = 0.0;
  double image_edge = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double md = std::pow(dist(i, j), embedding.theta * q);
      const double fd = std::pow(euclid(embedding.factor.row(i), embedding.factor.row(j)), q);
      source_pair += pi[i] * pi[j] * md;
      source_edge += pi[i] * a(i, j) * md;
      image_pair += pi[i] * pi[j] * fd;
      image_edge += pi[i] * a(i, j) * fd;
    }
  report.lhs = source_pair;
  report.rhs = std::pow(report.distortion, q) * report.gamma_target * source_edge;
  report.slack = std::isinf(report.rhs) ? kInf : report.rhs - report.lhs;
  report.product_lhs = image_pair;
  report.product_rhs = report.gamma_target * image_edge;
  report.product_ok = image_pair <= report.product_rhs * (1.0 + 1e-9) + 1e-15;
  report.gamma_source_le = report.slack >= -1e-9;
  return report;
}

Vector witness_weights(const std::vector<Matrix>& configs, std::span<const double> lambda, const Matrix& dist,
                       std::span<const double> mu, double q, double theta) {
  require(!configs.empty(), ErrorCode::EmptyDecomposition, "no configurations given");
  require(lambda.size() == configs.size(), ErrorCode::SizeMismatch, "one mixture weight per configuration");
  const std::size_t n = dist.rows();
  double source = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) source += mu[i] * mu[j] * std::pow(dist(i, j), theta * q);
  Vector w(configs.size());
  for (std::size_t k = 0; k < configs.size(); ++k) {
    const Matrix& y = configs[k];
    require(y.rows() == n, ErrorCode::SizeMismatch, "configuration size differs from the metric");
    double image = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) image += mu[i] * mu[j] * std::pow(euclid(y.row(i), y.row(j)), q);
    require(image > 0.0, ErrorCode::ConstantConfiguration, "configuration is constant");
    w[k] = lambda[k] * source / image;
  }
  return w;
}

WitnessReport duality_witness_check(std::span<const double> weights, const std::vector<Matrix>& configs,
                                    const Matrix& dist, std::span<const double> mu, double q, double theta, double d,
                                    double eps) {
  require(!configs.empty(), ErrorCode::EmptyDecomposition, "no configurations given");
  require(weights.size() == configs.size(), ErrorCode::SizeMismatch, "one weight per configuration");
  require(q >= 1.0, ErrorCode::BadExponentRange, "q must be at least 1");
  for (double w : weights) require(w > 0.0, ErrorCode::ZeroWeight, "witness weights must be positive");
  const std::size_t n = dist.rows();
  require(mu.size() == n, ErrorCode::SizeMismatch, "measure length differs from the metric");
  for (const auto& y : configs) require(y.rows() == n, ErrorCode::SizeMismatch, "configuration size differs");

  WitnessReport report;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double fq = 0.0;
      for (std::size_t k = 0; k < configs.size(); ++k)
        fq += weights[k] * std::pow(euclid(configs[k].row(i), configs[k].row(j)), q);
      const double md = std::pow(dist(i, j), theta);
      if (md > 0.0) report.lipschitz = std::max(report.lipschitz, std::pow(fq, 1.0 / q) / md);
      report.average_lhs += mu[i] * mu[j] * fq;
      report.average_rhs += mu[i] * mu[j] * std::pow(md, q);
    }
  report.lipschitz_ok = report.lipschitz <= d + eps;
  report.average_ok = report.average_lhs >= report.average_rhs * (1.0 - 1e-12);
  return report;
}

Matrix lp_distance_matrix(const Matrix& points, double p) {
  const MetricSpace space = MetricSpace::lp(p, points.cols());
  const std::size_t n = points.rows();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out(i, j) = out(j, i) = space.distance(points.row(i), points.row(j));
  return out;
}

CubeSample hypercube_corners(std::size_t d, std::size_t max_points, std::uint64_t seed) {
  require(d >= 1 && d <= 62, ErrorCode::InvalidArgument, "cube dimension must lie in [1, 62]");
  require(max_points >= 2, ErrorCode::InvalidArgument, "need room for at least two corners");
  std::size_t face = 0;
  while (face < d && (std::size_t{2} << face) <= max_points) ++face;
  Rng rng(seed);
  std::vector<std::size_t> coords(d);
  std::iota(coords.begin(), coords.end(), 0);
  Vector base(d);
  for (double& s : base) s = rng.uniform() < 0.5 ? -1.0 : 1.0;
  if (face < d) rng.shuffle(std::span<std::size_t>(coords));
  const std::size_t count = std::size_t{1} << face;
  CubeSample out;
  out.face_dimension = face;
  out.points = Matrix(count, d);
  for (std::size_t mask = 0; mask < count; ++mask) {
    for (std::size_t k = 0; k < d; ++k) out.points(mask, k) = base[k];
    for (std::size_t b = 0; b < face; ++b) out.points(mask, coords[b]) = ((mask >> b) & 1U) ? -1.0 : 1.0;
  }
  out.adjacency = Matrix(count, count);
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = 0; b < face; ++b) out.adjacency(a, a ^ (std::size_t{1} << b)) = 1.0;
  return out;
}

}  // namespace nsgap
