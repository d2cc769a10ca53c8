// Acceptance battery: one line per criterion, nonzero exit on any failure.
// Every check recomputes what it can from first principles with Eigen and
// only trusts the library for the object under test.
//
// Usage: nsgap_acceptance <path to nsgap executable> [seed]

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nsgap/embed.hpp"
#include "nsgap/expander.hpp"
#include "nsgap/john.hpp"
#include "nsgap/markov.hpp"
#include "nsgap/mazur.hpp"
#include "nsgap/random.hpp"
#include "nsgap/rayleigh.hpp"
#include "oracles.hpp"

using namespace nsgap;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Vector random_measure(std::size_t n, Rng& rng) {
  Vector v(n);
  double s = 0.0;
  for (double& x : v) s += (x = rng.uniform(0.1, 1.0));
  for (double& x : v) x /= s;
  return v;
}

Matrix normal_matrix(std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) m(i, k) = rng.normal();
  return m;
}

double lp_norm(const Eigen::VectorXd& v, double p) {
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
  return std::pow(s, 1.0 / p);
}

// Rayleigh quotient from its definition.
double quotient(const Eigen::MatrixXd& powered, const Eigen::MatrixXd& a, const Vector& pi) {
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      num += pi[i] * a(i, j) * powered(i, j);
      den += pi[i] * pi[j] * powered(i, j);
    }
  return num / den;
}

Matrix random_metric(std::size_t n, Rng& rng) {
  Matrix pts = normal_matrix(n, 2, rng);
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = std::hypot(pts(i, 0) - pts(j, 0), pts(i, 1) - pts(j, 1));
  return d;
}

// 1. Heuristic gap on l_2^n equals 1/(1 - lambda_2).
Outcome criterion1(std::uint64_t seed) {
  const Rng root(seed);
  double worst_below = 0.0, worst_above = 0.0;
  std::size_t failures = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    Rng rng = root.split(k);
    const std::size_t n = 2 + rng.below(7);
    const auto chain = random_reversible_chain(n, rng);
    const double exact = 1.0 / (1.0 - oracle::lambda2(chain));
    HeuristicOptions options;
    options.seed = rng();
    const double h = gamma_heuristic(chain, MetricSpace::euclidean(n), 2.0, options).value;
    worst_below = std::max(worst_below, exact - h);
    worst_above = std::max(worst_above, h - exact);
    if (!(h >= exact - 1e-6 && h <= exact + 1e-9)) ++failures;
  }
  return {failures == 0, fmt("100 chains, %zu outside, max below %.2e, max above %.2e", failures, worst_below,
                             worst_above)};
}

// 2. Flip chain gap and the lazy absolute-gap sandwich by enumeration.
Outcome criterion2(std::uint64_t seed) {
  const auto flip = build_reversible_chain(Matrix::from_rows({{0, 1}, {1, 0}}));
  const auto two = MetricSpace::finite(Matrix::from_rows({{0, 1}, {1, 0}}));
  bool flip_ok = true;
  for (double p : {1.0, 2.0, 3.0}) flip_ok = flip_ok && gamma_bruteforce(flip, two, p).value == 0.5;

  const Rng root(seed);
  std::size_t failures = 0, oracle_mismatch = 0;
  for (std::size_t k = 0; k < 50; ++k) {
    Rng rng = root.split(k);
    const auto chain = random_reversible_chain(2 + rng.below(3), rng);
    const Matrix dist = random_metric(2 + rng.below(3), rng);
    const double q = rng.uniform() < 0.5 ? 1.0 : 2.0;
    const auto r = abs_gap_sandwich_check(chain, MetricSpace::finite(dist), q);
    const double g = oracle::gamma_enumerated(chain, dist, q);
    if (std::abs(r.gamma - g) > 1e-12 * std::max(1.0, g)) ++oracle_mismatch;
    // The sandwich 2 gamma <= gamma_+(lazy) <= 2^{2q+1} gamma, rechecked here.
    const bool lower = r.gamma_plus_lazy >= 2.0 * g * (1 - 1e-12);
    const bool upper = r.gamma_plus_lazy <= std::pow(2.0, 2 * q + 1) * g * (1 + 1e-12);
    if (!(lower && upper && r.lower_ok && r.upper_ok)) ++failures;
  }
  return {flip_ok && failures == 0 && oracle_mismatch == 0,
          fmt("flip chain %s, 50 instances: %zu sandwich failures, %zu gamma mismatches", flip_ok ? "= 1/2" : "wrong",
              failures, oracle_mismatch)};
}

// 3. Rayleigh calculus on 10^4 instances, evaluated from the definition.
Outcome criterion3(std::uint64_t seed) {
  const Rng root(seed);
  double affinity = 0.0, dilution = 0.0, product = kInf, power = kInf;
  std::size_t failures = 0;
  constexpr std::size_t trials = 10000;
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng = root.split(k);
    const std::size_t n = 2 + rng.below(5);
    const Vector pi = random_measure(n, rng);
    const auto ca = random_reversible_chain_with_stationary(pi, rng);
    const auto cb = random_reversible_chain_with_stationary(pi, rng);
    const std::size_t dim = 1 + rng.below(3);
    const double norm_p = rng.uniform() < 0.2 ? kInf : rng.uniform(1.0, 4.0);
    const Eigen::MatrixXd x = oracle::to_eigen(normal_matrix(n, dim, rng));
    const double lambda = rng.uniform();
    const auto t = static_cast<int>(1 + rng.below(4));
    const double p = rng.uniform(1.0, 4.0);

    Eigen::MatrixXd powered(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) powered(i, j) = std::pow(lp_norm(x.row(i) - x.row(j), norm_p), p);
    const Eigen::MatrixXd a = oracle::to_eigen(ca.transition()), b = oracle::to_eigen(cb.transition());
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const double ra = quotient(powered, a, pi), rb = quotient(powered, b, pi);
    const auto scale = [](double v) { return 1e-12 * std::max(1.0, std::abs(v)); };

    const double mix_rhs = lambda * ra + (1 - lambda) * rb;
    const double e1 = std::abs(quotient(powered, lambda * a + (1 - lambda) * b, pi) - mix_rhs);
    const double e2 = std::abs(quotient(powered, lambda * a + (1 - lambda) * id, pi) - lambda * ra);
    const double prod_rhs = std::pow(ra, 1 / p) + std::pow(rb, 1 / p);
    const double s3 = prod_rhs - std::pow(quotient(powered, a * b, pi), 1 / p);
    Eigen::MatrixXd bt = id;
    for (int s = 0; s < t; ++s) bt = bt * b;
    const double pow_rhs = std::pow(static_cast<double>(t), p) * rb;
    const double s4 = pow_rhs - quotient(powered, bt, pi);

    // The library report must agree with the recomputation.
    const auto space = std::isinf(norm_p) ? MetricSpace::lp(kInf, dim) : MetricSpace::lp(norm_p, dim);
    Matrix coords(n, dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < dim; ++c) coords(i, c) = x(i, c);
    const auto lib = rayleigh_calculus_check(Configuration(space, coords), ca, cb, lambda, t, p);

    affinity = std::max(affinity, e1 / std::max(1.0, std::abs(mix_rhs)));
    dilution = std::max(dilution, e2 / std::max(1.0, std::abs(lambda * ra)));
    product = std::min(product, s3 / std::max(1.0, prod_rhs));
    power = std::min(power, s4 / std::max(1.0, pow_rhs));
    const bool ok = e1 <= scale(mix_rhs) && e2 <= scale(lambda * ra) && s3 >= -scale(prod_rhs) &&
                    s4 >= -scale(pow_rhs) && lib.holds;
    if (!ok) ++failures;
  }
  return {failures == 0, fmt("%zu trials, %zu failures, affinity %.1e, dilution %.1e, product slack %.1e, "
                             "power slack %.1e",
                             trials, failures, affinity, dilution, product, power)};
}

// 4. Mazur maps.
Outcome criterion4(std::uint64_t seed) {
  const Rng root(seed);
  std::size_t round_failures = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < 1000; ++k) {
    Rng rng = root.split(k);
    const std::size_t atoms = 1 + rng.below(8), dim = 1 + rng.below(3);
    const double p = rng.uniform(1.0, 6.0), q = rng.uniform(1.0, 6.0);
    const auto space = rng.uniform() < 0.5 ? MetricSpace::euclidean(dim) : MetricSpace::lp(rng.uniform(1.0, 5.0), dim);
    WeightedVectorFunction f{random_measure(atoms, rng), normal_matrix(atoms, dim, rng)};
    const auto m = mazur_map(f, space, p, q);
    const auto back = mazur_map(m, space, q, p);
    // Independent round-trip and |Mf|_q^q = |f|_p^p.
    double err = 0.0, fp = 0.0, mq = 0.0;
    for (std::size_t a = 0; a < atoms; ++a) {
      Vector row(dim), mrow(dim);
      for (std::size_t c = 0; c < dim; ++c) {
        row[c] = f.values(a, c);
        mrow[c] = m.values(a, c);
        err = std::max(err, std::abs(back.values(a, c) - f.values(a, c)) / std::max(1.0, std::abs(f.values(a, c))));
      }
      fp += f.weights[a] * std::pow(space.norm(row), p);
      mq += m.weights[a] * std::pow(space.norm(mrow), q);
    }
    const double transfer = std::abs(mq - fp) / std::max(1.0, fp);
    worst = std::max({worst, err, transfer});
    const auto lib = mazur_roundtrip_check(f, space, p, q);
    if (!(err <= 1e-12 && transfer <= 1e-12 && lib.holds)) ++round_failures;
  }

  std::string fits;
  bool holder_ok = true;
  const auto ladder = geometric_ladder(20);
  std::size_t pair_index = 0;
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{1, 2}, {1.5, 3}, {2, 4}}) {
    const double target = std::min(p / q, 1.0);
    double least = kInf;
    for (std::size_t t = 0; t < 5; ++t) {
      Rng rng = root.split(1000 + 10 * pair_index + t);
      const auto space = MetricSpace::euclidean(2);
      auto unit = [&] {
        WeightedVectorFunction f{random_measure(4, rng), normal_matrix(4, 2, rng)};
        double s = 0.0;
        for (std::size_t a = 0; a < 4; ++a) s += f.weights[a] * std::pow(std::hypot(f.values(a, 0), f.values(a, 1)), p);
        f.values *= 1.0 / std::pow(s, 1.0 / p);
        return f;
      };
      auto f = unit();
      auto g = unit();
      g.weights = f.weights;
      // Rescale g against the shared weights.
      double s = 0.0;
      for (std::size_t a = 0; a < 4; ++a) s += g.weights[a] * std::pow(std::hypot(g.values(a, 0), g.values(a, 1)), p);
      g.values *= 1.0 / std::pow(s, 1.0 / p);
      for (auto mode : {LadderMode::perturb, LadderMode::dilate}) {
        const auto r = mazur_holder_check(f, g, space, p, q, ladder, mode);
        least = std::min(least, r.fitted_exponent);
      }
    }
    holder_ok = holder_ok && least >= target - 0.1;
    fits += fmt(" (%.1f,%.1f): min fit %.3f vs %.3f;", p, q, least, target);
    ++pair_index;
  }
  return {round_failures == 0 && holder_ok,
          fmt("1000 round trips, %zu failures, worst %.1e;", round_failures, worst) + fits};
}

// 5. John ellipsoids of cubes.
Outcome criterion5(std::uint64_t seed) {
  bool ok = true;
  std::string detail;
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto r = mvee(cube_vertices(d));
    const Eigen::MatrixXd q = oracle::to_eigen(r.ellipsoid.form());
    const Eigen::MatrixXd qinv = q.inverse();
    // max over the ellipsoid of |y|_inf is max_i sqrt((Q^{-1})_ii).
    double dx = 0.0;
    for (Eigen::Index i = 0; i < q.rows(); ++i) dx = std::max(dx, std::sqrt(qinv(i, i)));
    double contain = 0.0;
    for (const auto& v : cube_vertices(d)) {
      const Eigen::Map<const Eigen::VectorXd> y(v.data(), static_cast<Eigen::Index>(d));
      contain = std::max(contain, y.dot(q * y));
    }
    const auto h = hilbert_distance(MetricSpace::lp(kInf, d));
    const auto s = sandwich_check(MetricSpace::lp(kInf, d), h.h, h.d_x, 2000, seed + d);
    const double root_d = std::sqrt(static_cast<double>(d));
    const bool this_ok = std::abs(dx - root_d) <= 1e-3 && std::abs(h.d_x - root_d) <= 1e-3 &&
                         contain <= 1.0 + 1e-9 && s.violations == 0 && r.iterations < 100000;
    ok = ok && this_ok;
    detail += fmt(" d=%zu D=%.6f it=%zu;", d, dx, r.iterations);
  }
  return {ok, "cube MVEE" + detail};
}

struct Shadow {
  std::size_t d;
  CubeSample cube;
  Matrix dist;
  GramEmbedding embedding;
};

std::vector<Shadow>& shadows() {
  static std::vector<Shadow> s;
  return s;
}

// 6. Average embeddings of snowflaked l_inf cubes.
Outcome criterion6(std::uint64_t seed) {
  const Rng root(seed);
  auto& out = shadows();
  out.clear();
  std::vector<double> shape;
  double lip_excess = 0.0;
  std::string detail;
  for (std::size_t d : {2u, 4u, 8u, 16u}) {
    Shadow s{d, hypercube_corners(d, 32, root.split(d)()), {}, {}};
    const std::size_t n = s.cube.points.rows();
    s.dist = lp_distance_matrix(s.cube.points, kInf);
    s.embedding = average_embed_hilbert(s.dist, Vector(n, 1.0 / static_cast<double>(n)), 0.5);
    const Eigen::MatrixXd f = oracle::to_eigen(s.embedding.factor);
    // Lipschitz constraints and the distortion, recomputed from the points.
    double lip = 0.0, num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const double fd = (f.row(i) - f.row(j)).norm();
        const double target = std::sqrt(lp_norm(oracle::to_eigen(s.cube.points).row(i) -
                                                    oracle::to_eigen(s.cube.points).row(j),
                                                kInf));
        lip = std::max(lip, fd / target);
        num += fd * fd;
        den += target * target;
      }
    lip_excess = std::max(lip_excess, lip - 1.0);
    const double distortion = lip / std::sqrt(num / den);
    shape.push_back(distortion / std::sqrt(std::log(static_cast<double>(d) + 1.0)));
    detail += fmt(" d=%zu n=%zu D=%.4f;", d, n, distortion);
    out.push_back(std::move(s));
  }
  bool band = true;
  for (double v : shape) band = band && v >= shape.front() / 10 && v <= shape.front() * 10;
  return {band && lip_excess <= 1e-6, fmt("Lipschitz excess %.1e, band %s;", lip_excess, band ? "ok" : "violated") +
                                          detail};
}

// 7. Duality in both directions.
Outcome criterion7(std::uint64_t seed) {
  std::size_t forward_fail = 0;
  double min_slack = kInf;
  for (const auto& s : shadows()) {
    Matrix walk = s.cube.adjacency;
    walk *= 1.0 / static_cast<double>(s.cube.face_dimension);
    const auto chain = lazy_power(build_reversible_chain(walk, s.embedding.mu), 1);
    const auto r = duality_forward_check(s.embedding, chain, s.dist);
    // Recompute the slack: D^2 gamma sum pi a d - sum pi pi d with gamma = 1/(1 - lambda_2).
    const double gamma = 1.0 / (1.0 - oracle::lambda2(chain));
    const Vector& pi = s.embedding.mu;
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i)
      for (std::size_t j = 0; j < pi.size(); ++j) {
        lhs += pi[i] * pi[j] * s.dist(i, j);
        rhs += pi[i] * chain.transition()(i, j) * s.dist(i, j);
      }
    const double slack = s.embedding.d_achieved * s.embedding.d_achieved * gamma * rhs - lhs;
    min_slack = std::min(min_slack, slack);
    if (!(r.slack >= -1e-9 && slack >= -1e-9 && r.product_ok)) ++forward_fail;
  }

  // Assembled maps: configurations are the coordinate projections of a
  // random embedding of a random metric, weighted to meet the average bound.
  const Rng root(seed);
  std::size_t witness_fail = 0, control_accepted = 0;
  constexpr std::size_t trials = 20;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = root.split(t);
    const std::size_t n = 3 + rng.below(4);
    const Matrix dist = random_metric(n, rng);
    const Vector mu = random_measure(n, rng);
    const std::size_t parts = 2 + rng.below(2);
    std::vector<Matrix> configs;
    for (std::size_t k = 0; k < parts; ++k) configs.push_back(normal_matrix(n, 1 + rng.below(2), rng));
    Vector lambda = random_measure(parts, rng);
    const Vector w = witness_weights(configs, lambda, dist, mu, 2.0, 1.0);
    // Lipschitz bound of x -> (w_k^{1/2} y_k(x))_k: (sum w_k L_k^2)^{1/2}.
    double bound = 0.0;
    for (std::size_t k = 0; k < parts; ++k) {
      const Eigen::MatrixXd y = oracle::to_eigen(configs[k]);
      double lk = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) lk = std::max(lk, (y.row(i) - y.row(j)).norm() / dist(i, j));
      bound += w[k] * lk * lk;
    }
    bound = std::sqrt(bound);
    const auto r = duality_witness_check(w, configs, dist, mu, 2.0, 1.0, bound, 1e-9);
    if (!(r.lipschitz_ok && r.average_ok)) ++witness_fail;
    for (auto& c : configs) c *= 0.5;
    const auto control = duality_witness_check(w, configs, dist, mu, 2.0, 1.0, bound, 1e-9);
    if (control.lipschitz_ok && control.average_ok) ++control_accepted;
  }
  return {forward_fail == 0 && witness_fail == 0 && control_accepted == 0,
          fmt("forward: %zu/%zu failures, min slack %.3e; witness: %zu/%zu failures; control accepted %zu/%zu",
              forward_fail, shadows().size(), min_slack, witness_fail, trials, control_accepted, trials)};
}

// 8. Mean-zero operator norm bound in the Hilbert case.
Outcome criterion8(std::uint64_t seed) {
  const Rng root(seed);
  std::size_t failures = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    Rng rng = root.split(k);
    const auto chain = random_reversible_chain(2 + rng.below(7), rng);
    const auto r = meanzero_opnorm_bound_check(chain, 2.0, 1.0);
    // Spectrum of D^{1/2} A D^{-1/2} from Eigen; the operator norm on
    // mean-zero functions is the largest modulus after the top eigenvalue.
    const auto spec = oracle::symmetric_spectrum(symmetrization(chain));
    const double norm = std::max(std::abs(spec[1]), std::abs(spec.back()));
    const double gplus = 1.0 / (1.0 - norm);
    const double rhs = std::sqrt(std::max(0.0, 1.0 - 1.0 / gplus));
    if (!(r.holds && std::abs(r.lhs - norm) <= 1e-9 && norm <= rhs + 1e-9)) ++failures;
  }
  return {failures == 0, fmt("100 chains, %zu failures", failures)};
}

// 9. Random cubic graphs.
Outcome criterion9(std::uint64_t seed) {
  const Rng root(seed);
  std::size_t structure_fail = 0, spread_fail = 0, total = 0;
  for (std::size_t n : {16u, 32u, 64u, 128u}) {
    for (std::size_t s = 0; s < 100; ++s, ++total) {
      const auto g = random_regular_graph(n, 3, root.split(n).split(s)());
      std::vector<std::vector<std::size_t>> adj(n);
      std::set<std::pair<std::size_t, std::size_t>> seen;
      bool simple = true;
      for (const auto& [u, v] : g.edges()) {
        simple = simple && u != v && u < n && v < n && seen.insert({std::min(u, v), std::max(u, v)}).second;
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
      bool regular = std::all_of(adj.begin(), adj.end(), [](const auto& a) { return a.size() == 3; });
      // All-pairs BFS for connectivity and the distance spread.
      std::size_t threshold = 0;
      for (std::size_t k = 1, power = 3; 2 * power <= n; ++k, power *= 3) threshold = k;
      bool connected = true, spread = true;
      for (std::size_t src = 0; src < n; ++src) {
        std::vector<int> dist(n, -1);
        std::queue<std::size_t> q;
        dist[src] = 0;
        q.push(src);
        while (!q.empty()) {
          const auto u = q.front();
          q.pop();
          for (auto v : adj[u])
            if (dist[v] < 0) {
              dist[v] = dist[u] + 1;
              q.push(v);
            }
        }
        std::size_t far = 0;
        for (int x : dist) {
          connected = connected && x >= 0;
          far += x >= static_cast<int>(threshold);
        }
        spread = spread && 2 * far >= n;
      }
      const auto lib = distance_spread_check(g);
      if (!(simple && regular && connected && g.connected())) ++structure_fail;
      if (!(spread && lib.holds && lib.threshold == threshold)) ++spread_fail;
    }
  }
  const double dim = dimension_lower_bound(1024, 4, 1, 1, 2, 1);
  const double avg = avg_distortion_lower_bound(1024, 4, 2, 2);
  const double coarse = coarse_obstruction(2, 1, 2, 1024, 4);
  const auto close = [](double v, double quoted) { return std::abs(v - quoted) <= 1e-3 * std::abs(quoted); };
  const bool formulas = close(dim, std::exp(5.0)) && close(dim, 148.41) && close(avg, 5.0 / std::sqrt(2.0)) &&
                        close(avg, 3.5355) && close(coarse, 2.0);
  return {structure_fail == 0 && spread_fail == 0 && formulas,
          fmt("%zu graphs, %zu structure failures, %zu spread failures; bounds %.5f %.5f %.5f", total, structure_fail,
              spread_fail, dim, avg, coarse)};
}

// 10. Two suite runs give identical bytes.
Outcome criterion10(const std::string& exe, std::uint64_t seed) {
  if (exe.empty()) return {false, "no nsgap executable given"};
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / fmt("nsgap_acceptance_%llu_a.json", static_cast<unsigned long long>(seed));
  const auto b = dir / fmt("nsgap_acceptance_%llu_b.json", static_cast<unsigned long long>(seed));
  int codes[2];
  for (int k = 0; k < 2; ++k) {
    const std::string cmd = "\"" + exe + "\" --seed " + std::to_string(seed) + " --output \"" +
                            (k == 0 ? a : b).string() + "\" suite --name acceptance";
    codes[k] = std::system(cmd.c_str());
  }
  const auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string ra = slurp(a), rb = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  const bool same = !ra.empty() && ra == rb;
  return {same && codes[0] == 0 && codes[1] == 0,
          fmt("exit codes %d/%d, %zu bytes, %s", codes[0], codes[1], ra.size(), same ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  const Rng root(seed);
  const std::vector<std::pair<double, std::function<Outcome()>>> criteria{
      {120, [&] { return criterion1(root.split(1)()); }},
      {0, [&] { return criterion2(root.split(2)()); }},
      {0, [&] { return criterion3(root.split(3)()); }},
      {0, [&] { return criterion4(root.split(4)()); }},
      {0, [&] { return criterion5(root.split(5)()); }},
      {600, [&] { return criterion6(root.split(6)()); }},
      {0, [&] { return criterion7(root.split(7)()); }},
      {0, [&] { return criterion8(root.split(8)()); }},
      {0, [&] { return criterion9(root.split(9)()); }},
      {0, [&] { return criterion10(exe, seed); }},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = criteria[k].second();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double limit = criteria[k].first;
    if (limit > 0 && seconds > limit) {
      o.passed = false;
      o.detail += fmt(" (time limit %.0f s exceeded)", limit);
    }
    std::printf("criterion %2zu: %s  %s [%.2f s]\n", k + 1, o.passed ? "PASS" : "FAIL", o.detail.c_str(), seconds);
    std::fflush(stdout);
    failed += o.passed ? 0 : 1;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
