#include "nsgap/cli/batteries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "nsgap/embed.hpp"
#include "nsgap/expander.hpp"
#include "nsgap/io.hpp"
#include "nsgap/john.hpp"
#include "nsgap/mazur.hpp"
#include "nsgap/parallel.hpp"
#include "nsgap/random.hpp"
#include "nsgap/rayleigh.hpp"

namespace nsgap::cli {

namespace {

using io::number;

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector random_measure(std::size_t n, Rng& rng) {
  Vector pi(n);
  double sum = 0.0;
  for (double& v : pi) sum += (v = rng.uniform(0.1, 1.0));
  for (double& v : pi) v /= sum;
  return pi;
}

Matrix normal_matrix(std::size_t rows, std::size_t cols, Rng& rng, double scale = 1.0) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scale * rng.normal();
  return m;
}

MetricSpace random_normed_space(Rng& rng) {
  static constexpr double kExponents[] = {1.0, 2.0, 3.0, kInf};
  return MetricSpace::lp(kExponents[rng.below(4)], 1 + rng.below(3));
}

// Distances between random points of the plane, l_1 or l_2 at random.
Matrix random_finite_metric(std::size_t m, Rng& rng) {
  const Matrix pts = normal_matrix(m, 2, rng);
  return lp_distance_matrix(pts, rng.uniform() < 0.5 ? 1.0 : 2.0);
}

}  // namespace

json hilbert_gap_battery(std::size_t chains, std::size_t max_states, std::uint64_t seed) {
  struct Row {
    std::size_t n = 0;
    double exact = 0.0;
    double heuristic = 0.0;
    bool ok = false;
  };
  std::vector<Row> rows(chains);
  const Rng root(seed);
  // Sequential over chains: the heuristic parallelizes its restarts.
  for (std::size_t k = 0; k < chains; ++k) {
    Rng rng = root.split(k);
    const std::size_t n = 2 + rng.below(max_states - 1);
    const auto chain = random_reversible_chain(n, rng);
    HeuristicOptions options;
    options.seed = rng();
    Row& r = rows[k];
    r.n = n;
    r.exact = gamma_hilbert_exact(chain).value;
    r.heuristic = gamma_heuristic(chain, MetricSpace::euclidean(n), 2.0, options).value;
    r.ok = r.heuristic >= r.exact - 1e-6 && r.heuristic <= r.exact + 1e-9;
  }
  double worst_under = 0.0;
  double worst_over = -kInf;
  std::size_t failures = 0;
  for (const auto& r : rows) {
    worst_under = std::max(worst_under, r.exact - r.heuristic);
    worst_over = std::max(worst_over, r.heuristic - r.exact);
    failures += r.ok ? 0 : 1;
  }
  return {{"chains", chains},
          {"failures", failures},
          {"worst_underestimate", number(worst_under)},
          {"worst_overestimate", number(worst_over)},
          {"passed", failures == 0}};
}

json bruteforce_battery(std::size_t instances, std::uint64_t seed) {
  const auto flip = build_reversible_chain(Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  const auto two_points = MetricSpace::finite(Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}));
  json flip_values = json::object();
  bool flip_ok = true;
  for (double p : {1.0, 2.0, 3.0}) {
    const double v = gamma_bruteforce(flip, two_points, p).value;
    flip_values["p=" + std::to_string(static_cast<int>(p))] = number(v);
    flip_ok = flip_ok && v == 0.5;
  }

  std::vector<AbsGapSandwichReport> reports(instances);
  const Rng root(seed);
  parallel_for(instances, [&](std::size_t k) {
    Rng rng = root.split(k);
    const std::size_t n = 2 + rng.below(3);
    const std::size_t m = 2 + rng.below(3);
    const double q = rng.uniform() < 0.5 ? 1.0 : 2.0;
    const auto chain = random_reversible_chain(n, rng);
    reports[k] = abs_gap_sandwich_check(chain, MetricSpace::finite(random_finite_metric(m, rng)), q);
  });
  std::size_t failures = 0;
  double worst_lower = 0.0;  // max 2 gamma / gamma_+
  double worst_upper = 0.0;  // max gamma_+ / (2^{2q+1} gamma)
  for (const auto& r : reports) {
    failures += r.lower_ok && r.upper_ok ? 0 : 1;
    if (std::isfinite(r.gamma_plus_lazy) && r.gamma_plus_lazy > 0) {
      worst_lower = std::max(worst_lower, r.lower / r.gamma_plus_lazy);
      worst_upper = std::max(worst_upper, r.gamma_plus_lazy / r.upper);
    }
  }
  return {{"flip_chain", flip_values},
          {"flip_ok", flip_ok},
          {"sandwich_instances", instances},
          {"sandwich_failures", failures},
          {"worst_lower_ratio", number(worst_lower)},
          {"worst_upper_ratio", number(worst_upper)},
          {"passed", flip_ok && failures == 0}};
}

json calculus_battery(std::size_t trials, std::uint64_t seed) {
  std::vector<RayleighCalculusReport> reports(trials);
  const Rng root(seed);
  parallel_for(trials, [&](std::size_t k) {
    Rng rng = root.split(k);
    const std::size_t n = 2 + rng.below(5);
    const Vector pi = random_measure(n, rng);
    const auto a = random_reversible_chain_with_stationary(pi, rng);
    const auto b = random_reversible_chain_with_stationary(pi, rng);
    const auto space = random_normed_space(rng);
    Configuration x(space, normal_matrix(n, space.dim(), rng));
    while (!x.nonconstant()) x = Configuration(space, normal_matrix(n, space.dim(), rng));
    const double lambda = rng.uniform();
    const auto t = static_cast<unsigned>(1 + rng.below(4));
    const double p = rng.uniform(1.0, 4.0);
    reports[k] = rayleigh_calculus_check(x, a, b, lambda, t, p);
  });
  double affinity = 0.0;
  double dilution = 0.0;
  double product = kInf;
  double power = kInf;
  std::size_t failures = 0;
  for (const auto& r : reports) {
    affinity = std::max(affinity, r.affinity_error);
    dilution = std::max(dilution, r.dilution_error);
    product = std::min(product, r.product_slack);
    power = std::min(power, r.power_slack);
    failures += r.holds ? 0 : 1;
  }
  return {{"trials", trials},
          {"failures", failures},
          {"max_affinity_error", number(affinity)},
          {"max_dilution_error", number(dilution)},
          {"min_product_slack", number(product)},
          {"min_power_slack", number(power)},
          {"passed", failures == 0}};
}

json mazur_battery(const std::vector<std::pair<double, double>>& exponents, std::size_t trials, std::uint64_t seed) {
  const Rng root(seed);
  std::vector<MazurRoundtripReport> round(trials);
  parallel_for(trials, [&](std::size_t k) {
    Rng rng = root.split(k);
    const auto [p, q] = exponents[k % exponents.size()];
    const auto space = random_normed_space(rng);
    const std::size_t atoms = 1 + rng.below(6);
    WeightedVectorFunction f{random_measure(atoms, rng),
                             normal_matrix(atoms, space.dim(), rng, std::pow(10.0, rng.uniform(-3.0, 3.0)))};
    round[k] = mazur_roundtrip_check(f, space, p, q);
  });
  double max_error = 0.0;
  double max_transfer = 0.0;
  std::size_t round_failures = 0;
  for (const auto& r : round) {
    max_error = std::max(max_error, r.max_error);
    max_transfer = std::max(max_transfer, r.transfer_error);
    round_failures += r.holds ? 0 : 1;
  }

  json fits = json::array();
  bool fits_ok = true;
  const auto ladder = geometric_ladder(20);
  for (std::size_t e = 0; e < exponents.size(); ++e) {
    const auto [p, q] = exponents[e];
    Rng rng = root.split(trials + e);
    for (const LadderMode mode : {LadderMode::perturb, LadderMode::dilate}) {
      double fitted = kInf;
      double target = 0.0;
      for (std::size_t s = 0; s < 5; ++s) {
        const auto space = MetricSpace::euclidean(2);
        const std::size_t atoms = 2 + rng.below(4);
        const Vector w = random_measure(atoms, rng);
        WeightedVectorFunction f{w, normal_matrix(atoms, 2, rng)};
        WeightedVectorFunction g{w, normal_matrix(atoms, 2, rng)};
        f.values *= 0.9 / lp_norm(f, space, p);
        g.values *= 0.9 / lp_norm(g, space, p);
        const auto r = mazur_holder_check(f, g, space, p, q, ladder, mode);
        fitted = std::min(fitted, r.fitted_exponent);
        target = r.target_exponent;
        fits_ok = fits_ok && r.holds;
      }
      fits.push_back({{"p", p},
                      {"q", q},
                      {"ladder", mode == LadderMode::perturb ? "perturb" : "dilate"},
                      {"target", number(target)},
                      {"min_fitted", number(fitted)}});
    }
  }
  return {{"roundtrip_trials", trials},
          {"roundtrip_failures", round_failures},
          {"max_roundtrip_error", number(max_error)},
          {"max_transfer_error", number(max_transfer)},
          {"holder_fits", fits},
          {"passed", round_failures == 0 && fits_ok}};
}

json john_battery(std::size_t min_dim, std::size_t max_dim, std::uint64_t seed) {
  json dims = json::array();
  bool ok = true;
  for (std::size_t d = min_dim; d <= max_dim; ++d) {
    const auto space = MetricSpace::lp(kInf, d);
    const auto hd = hilbert_distance(space);
    const auto vertices = cube_vertices(d);
    const auto result = mvee(vertices);
    double containment = 0.0;
    for (const auto& v : vertices) containment = std::max(containment, result.ellipsoid.norm(v));
    const auto sandwich = sandwich_check(space, hd.h, hd.d_x, 2000, Rng(seed).split(d)());
    const bool row_ok = std::abs(hd.d_x - std::sqrt(static_cast<double>(d))) <= 1e-3 &&
                        result.iterations < 100000 && containment <= 1.0 + 1e-9 && sandwich.violations == 0;
    ok = ok && row_ok;
    dims.push_back({{"d", d},
                    {"d_x", number(hd.d_x)},
                    {"sqrt_d", number(std::sqrt(static_cast<double>(d)))},
                    {"mvee_iterations", result.iterations},
                    {"max_containment", number(containment)},
                    {"sandwich_violations", sandwich.violations},
                    {"ok", row_ok}});
  }
  return {{"dims", dims}, {"passed", ok}};
}

json embed_battery(const std::vector<std::size_t>& dims, std::uint64_t seed) {
  const Rng root(seed);
  json rows = json::array();
  std::vector<double> shape;
  bool lipschitz_ok = true;
  bool forward_ok = true;
  for (std::size_t idx = 0; idx < dims.size(); ++idx) {
    const std::size_t d = dims[idx];
    const auto sample = hypercube_corners(d, 32, root.split(idx)());
    const std::size_t n = sample.points.rows();
    const Matrix dist = lp_distance_matrix(sample.points, kInf);
    const Vector mu(n, 1.0 / static_cast<double>(n));
    const auto e = average_embed_hilbert(dist, mu, 0.5);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < e.factor.cols(); ++k) s += std::pow(e.factor(i, k) - e.factor(j, k), 2);
        worst = std::max(worst, std::sqrt(s) / std::sqrt(dist(i, j)) - 1.0);
      }
    lipschitz_ok = lipschitz_ok && worst <= 1e-6;

    Matrix walk = sample.adjacency;
    walk *= 1.0 / static_cast<double>(sample.face_dimension);
    const auto chain = lazy_power(build_reversible_chain(std::move(walk), mu), 1);
    const auto forward = duality_forward_check(e, chain, dist);
    forward_ok = forward_ok && forward.slack >= -1e-9;

    shape.push_back(e.d_achieved / std::sqrt(std::log(static_cast<double>(d) + 1.0)));
    rows.push_back({{"d", d},
                    {"points", n},
                    {"face_dimension", sample.face_dimension},
                    {"D_achieved", number(e.d_achieved)},
                    {"D_lower", number(e.d_lower)},
                    {"status", to_string(e.status)},
                    {"iterations", e.iterations},
                    {"max_lipschitz_excess", number(worst)},
                    {"shape_ratio", number(shape.back())},
                    {"forward_slack", number(forward.slack)}});
  }
  bool band_ok = true;
  for (double s : shape) band_ok = band_ok && s >= 0.1 * shape.front() && s <= 10.0 * shape.front();

  // Witness assembly from two random configurations on 3-point metrics.
  std::size_t witness_pass = 0;
  std::size_t control_rejected = 0;
  constexpr std::size_t kWitnessTrials = 20;
  for (std::size_t t = 0; t < kWitnessTrials; ++t) {
    Rng rng = root.split(dims.size() + t);
    const Matrix dist = random_finite_metric(3, rng);
    const Vector mu = random_measure(3, rng);
    std::vector<Matrix> configs{normal_matrix(3, 2, rng), normal_matrix(3, 2, rng)};
    const double l0 = rng.uniform(0.2, 0.8);
    const Vector lambda{l0, 1.0 - l0};
    const Vector w = witness_weights(configs, lambda, dist, mu, 2.0, 1.0);
    // A priori Lipschitz bound of the assembled map: (sum w_k L_k^2)^{1/2}.
    double bound = 0.0;
    for (std::size_t k = 0; k < configs.size(); ++k) {
      const auto lk = evaluate_average_distortion(configs[k], dist, mu, 2.0, 1.0).lip;
      bound += w[k] * lk * lk;
    }
    bound = std::sqrt(bound);
    const auto r = duality_witness_check(w, configs, dist, mu, 2.0, 1.0, bound, 1e-9);
    witness_pass += r.lipschitz_ok && r.average_ok ? 1 : 0;
    for (auto& c : configs) c *= 0.5;
    const auto control = duality_witness_check(w, configs, dist, mu, 2.0, 1.0, bound, 1e-9);
    control_rejected += control.average_ok ? 0 : 1;
  }
  return {{"embeddings", rows},
          {"lipschitz_ok", lipschitz_ok},
          {"band_ok", band_ok},
          {"forward_ok", forward_ok},
          {"witness_trials", kWitnessTrials},
          {"witness_passed", witness_pass},
          {"control_rejected", control_rejected},
          {"shadow_passed", lipschitz_ok && band_ok},
          {"duality_passed", forward_ok && witness_pass == kWitnessTrials && control_rejected == kWitnessTrials},
          {"passed", lipschitz_ok && band_ok && forward_ok && witness_pass == kWitnessTrials &&
                         control_rejected == kWitnessTrials}};
}

json opnorm_battery(std::size_t chains, std::size_t max_states, std::uint64_t seed) {
  const Rng root(seed);
  std::size_t failures = 0;
  double min_slack = kInf;
  for (std::size_t k = 0; k < chains; ++k) {
    Rng rng = root.split(k);
    const auto chain = random_reversible_chain(2 + rng.below(max_states - 1), rng);
    const auto r = meanzero_opnorm_bound_check(chain, 2.0, 1.0);
    failures += r.holds ? 0 : 1;
    min_slack = std::min(min_slack, r.rhs - r.lhs);
  }
  return {{"chains", chains}, {"failures", failures}, {"min_slack", number(min_slack)}, {"passed", failures == 0}};
}

json expander_battery(const std::vector<std::size_t>& sizes, std::size_t seeds, std::uint64_t seed) {
  json per_size = json::array();
  bool structure_ok = true;
  bool spread_ok = true;
  for (std::size_t n : sizes) {
    std::vector<char> structure(seeds);
    std::vector<char> spread(seeds);
    std::vector<std::size_t> min_count(seeds);
    parallel_for(seeds, [&](std::size_t s) {
      const auto g = random_regular_graph(n, 3, Rng(seed).split(n).split(s)());
      // Structure from the edge list alone.
      std::vector<std::size_t> degree(n, 0);
      std::set<std::pair<std::size_t, std::size_t>> seen;
      bool simple = true;
      for (const auto& [u, v] : g.edges()) {
        simple = simple && u != v && seen.insert({u, v}).second;
        ++degree[u];
        ++degree[v];
      }
      const bool regular = std::all_of(degree.begin(), degree.end(), [](std::size_t x) { return x == 3; });
      const auto dist = bfs_distances(g, 0);
      const bool connected =
          std::none_of(dist.begin(), dist.end(), [](std::uint16_t v) { return v == UINT16_MAX; });
      structure[s] = simple && regular && connected && g.connected();
      const auto r = distance_spread_check(g);
      spread[s] = r.holds;
      min_count[s] = r.min_count;
    });
    const auto ok_count = [](const std::vector<char>& v) {
      return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1));
    };
    structure_ok = structure_ok && ok_count(structure) == seeds;
    spread_ok = spread_ok && ok_count(spread) == seeds;
    per_size.push_back({{"n", n},
                        {"structure_ok", ok_count(structure)},
                        {"spread_ok", ok_count(spread)},
                        {"threshold", spread_threshold(n, 3)},
                        {"min_count", *std::min_element(min_count.begin(), min_count.end())}});
  }
  const double dim = dimension_lower_bound(1024, 4, 1, 1, 2, 1);
  const double avg = avg_distortion_lower_bound(1024, 4, 2, 2);
  const double coarse = coarse_obstruction(2, 1, 2, 1024, 4);
  const auto close = [](double v, double quoted) { return std::abs(v - quoted) <= 1e-3 * std::abs(quoted); };
  const bool bounds_ok = close(dim, 148.41) && close(avg, 3.5355) && close(coarse, 2.0);
  return {{"sizes", per_size},
          {"seeds", seeds},
          {"dimension_bound", number(dim)},
          {"avg_distortion_bound", number(avg)},
          {"coarse_obstruction", number(coarse)},
          {"structure_ok", structure_ok},
          {"spread_ok", spread_ok},
          {"bounds_ok", bounds_ok},
          {"passed", structure_ok && spread_ok && bounds_ok}};
}

}  // namespace nsgap::cli
