#include "nsgap/expander.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "nsgap/error.hpp"
#include "nsgap/parallel.hpp"
#include "nsgap/random.hpp"
#include "nsgap/rayleigh.hpp"
#include "nsgap/spaces.hpp"

namespace nsgap {

namespace {

constexpr std::size_t kResampleBudget = 1000;
constexpr std::uint16_t kUnreached = std::numeric_limits<std::uint16_t>::max();

bool all_reached(const std::vector<std::uint16_t>& dist) {
  return std::none_of(dist.begin(), dist.end(), [](std::uint16_t v) { return v == kUnreached; });
}

}  // namespace

RegularGraph RegularGraph::from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  require(n >= 1, ErrorCode::InvalidArgument, "graph needs at least one vertex");
  require(n <= kMaxVertices, ErrorCode::InstanceTooLarge, "graph exceeds the vertex cap");
  RegularGraph g;
  g.neighbors_.resize(n);
  for (const auto& [u, v] : edges) {
    require(u < n && v < n, ErrorCode::InvalidArgument, "edge endpoint out of range");
    require(u != v, ErrorCode::InvalidArgument, "graph has a loop at " + std::to_string(u));
    g.neighbors_[u].push_back(static_cast<std::uint32_t>(v));
    g.neighbors_[v].push_back(static_cast<std::uint32_t>(u));
  }
  for (auto& nb : g.neighbors_) {
    std::sort(nb.begin(), nb.end());
    require(std::adjacent_find(nb.begin(), nb.end()) == nb.end(), ErrorCode::InvalidArgument,
            "graph has a multi-edge");
  }
  g.degree_ = g.neighbors_[0].size();
  for (std::size_t v = 0; v < n; ++v)
    require(g.neighbors_[v].size() == g.degree_, ErrorCode::InvalidArgument,
            "vertex " + std::to_string(v) + " has degree " + std::to_string(g.neighbors_[v].size()) + ", expected " +
                std::to_string(g.degree_));
  g.connected_ = all_reached(bfs_distances(g, 0));
  return g;
}

std::vector<std::pair<std::size_t, std::size_t>> RegularGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < n(); ++u)
    for (std::uint32_t v : neighbors_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

RegularGraph random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed) {
  require((n * d) % 2 == 0, ErrorCode::ParityViolation, "n * d must be even");
  require(d >= 3 && n > d, ErrorCode::InvalidArgument, "need d >= 3 and n > d");
  require(n <= RegularGraph::kMaxVertices, ErrorCode::InstanceTooLarge, "graph exceeds the vertex cap");
  const Rng root(seed);
  std::vector<std::size_t> stubs(n * d);
  for (std::size_t attempt = 0; attempt < kResampleBudget; ++attempt) {
    Rng rng = root.split(attempt);
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = i / d;
    rng.shuffle(std::span<std::size_t>(stubs));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(stubs.size() / 2);
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
      const auto u = std::min(stubs[i], stubs[i + 1]);
      const auto v = std::max(stubs[i], stubs[i + 1]);
      if (u == v) simple = false;
      edges.emplace_back(u, v);
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    RegularGraph g = RegularGraph::from_edges(n, edges);
    if (g.connected()) return g;
  }
  fail(ErrorCode::ResampleBudgetExceeded, "no simple connected sample within the resample budget");
}

StochasticChain graph_chain(const RegularGraph& g) {
  require(g.d() >= 1, ErrorCode::InvalidArgument, "graph has no edges");
  const std::size_t n = g.n();
  Matrix a(n, n);
  const double w = 1.0 / static_cast<double>(g.d());
  for (std::size_t u = 0; u < n; ++u)
    for (std::uint32_t v : g.neighbors(u)) a(u, v) = w;
  return build_reversible_chain(std::move(a), Vector(n, 1.0 / static_cast<double>(n)));
}

std::vector<std::uint16_t> bfs_distances(const RegularGraph& g, std::size_t source) {
  require(source < g.n(), ErrorCode::InvalidArgument, "source out of range");
  std::vector<std::uint16_t> dist(g.n(), kUnreached);
  std::queue<std::size_t> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::uint32_t v : g.neighbors(u))
      if (dist[v] == kUnreached) {
        dist[v] = static_cast<std::uint16_t>(dist[u] + 1);
        frontier.push(v);
      }
  }
  return dist;
}

Matrix graph_metric(const RegularGraph& g) {
  require(g.connected(), ErrorCode::Disconnected, "graph metric needs a connected graph");
  require(g.n() <= 512, ErrorCode::InstanceTooLarge, "dense graph metric is capped at 512 vertices");
  Matrix out(g.n(), g.n());
  for (std::size_t u = 0; u < g.n(); ++u) {
    const auto dist = bfs_distances(g, u);
    for (std::size_t v = 0; v < g.n(); ++v) out(u, v) = dist[v];
  }
  return out;
}

std::size_t spread_threshold(std::size_t n, std::size_t d) {
  require(d >= 2, ErrorCode::InvalidArgument, "degree must be at least 2");
  // Integer arithmetic avoids log rounding at exact powers.
  std::size_t k = 0;
  std::size_t power = d;
  while (2 * power <= n) {
    ++k;
    power *= d;
  }
  return k;
}

DistanceSpreadReport distance_spread_check(const RegularGraph& g) {
  require(g.connected(), ErrorCode::Disconnected, "distance spread needs a connected graph");
  DistanceSpreadReport report;
  report.threshold = spread_threshold(g.n(), g.d());
  std::vector<std::size_t> counts(g.n());
  parallel_for(g.n(), [&](std::size_t u) {
    const auto dist = bfs_distances(g, u);
    counts[u] = static_cast<std::size_t>(
        std::count_if(dist.begin(), dist.end(), [&](std::uint16_t v) { return v >= report.threshold; }));
  });
  report.min_count = *std::min_element(counts.begin(), counts.end());
  report.holds = 2 * report.min_count >= g.n();
  return report;
}

double dimension_lower_bound(double n, double d, double gamma, double distortion, double q, double c_q) {
  require(n > 0 && gamma > 0 && distortion > 0 && q > 0 && c_q >= 0, ErrorCode::InvalidArgument,
          "bound inputs must be positive");
  require(d >= 2, ErrorCode::InvalidArgument, "degree must be at least 2");
  if (std::isinf(distortion) || std::isinf(gamma)) return 1.0;
  return std::exp(c_q * std::log(n) / (gamma * distortion * std::log(d)));
}

double avg_distortion_lower_bound(double n, double d, double gamma, double q) {
  require(d >= 2, ErrorCode::InvalidArgument, "degree must be at least 2");
  require(n > 0 && gamma > 0 && q > 0, ErrorCode::InvalidArgument, "bound inputs must be positive");
  return std::log(n) / std::log(d) / std::pow(gamma, 1.0 / q);
}

double coarse_obstruction(double gamma, double omega1, double p, double n, double d) {
  require(gamma > 0 && omega1 >= 0 && p > 0 && n > 0 && d >= 2, ErrorCode::InvalidArgument,
          "obstruction inputs must be positive");
  return std::pow(2.0 * gamma, 1.0 / p) * omega1;
}

LpGapReport lp_gap_check(const StochasticChain& chain, double p, std::size_t dim, std::uint64_t seed) {
  require(chain.reversible(), ErrorCode::NotReversibleChain, "lp gap check needs a reversible chain");
  require(p >= 2.0, ErrorCode::BadExponentRange, "p must be at least 2");
  const auto spec = spectral_data(chain);
  LpGapReport report;
  report.bound = p * p * spec.gamma_classical;
  if (std::isinf(spec.gamma_classical)) {
    report.heuristic_gamma = std::numeric_limits<double>::infinity();
    report.vacuous = true;
    return report;
  }
  if (p == 2.0) {
    report.heuristic_gamma = gamma_hilbert_exact(chain).value;
  } else {
    HeuristicOptions options;
    options.seed = seed;
    report.heuristic_gamma = gamma_heuristic(chain, MetricSpace::lp(p, dim), 2.0, options).value;
  }
  report.ratio = report.heuristic_gamma / report.bound;
  return report;
}

}  // namespace nsgap
