#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nsgap/linalg.hpp"
#include "nsgap/markov.hpp"

namespace nsgap {

// Simple d-regular graph on vertices 0..n-1.
class RegularGraph {
 public:
  static constexpr std::size_t kMaxVertices = 100000;

  // Validates simplicity and regularity; the degree is read off vertex 0.
  static RegularGraph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t n() const noexcept { return neighbors_.size(); }
  std::size_t d() const noexcept { return degree_; }
  bool connected() const noexcept { return connected_; }
  const std::vector<std::uint32_t>& neighbors(std::size_t v) const { return neighbors_[v]; }
  // Each edge once, as (u, v) with u < v, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  std::vector<std::vector<std::uint32_t>> neighbors_;
  std::size_t degree_ = 0;
  bool connected_ = false;
};

// Configuration-model sample conditioned on simple and connected, by
// resampling up to 1000 times. Deterministic per seed.
RegularGraph random_regular_graph(std::size_t n, std::size_t d, std::uint64_t seed);

// Normalized adjacency matrix with uniform stationary vector.
StochasticChain graph_chain(const RegularGraph& g);

// Hop distances from one source; unreachable vertices get UINT16_MAX.
std::vector<std::uint16_t> bfs_distances(const RegularGraph& g, std::size_t source);
// Shortest-path metric as a dense matrix (connected graphs, n <= 512).
Matrix graph_metric(const RegularGraph& g);

// Largest k with 2 d^k <= n, i.e. floor(log_d(n/2)); 0 when n < 2d.
std::size_t spread_threshold(std::size_t n, std::size_t d);

struct DistanceSpreadReport {
  std::size_t threshold = 0;
  std::size_t min_count = 0;  // min over u of #{v : dist(u, v) >= threshold}
  bool holds = false;         // 2 min_count >= n
};

// For every vertex u, at least n/2 vertices lie at distance >= floor(log_d(n/2)).
DistanceSpreadReport distance_spread_check(const RegularGraph& g);

// n^{c_q / (gamma D ln d)}.
double dimension_lower_bound(double n, double d, double gamma, double distortion, double q, double c_q);
// log_d(n) / gamma^{1/q}.
double avg_distortion_lower_bound(double n, double d, double gamma, double q);
// (2 gamma)^{1/p} Omega_1: the value the lower modulus must stay below at
// scale floor(log_d(n/2)) for an equi-coarse embedding of the family.
double coarse_obstruction(double gamma, double omega1, double p, double n, double d);

struct LpGapReport {
  double heuristic_gamma = 0.0;  // lower bound for gamma(A, |.|^2 on l_p^dim)
  double bound = 0.0;            // p^2 / (1 - lambda_2)
  double ratio = 0.0;            // heuristic / bound, 0 when both are infinite
  bool vacuous = false;          // lambda_2 = 1
};

// Heuristic gap over l_p^dim with exponent 2 against p^2/(1 - lambda_2).
// p = 2 uses the exact Hilbert value.
LpGapReport lp_gap_check(const StochasticChain& chain, double p, std::size_t dim, std::uint64_t seed = 0);

}  // namespace nsgap
