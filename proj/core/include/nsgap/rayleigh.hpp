#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "nsgap/ellipsoid_norm.hpp"
#include "nsgap/markov.hpp"
#include "nsgap/spaces.hpp"

namespace nsgap {

enum class GapKind { exact_hilbert, brute_force, heuristic_lower_bound, upper_bound_thm4 };

std::string_view to_string(GapKind kind);

// A value of gamma(A, d^p) (or gamma_+), possibly +inf, with how it was
// obtained and, when available, the configuration realizing it.
struct GapEstimate {
  double value = 0.0;
  GapKind kind = GapKind::heuristic_lower_bound;
  double p = 2.0;
  std::optional<Configuration> witness;
  // Second configuration for absolute gaps.
  std::optional<Configuration> witness_y;
};

inline constexpr double kMinExponent = 1.0;
inline constexpr double kMaxExponent = 8.0;
// Rayleigh quotients below this at a nonconstant configuration count as 0.
inline constexpr double kZeroQuotient = 1e-14;

// (sum pi_i a_ij d(x_i,x_j)^p) / (sum pi_i pi_j d(x_i,x_j)^p).
double rayleigh_quotient(const Configuration& x, const StochasticChain& chain, double p);
// Same quotient from a precomputed matrix of powered distances.
double rayleigh_quotient(const Matrix& powered, const StochasticChain& chain);

// Exact gamma over a finite metric by enumerating every configuration.
GapEstimate gamma_bruteforce(const StochasticChain& chain, const MetricSpace& space, double p);

struct HeuristicOptions {
  std::size_t restarts = 32;
  std::size_t iterations = 500;
  std::uint64_t seed = 0;
  double initial_step = 0.1;
};

// Lower bound on gamma over a normed space by multi-start descent on the
// Rayleigh quotient. Deterministic for a given seed.
GapEstimate gamma_heuristic(const StochasticChain& chain, const MetricSpace& space, double p,
                            const HeuristicOptions& options = {});

// 1/(1 - lambda_2) with the second eigenvector as witness on the real line.
GapEstimate gamma_hilbert_exact(const StochasticChain& chain);
// 1/(1 - max_{i>=2} |lambda_i|).
GapEstimate gamma_plus_hilbert_exact(const StochasticChain& chain);

struct RayleighCalculusReport {
  double affinity_error = 0.0;     // (i), absolute difference
  double dilution_error = 0.0;     // (ii)
  double product_slack = 0.0;      // (iii), rhs - lhs
  double power_slack = 0.0;        // (iv), rhs - lhs
  bool holds = false;
};

// Checks affinity, identity dilution, the product triangle inequality and
// the power bound for the quotient of x under chains a, b sharing pi.
RayleighCalculusReport rayleigh_calculus_check(const Configuration& x, const StochasticChain& a,
                                               const StochasticChain& b, double lambda, unsigned t, double p);

struct SquaredChainIdentity {
  double quotient = 0.0;  // R(x; B^2, |.|^2) with x centered
  double closed_form = 0.0;  // 1 - |Bx|^2 / |x|^2 in L_2(pi)
};

// Both sides of R(x; B^2, |.|^2) = 1 - |(B (x) Id) x|^2 / |x|^2 for a
// configuration in a Hilbertian space, after centering x at its pi-mean.
SquaredChainIdentity squared_chain_identity(const Configuration& x, const StochasticChain& b);

struct PointwiseEstimateReport {
  double hilbert_quotient = 0.0;  // R(x; B^2, |.|_H^2)
  double premise_threshold = 0.0;  // 1 - eta^2
  double normed_quotient = 0.0;  // R(x; B, |.|_X^2)
  double conclusion_threshold = 0.0;  // (1 - eta D)^2 / 4
  bool premise = false;
  bool conclusion = false;
  bool vacuous_or_holds = false;
};

// Sandwich-normalized estimate: if R(x; B^2, |.|_H^2) >= 1 - eta^2 then
// R(x; B, |.|_X^2) >= (1 - eta D)^2 / 4. The sandwich
// |y|_H <= |y|_X <= D |y|_H is verified on sampled directions and on the
// configuration's differences (NormSandwichViolated otherwise).
PointwiseEstimateReport pointwise_estimate_check(const Configuration& x, const StochasticChain& b,
                                                 const MetricSpace& space_x, const EllipsoidNorm& h, double d,
                                                 double eta, std::uint64_t seed = 0,
                                                 std::size_t sandwich_samples = 1000);

// ceil(log(2 D) / log(2 / (1 + lambda_2))), at least 1.
unsigned tstar(double lambda2, double d_x);

// C log(D_X + 1) / (1 - lambda_2); +inf when lambda_2 = 1.
double theorem4_upper_bound(double lambda2, double d_x, double c);
GapEstimate theorem4_upper_bound(const StochasticChain& chain, double d_x, double c);

// Exact gamma_+ over a finite metric by enumerating configuration pairs.
GapEstimate gamma_plus_bruteforce(const StochasticChain& chain, const MetricSpace& space, double q);

struct AbsGapSandwichReport {
  double gamma = 0.0;
  double gamma_plus_lazy = 0.0;
  double lower = 0.0;  // 2 gamma
  double upper = 0.0;  // 2^{2q+1} gamma
  bool lower_ok = false;
  bool upper_ok = false;
};

// 2 gamma(A) <= gamma_+((A + I)/2) <= 2^{2q+1} gamma(A) by enumeration.
AbsGapSandwichReport abs_gap_sandwich_check(const StochasticChain& chain, const MetricSpace& space, double q);

struct MarkovTypeReport {
  double ratio = 0.0;
  bool bound_holds = false;
};

// R(x; A^t, d^p) / (t R(x; A, d^p)); the bound ratio <= 1 is asserted for
// Hilbertian configurations with p = 2.
MarkovTypeReport markov_type_ratio(const StochasticChain& chain, const Configuration& x, unsigned t, double p);

}  // namespace nsgap
