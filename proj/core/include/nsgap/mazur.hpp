#pragma once

#include <cstdint>
#include <vector>

#include "nsgap/linalg.hpp"
#include "nsgap/markov.hpp"
#include "nsgap/rayleigh.hpp"
#include "nsgap/spaces.hpp"

namespace nsgap {

// A function on finitely many atoms: values.row(k) taken with weight
// weights[k]. Weights are a probability vector.
struct WeightedVectorFunction {
  Vector weights;
  Matrix values;

  std::size_t atoms() const noexcept { return weights.size(); }
};

// Checks weights (nonnegative, sum 1 within 1e-12) and the value shape
// against the space.
void validate(const WeightedVectorFunction& f, const MetricSpace& space);

// (sum_k w_k |f_k|^p)^{1/p}.
double lp_norm(const WeightedVectorFunction& f, const MetricSpace& space, double p);
// |f - g|_{L_p} for functions on the same atoms.
double lp_distance(const WeightedVectorFunction& f, const WeightedVectorFunction& g, const MetricSpace& space,
                   double p);

// Pointwise f / |f|^{1 - p/q}, zero kept at zero.
WeightedVectorFunction mazur_map(const WeightedVectorFunction& f, const MetricSpace& space, double p, double q);

struct MazurRoundtripReport {
  double max_error = 0.0;       // componentwise, relative to max(1, |f|)
  double transfer_error = 0.0;  // | |Mf|_q^q - |f|_p^p | relative to max(1, |f|_p^p)
  bool holds = false;
};

MazurRoundtripReport mazur_roundtrip_check(const WeightedVectorFunction& f, const MetricSpace& space, double p,
                                           double q);

enum class LadderMode {
  perturb,  // (f, f + s (g - f))
  dilate,   // (s f, s g)
};

struct MazurHolderReport {
  double target_exponent = 0.0;  // min(p/q, 1)
  double fitted_exponent = 0.0;  // least-squares log-log slope
  std::vector<double> scales;
  std::vector<double> per_scale_ratios;  // |Mf - Mg|_q / |f - g|_p^{target}
  bool holds = false;                    // fitted >= target - 0.1
};

// Fits the Hoelder exponent of the Mazur map along a geometric ladder of
// scales. Both f and g must have L_p norm at most 1 (NotNormalized).
MazurHolderReport mazur_holder_check(const WeightedVectorFunction& f, const WeightedVectorFunction& g,
                                     const MetricSpace& space, double p, double q, const std::vector<double>& scales,
                                     LadderMode mode = LadderMode::perturb);

// 2^-1, ..., 2^-count.
std::vector<double> geometric_ladder(std::size_t count, double ratio = 0.5);

struct ExtrapolationReport {
  GapEstimate gamma_p;
  GapEstimate gamma_q;
  double left_ratio = 0.0;   // gamma_p / gamma_q^{p/q}
  double right_ratio = 0.0;  // gamma_p / gamma_q
  bool finite_positive = false;
};

// Compares gamma(A, d^p) and gamma(A, d^q) for 1 <= p <= q using the best
// available evaluator: enumeration on finite spaces, the spectrum for
// Hilbert q = 2 or p = 2, and the heuristic otherwise.
ExtrapolationReport extrapolation_check(const StochasticChain& chain, const MetricSpace& space, double p, double q,
                                        const HeuristicOptions& options = {});

}  // namespace nsgap
