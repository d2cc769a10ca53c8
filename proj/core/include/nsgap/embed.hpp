#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "nsgap/linalg.hpp"
#include "nsgap/markov.hpp"

namespace nsgap {

enum class SolverStatus {
  converged,      // duality gap below tolerance
  iteration_cap,  // feasible best iterate after the iteration cap
  stalled,        // objective flat for 200 iterations while iterates stayed infeasible
};

std::string_view to_string(SolverStatus status);

// Points f_1..f_n in Hilbert space given by their Gram matrix and a
// factorization G = F F^T, with certificates against the snowflaked metric.
struct GramEmbedding {
  Matrix gram;
  Matrix factor;  // n x r
  double theta = 1.0;
  Vector mu;
  double lip = 0.0;        // max |f_i - f_j| / d_ij^theta
  double spread = 0.0;     // sum mu mu |f_i - f_j|^2 / sum mu mu d^{2 theta}
  double d_achieved = 0.0; // lip / sqrt(spread)
  double d_lower = 0.0;    // certified lower bound on the optimal distortion
  std::size_t iterations = 0;
  SolverStatus status = SolverStatus::converged;
  // Feasible objective values (normalized units), one per accepted iterate.
  std::vector<double> objective_trace;
};

struct EmbedOptions {
  std::size_t max_iterations = 5000;
  double gap_tolerance = 1e-7;
  std::size_t check_every = 25;
};

// Best quadratic-average-distortion embedding of (X, d^theta) with measure
// mu into Hilbert space: maximize sum mu_i mu_j |f_i - f_j|^2 over Gram
// matrices with |f_i - f_j| <= d_ij^theta. First-order primal-dual scheme
// with PSD projection; the returned Gram matrix is always feasible.
GramEmbedding average_embed_hilbert(const Matrix& dist, std::span<const double> mu, double theta,
                                    const EmbedOptions& options = {});

struct DistortionReport {
  double lip = 0.0;
  double spread = 0.0;
  double distortion = 0.0;  // +inf when spread = 0
};

// Lipschitz constant against d^theta, q-average spread and their ratio
// lip / spread^{1/q} for explicit points (rows of `points`, Euclidean).
DistortionReport evaluate_average_distortion(const Matrix& points, const Matrix& dist, std::span<const double> mu,
                                             double q, double theta);
DistortionReport evaluate_average_distortion(const GramEmbedding& embedding, const Matrix& dist, double q);

struct ForwardDualityReport {
  double distortion = 0.0;
  double gamma_target = 0.0;  // gamma(A, |.|^2) = 1/(1 - lambda_2)
  double lhs = 0.0;           // sum pi pi d^{theta q}
  double rhs = 0.0;           // D^q gamma_target sum pi a d^{theta q}
  double slack = 0.0;         // rhs - lhs
  double product_lhs = 0.0;   // sum pi pi |f_i - f_j|^2
  double product_rhs = 0.0;   // gamma_target sum pi a |f_i - f_j|^2
  bool product_ok = false;
  bool gamma_source_le = false;
};

// Evaluates sum pi pi d^{theta q} <= D^q gamma(A, |.|_2^q) sum pi a d^{theta q}
// on the embedding for a reversible chain whose stationary vector is the
// embedding's measure. Only q = 2 is supported.
ForwardDualityReport duality_forward_check(const GramEmbedding& embedding, const StochasticChain& chain,
                                           const Matrix& dist, double q = 2.0);

struct WitnessReport {
  double lipschitz = 0.0;
  double average_lhs = 0.0;  // sum mu mu |f(x_i) - f(x_j)|^q
  double average_rhs = 0.0;  // sum mu mu d^{theta q}
  bool lipschitz_ok = false;
  bool average_ok = false;
};

// Assembles f(x_i) = (w_k^{1/q} y_i(k))_k in the l_q-sum of Euclidean
// spaces and checks |f|_Lip <= D + eps and the average lower bound.
WitnessReport duality_witness_check(std::span<const double> weights, const std::vector<Matrix>& configs,
                                    const Matrix& dist, std::span<const double> mu, double q, double theta, double d,
                                    double eps);

// w_k = lambda_k sum mu mu d^{theta q} / sum mu mu |y(k)_r - y(k)_s|^q.
Vector witness_weights(const std::vector<Matrix>& configs, std::span<const double> lambda, const Matrix& dist,
                       std::span<const double> mu, double q, double theta);

// Pairwise distances between the rows of `points` in l_p (p = inf allowed).
Matrix lp_distance_matrix(const Matrix& points, double p);

struct CubeSample {
  Matrix points;     // rows are +-1 corners
  Matrix adjacency;  // 1 where two sampled corners differ in one coordinate
  std::size_t face_dimension = 0;
};

// All corners of {-1, 1}^d when 2^d <= max_points; otherwise the corners of
// a random face of dimension floor(log2 max_points) (other coordinates
// fixed at random signs, face coordinates chosen at random).
CubeSample hypercube_corners(std::size_t d, std::size_t max_points, std::uint64_t seed);

}  // namespace nsgap
