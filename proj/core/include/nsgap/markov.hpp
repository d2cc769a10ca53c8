#pragma once

#include <span>

#include "nsgap/linalg.hpp"
#include "nsgap/random.hpp"

namespace nsgap {

// Row-stochastic matrix with a strictly positive stationary vector.
class StochasticChain {
 public:
  static constexpr std::size_t kMaxSpectralSize = 4096;

  std::size_t size() const noexcept { return transition_.rows(); }
  const Matrix& transition() const noexcept { return transition_; }
  const Vector& stationary() const noexcept { return stationary_; }
  bool reversible() const noexcept { return reversible_; }

 private:
  friend StochasticChain build_reversible_chain(Matrix a, std::span<const double> pi);
  friend StochasticChain build_reversible_chain(Matrix a);

  Matrix transition_;
  Vector stationary_;
  bool reversible_ = false;
};

// Validates a (rows sum to 1 within 1e-9, entries >= 0), renormalizes the
// rows, and attaches pi: the given vector (checked stationary) or the
// solution of pi A = pi, sum pi = 1. The reversibility flag records
// detailed balance at 1e-12; a non-reversible chain is not an error.
StochasticChain build_reversible_chain(Matrix a, std::span<const double> pi);
StochasticChain build_reversible_chain(Matrix a);

struct SpectralData {
  Vector eigenvalues;  // descending
  double lambda2 = 0.0;
  double gamma_classical = 0.0;  // 1/(1 - lambda2), +inf when lambda2 = 1
  double meanzero_norm = 0.0;    // max(|lambda_2|, |lambda_n|)
  // Column k is the eigenvector of D^{1/2} A D^{-1/2} for eigenvalues[k].
  Matrix eigenvectors;
};

// Spectrum of the symmetrization D^{1/2} A D^{-1/2}, D = diag(pi).
SpectralData spectral_data(const StochasticChain& chain);

Matrix symmetrization(const StochasticChain& chain);

// ((A + I)/2)^t with the same stationary vector; t >= 1.
StochasticChain lazy_power(const StochasticChain& chain, unsigned t);
// A^t; t >= 1.
StochasticChain power(const StochasticChain& chain, unsigned t);
// (1 - w) A + w B for chains sharing pi.
StochasticChain mix(const StochasticChain& a, const StochasticChain& b, double w);
// A B for chains sharing pi.
StochasticChain compose(const StochasticChain& a, const StochasticChain& b);
StochasticChain identity_chain(std::span<const double> pi);

struct OpNormBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gamma_plus = 0.0;
  bool holds = false;
};

// Compares the mean-zero operator norm of A on L_2(pi) with
// (1 - 1/((2^{q-1} - 1) K^q gamma_+))^{1/q}. Only the Hilbert instance
// q = 2, K = 1 is supported.
OpNormBoundReport meanzero_opnorm_bound_check(const StochasticChain& chain, double q, double k);

// Random reversible chain on n states: a random symmetric weight matrix
// normalized by its row sums. Some draws are made sparse or lazy so the
// spectrum covers [-1, 1].
StochasticChain random_reversible_chain(std::size_t n, Rng& rng);
// Random reversible chain with a prescribed stationary vector.
StochasticChain random_reversible_chain_with_stationary(std::span<const double> pi, Rng& rng);

}  // namespace nsgap
