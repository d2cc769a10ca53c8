#include "nsgap/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsgap/error.hpp"

namespace nsgap {

namespace {

constexpr double kRowTolerance = 1e-9;
constexpr double kBalanceTolerance = 1e-12;

Matrix validated_rows(Matrix a) {
  require(a.square() && !a.empty(), ErrorCode::DimensionMismatch, "transition matrix must be square");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double& v = a(i, j);
      require(std::isfinite(v), ErrorCode::NotStochastic, "non-finite transition entry");
      require(v >= -1e-12, ErrorCode::NotStochastic,
              "negative transition entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      v = std::max(v, 0.0);
      sum += v;
    }
    require(std::abs(sum - 1.0) <= kRowTolerance, ErrorCode::NotStochastic,
            "row " + std::to_string(i) + " sums to " + std::to_string(sum));
    for (std::size_t j = 0; j < n; ++j) a(i, j) /= sum;
  }
  return a;
}

Vector solve_stationary(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix system(n + 1, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) system(i, j) = a(j, i) - (i == j ? 1.0 : 0.0);
  for (std::size_t j = 0; j < n; ++j) system(n, j) = 1.0;
  Vector rhs(n + 1, 0.0);
  rhs[n] = 1.0;
  auto pi = least_squares(system, rhs);
  require(pi.has_value(), ErrorCode::NoPositiveStationary, "stationary vector is not unique (reducible chain)");
  // The solution must actually solve the system; least squares on an
  // inconsistent system would hide that.
  const Vector residual = system * *pi;
  for (std::size_t i = 0; i <= n; ++i)
    require(std::abs(residual[i] - rhs[i]) <= 1e-9, ErrorCode::NoPositiveStationary,
            "no stationary distribution solves pi A = pi");
  for (double v : *pi)
    require(v > 1e-14, ErrorCode::NoPositiveStationary, "stationary vector has a zero entry");
  double sum = 0.0;
  for (double v : *pi) sum += v;
  for (double& v : *pi) v /= sum;
  return *pi;
}

bool detailed_balance(const Matrix& a, std::span<const double> pi) {
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(pi[i] * a(i, j) - pi[j] * a(j, i)) > kBalanceTolerance) return false;
  return true;
}

void require_same_stationary(const StochasticChain& a, const StochasticChain& b) {
  require(a.size() == b.size(), ErrorCode::SizeMismatch, "chains differ in size");
  for (std::size_t i = 0; i < a.size(); ++i)
    require(std::abs(a.stationary()[i] - b.stationary()[i]) <= 1e-12, ErrorCode::MismatchedStationary,
            "chains have different stationary vectors");
}

}  // namespace

StochasticChain build_reversible_chain(Matrix a, std::span<const double> pi) {
  StochasticChain chain;
  chain.transition_ = validated_rows(std::move(a));
  const std::size_t n = chain.transition_.rows();
  require(pi.size() == n, ErrorCode::LengthMismatch, "stationary vector length differs from the chain size");
  double sum = 0.0;
  for (double v : pi) {
    require(std::isfinite(v) && v > 0.0, ErrorCode::NoPositiveStationary, "stationary vector must be positive");
    sum += v;
  }
  require(std::abs(sum - 1.0) <= 1e-12 * static_cast<double>(n) + 1e-12, ErrorCode::NotNormalized,
          "stationary vector must sum to 1");
  chain.stationary_.assign(pi.begin(), pi.end());
  for (double& v : chain.stationary_) v /= sum;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += chain.stationary_[i] * chain.transition_(i, j);
    require(std::abs(s - chain.stationary_[j]) <= 1e-9, ErrorCode::NotStationary,
            "given vector is not stationary for the chain");
  }
  chain.reversible_ = detailed_balance(chain.transition_, chain.stationary_);
  return chain;
}

StochasticChain build_reversible_chain(Matrix a) {
  StochasticChain chain;
  chain.transition_ = validated_rows(std::move(a));
  chain.stationary_ = solve_stationary(chain.transition_);
  chain.reversible_ = detailed_balance(chain.transition_, chain.stationary_);
  return chain;
}

Matrix symmetrization(const StochasticChain& chain) {
  const std::size_t n = chain.size();
  const auto& pi = chain.stationary();
  const auto& a = chain.transition();
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = std::sqrt(pi[i]) * a(i, j) / std::sqrt(pi[j]);
  // Reversibility makes s symmetric up to rounding; average it exactly.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s(i, j) = s(j, i) = 0.5 * (s(i, j) + s(j, i));
  return s;
}

SpectralData spectral_data(const StochasticChain& chain) {
  require(chain.reversible(), ErrorCode::NotReversibleChain, "spectral data needs a reversible chain");
  require(chain.size() <= StochasticChain::kMaxSpectralSize, ErrorCode::InstanceTooLarge,
          "chain too large for dense spectral analysis");
  auto eig = jacobi_eigen(symmetrization(chain));
  SpectralData out;
  out.eigenvalues = std::move(eig.values);
  out.eigenvectors = std::move(eig.vectors);
  const std::size_t n = out.eigenvalues.size();
  if (n < 2) {
    out.lambda2 = out.eigenvalues.empty() ? 1.0 : out.eigenvalues[0];
    out.gamma_classical = std::numeric_limits<double>::infinity();
    out.meanzero_norm = 0.0;
    return out;
  }
  out.lambda2 = out.eigenvalues[1];
  out.gamma_classical = out.lambda2 >= 1.0 - 1e-12 ? std::numeric_limits<double>::infinity()
                                                    : 1.0 / (1.0 - out.lambda2);
  out.meanzero_norm = std::max(std::abs(out.eigenvalues[1]), std::abs(out.eigenvalues[n - 1]));
  return out;
}

StochasticChain power(const StochasticChain& chain, unsigned t) {
  require(t >= 1, ErrorCode::InvalidPower, "power must be a positive integer");
  return build_reversible_chain(matrix_power(chain.transition(), t), chain.stationary());
}

StochasticChain lazy_power(const StochasticChain& chain, unsigned t) {
  require(t >= 1, ErrorCode::InvalidPower, "power must be a positive integer");
  Matrix lazy = chain.transition();
  for (std::size_t i = 0; i < lazy.rows(); ++i) lazy(i, i) += 1.0;
  lazy *= 0.5;
  return build_reversible_chain(matrix_power(lazy, t), chain.stationary());
}

StochasticChain mix(const StochasticChain& a, const StochasticChain& b, double w) {
  require(w >= 0.0 && w <= 1.0, ErrorCode::InvalidArgument, "mixing weight must lie in [0, 1]");
  require_same_stationary(a, b);
  return build_reversible_chain((1.0 - w) * a.transition() + w * b.transition(), a.stationary());
}

StochasticChain compose(const StochasticChain& a, const StochasticChain& b) {
  require_same_stationary(a, b);
  return build_reversible_chain(a.transition() * b.transition(), a.stationary());
}

StochasticChain identity_chain(std::span<const double> pi) {
  return build_reversible_chain(Matrix::identity(pi.size()), pi);
}

OpNormBoundReport meanzero_opnorm_bound_check(const StochasticChain& chain, double q, double k) {
  require(q == 2.0 && k == 1.0, ErrorCode::UnsupportedSpace,
          "only the Hilbert instance q = 2, K = 1 is supported");
  const auto spec = spectral_data(chain);
  OpNormBoundReport report;
  report.lhs = spec.meanzero_norm;
  report.gamma_plus =
      spec.meanzero_norm >= 1.0 - 1e-12 ? std::numeric_limits<double>::infinity() : 1.0 / (1.0 - spec.meanzero_norm);
  const double factor = (std::pow(2.0, q - 1.0) - 1.0) * std::pow(k, q) * report.gamma_plus;
  report.rhs = std::pow(std::max(0.0, 1.0 - 1.0 / factor), 1.0 / q);
  report.holds = report.lhs <= report.rhs + 1e-9;
  return report;
}

StochasticChain random_reversible_chain(std::size_t n, Rng& rng) {
  require(n >= 1, ErrorCode::InvalidArgument, "chain needs at least one state");
  const double style = rng.uniform();
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v = rng.uniform(0.05, 1.0);
      if (style < 0.3 && i != j && rng.uniform() < 0.5) v = 0.0;  // sparse
      if (style >= 0.3 && style < 0.5 && i == j) v = 0.0;          // no holding
      if (style >= 0.8 && i == j) v *= static_cast<double>(n);     // lazy
      w(i, j) = w(j, i) = v;
    }
  // Connect consecutive states so the chain stays irreducible.
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (w(i, i + 1) == 0.0) w(i, i + 1) = w(i + 1, i) = rng.uniform(0.05, 1.0);
  Vector row_sum(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_sum[i] += w(i, j);
    total += row_sum[i];
  }
  if (n == 1) return identity_chain(Vector{1.0});
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = w(i, j) / row_sum[i];
  Vector pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = row_sum[i] / total;
  return build_reversible_chain(std::move(a), pi);
}

StochasticChain random_reversible_chain_with_stationary(std::span<const double> pi, Rng& rng) {
  const std::size_t n = pi.size();
  require(n >= 1, ErrorCode::InvalidArgument, "chain needs at least one state");
  // Symmetric flows s_ij = pi_i a_ij; scale so every row uses at most its
  // mass, then put the remainder on the diagonal.
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s(i, j) = s(j, i) = rng.uniform() * pi[i] * pi[j];
  double scale = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += s(i, j);
    if (row > 0.0) scale = std::min(scale, pi[i] / row);
  }
  if (!std::isfinite(scale)) scale = 1.0;
  scale *= rng.uniform(0.5, 1.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) {
        a(i, j) = scale * s(i, j) / pi[i];
        off += a(i, j);
      }
    a(i, i) = std::max(0.0, 1.0 - off);
  }
  return build_reversible_chain(std::move(a), pi);
}

}  // namespace nsgap
