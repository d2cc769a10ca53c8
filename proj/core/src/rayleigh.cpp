#include "nsgap/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsgap/error.hpp"
#include "nsgap/parallel.hpp"
#include "nsgap/random.hpp"

namespace nsgap {

std::string_view to_string(GapKind kind) {
  switch (kind) {
    case GapKind::exact_hilbert: return "exact_hilbert";
    case GapKind::brute_force: return "brute_force";
    case GapKind::heuristic_lower_bound: return "heuristic_lower_bound";
    case GapKind::upper_bound_thm4: return "upper_bound_thm4";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kEnumerationCap = 10'000'000;

void check_exponent(double p) {
  require(p >= kMinExponent && p <= kMaxExponent, ErrorCode::BadExponentRange, "exponent p must lie in [1, 8]");
}

double inverse_quotient(double r) { return r < kZeroQuotient ? kInf : 1.0 / r; }

// Quotient of a powered-distance matrix under an arbitrary transition
// matrix t with stationary vector pi.
double quotient(const Matrix& powered, const Matrix& t, std::span<const double> pi) {
  const std::size_t n = pi.size();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      num += pi[i] * t(i, j) * powered(i, j);
      den += pi[i] * pi[j] * powered(i, j);
    }
  require(den > 0.0, ErrorCode::ConstantConfiguration, "configuration is constant");
  return num / den;
}

double scaled_tolerance(double magnitude) { return 1e-12 * std::max(1.0, std::abs(magnitude)); }

// Rayleigh quotient of a coordinate configuration and its gradient.
class QuotientEvaluator {
 public:
  QuotientEvaluator(const StochasticChain& chain, const MetricSpace& space, double p)
      : space_(space), p_(p), n_(chain.size()), d_(space.dim()), edge_(n_, n_), pair_(n_, n_) {
    const auto& pi = chain.stationary();
    const auto& a = chain.transition();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        edge_(i, j) = pi[i] * a(i, j) + pi[j] * a(j, i);
        pair_(i, j) = 2.0 * pi[i] * pi[j];
      }
  }

  double powered(double norm) const {
    const double dist = space_.theta() == 1.0 ? norm : std::pow(norm, space_.theta());
    return p_ == 1.0 ? dist : std::pow(dist, p_);
  }

  // Returns {numerator, denominator}.
  std::pair<double, double> sums(const Matrix& x) const {
    double num = 0.0;
    double den = 0.0;
    Vector v(d_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        for (std::size_t k = 0; k < d_; ++k) v[k] = x(i, k) - x(j, k);
        const double phi = powered(space_.norm(v));
        num += edge_(i, j) * phi;
        den += pair_(i, j) * phi;
      }
    return {num, den};
  }

  // Fills grad with the gradient of R at x (zero rows where undefined)
  // and returns R(x).
  double gradient(const Matrix& x, Matrix& grad) const {
    Matrix grad_num(n_, d_);
    Matrix grad_den(n_, d_);
    double num = 0.0;
    double den = 0.0;
    const double s = space_.theta() * p_;
    Vector v(d_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        for (std::size_t k = 0; k < d_; ++k) v[k] = x(i, k) - x(j, k);
        const double nv = space_.norm(v);
        const double phi = powered(nv);
        num += edge_(i, j) * phi;
        den += pair_(i, j) * phi;
        if (nv == 0.0) continue;
        const Vector g = space_.norm_subgradient(v);
        const double scale = s * std::pow(nv, s - 1.0);
        for (std::size_t k = 0; k < d_; ++k) {
          const double dphi = scale * g[k];
          grad_num(i, k) += edge_(i, j) * dphi;
          grad_num(j, k) -= edge_(i, j) * dphi;
          grad_den(i, k) += pair_(i, j) * dphi;
          grad_den(j, k) -= pair_(i, j) * dphi;
        }
      }
    grad = Matrix(n_, d_);
    if (den <= 0.0) return kInf;
    const double r = num / den;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < d_; ++k) grad(i, k) = (grad_num(i, k) - r * grad_den(i, k)) / den;
    return r;
  }

  // Translates x to pi-mean zero and rescales it to unit denominator.
  // Returns false when x is constant.
  bool normalize(Matrix& x, std::span<const double> pi) const {
    for (std::size_t k = 0; k < d_; ++k) {
      double mean = 0.0;
      for (std::size_t i = 0; i < n_; ++i) mean += pi[i] * x(i, k);
      for (std::size_t i = 0; i < n_; ++i) x(i, k) -= mean;
    }
    const double den = sums(x).second;
    if (!(den > 0.0) || !std::isfinite(den)) return false;
    x *= std::pow(den, -1.0 / (space_.theta() * p_));
    return true;
  }

 private:
  const MetricSpace& space_;
  double p_;
  std::size_t n_;
  std::size_t d_;
  Matrix edge_;
  Matrix pair_;
};

struct RestartResult {
  double quotient = kInf;
  Matrix x;
};

RestartResult descend(const QuotientEvaluator& eval, std::span<const double> pi, std::size_t n, std::size_t d,
                      const HeuristicOptions& options, Rng rng) {
  RestartResult out;
  Matrix x(n, d);
  bool ok = false;
  for (int attempt = 0; attempt < 16 && !ok; ++attempt) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < d; ++k) x(i, k) = rng.normal();
    ok = eval.normalize(x, pi);
  }
  if (!ok) return out;

  Matrix grad;
  double r = eval.gradient(x, grad);
  double step = options.initial_step;
  std::size_t stalls = 0;
  for (std::size_t it = 1; it <= options.iterations; ++it) {
    if (r < kZeroQuotient) break;
    const double gnorm = frobenius_norm(grad);
    if (gnorm == 0.0) break;
    Matrix trial = x - step * grad;
    if (!eval.normalize(trial, pi)) {
      step *= 0.5;
      continue;
    }
    Matrix trial_grad;
    const double trial_r = eval.gradient(trial, trial_grad);
    if (trial_r < r) {
      // Barzilai-Borwein step from the accepted move.
      const Matrix s = trial - x;
      const Matrix y = trial_grad - grad;
      const double sy = inner(s, y);
      const double ss = inner(s, s);
      step = sy > 0.0 ? std::clamp(ss / sy, 1e-12, 1e6) : std::min(2.0 * step, 1e6);
      stalls = (r - trial_r) <= 1e-16 * r ? stalls + 1 : 0;
      x = std::move(trial);
      grad = std::move(trial_grad);
      r = trial_r;
      if (stalls >= 5) break;
    } else {
      step *= 0.5;
      if (step < 1e-14) break;
    }
  }
  out.quotient = r;
  out.x = std::move(x);
  return out;
}

template <class Visit>
void enumerate_configurations(std::size_t n, std::size_t m, Visit&& visit) {
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    visit(idx);
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == m) idx[pos++] = 0;
    if (pos == n) break;
  }
}

std::size_t checked_count(std::size_t m, std::size_t exponent) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    count *= m;
    require(count <= kEnumerationCap, ErrorCode::InstanceTooLarge, "enumeration exceeds 10^7 configurations");
  }
  return count;
}

Matrix powered_base(const MetricSpace& space, double p) {
  const std::size_t m = space.point_count();
  Matrix out(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) out(a, b) = std::pow(space.distance(a, b), p);
  return out;
}

void check_bruteforce_instance(const StochasticChain& chain, const MetricSpace& space, double p) {
  check_exponent(p);
  require(chain.reversible(), ErrorCode::NotReversibleChain, "gap needs a reversible chain");
  require(!space.normed(), ErrorCode::UnsupportedSpace, "enumeration needs a finite metric");
  require(space.point_count() >= 2, ErrorCode::InvalidArgument, "metric needs at least two points");
  require(space.point_count() <= 8, ErrorCode::InstanceTooLarge, "enumeration allows at most 8 metric points");
  require(chain.size() <= 6, ErrorCode::InstanceTooLarge, "enumeration allows at most 6 states");
}

}  // namespace

double rayleigh_quotient(const Matrix& powered, const StochasticChain& chain) {
  require(powered.rows() == chain.size() && powered.cols() == chain.size(), ErrorCode::LengthMismatch,
          "configuration length differs from the chain size");
  return quotient(powered, chain.transition(), chain.stationary());
}

double rayleigh_quotient(const Configuration& x, const StochasticChain& chain, double p) {
  check_exponent(p);
  require(x.size() == chain.size(), ErrorCode::LengthMismatch, "configuration length differs from the chain size");
  return rayleigh_quotient(x.powered_distances(p), chain);
}

GapEstimate gamma_bruteforce(const StochasticChain& chain, const MetricSpace& space, double p) {
  check_bruteforce_instance(chain, space, p);
  const std::size_t n = chain.size();
  const std::size_t m = space.point_count();
  checked_count(m, n);
  const Matrix base = powered_base(space, p);
  const auto& pi = chain.stationary();
  const auto& a = chain.transition();
  double best = kInf;
  std::vector<std::size_t> best_idx;
  enumerate_configurations(n, m, [&](const std::vector<std::size_t>& idx) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double w = base(idx[i], idx[j]);
        num += pi[i] * a(i, j) * w;
        den += pi[i] * pi[j] * w;
      }
    if (den <= 0.0) return;
    const double r = num / den;
    if (r < best) {
      best = r;
      best_idx = idx;
    }
  });
  GapEstimate out;
  out.kind = GapKind::brute_force;
  out.p = p;
  out.value = inverse_quotient(best);
  if (!best_idx.empty()) out.witness.emplace(space, best_idx);
  return out;
}

GapEstimate gamma_heuristic(const StochasticChain& chain, const MetricSpace& space, double p,
                            const HeuristicOptions& options) {
  check_exponent(p);
  require(chain.reversible(), ErrorCode::NotReversibleChain, "gap needs a reversible chain");
  require(space.normed(), ErrorCode::UnsupportedSpace, "heuristic gap needs a normed space");
  require(options.restarts >= 1, ErrorCode::InvalidArgument, "at least one restart is required");
  require(chain.size() >= 2, ErrorCode::InvalidArgument, "chain needs at least two states");
  const std::size_t n = chain.size();
  const std::size_t d = space.dim();
  const QuotientEvaluator eval(chain, space, p);
  const Rng root(options.seed);
  std::vector<RestartResult> results(options.restarts);
  parallel_for(options.restarts, [&](std::size_t r) {
    results[r] = descend(eval, chain.stationary(), n, d, options, root.split(r));
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].quotient < results[best].quotient) best = r;
  GapEstimate out;
  out.kind = GapKind::heuristic_lower_bound;
  out.p = p;
  out.value = inverse_quotient(results[best].quotient);
  if (!results[best].x.empty()) {
    Configuration witness(space, results[best].x);
    // Report the quotient of the witness itself so the two always agree.
    out.value = inverse_quotient(rayleigh_quotient(witness, chain, p));
    out.witness.emplace(std::move(witness));
  }
  return out;
}

GapEstimate gamma_hilbert_exact(const StochasticChain& chain) {
  const auto spec = spectral_data(chain);
  const std::size_t n = chain.size();
  GapEstimate out;
  out.kind = GapKind::exact_hilbert;
  out.p = 2.0;
  out.value = spec.gamma_classical;
  if (n >= 2) {
    Matrix coords(n, 1);
    for (std::size_t i = 0; i < n; ++i) coords(i, 0) = spec.eigenvectors(i, 1) / std::sqrt(chain.stationary()[i]);
    out.witness.emplace(MetricSpace::euclidean(1), std::move(coords));
  }
  return out;
}

GapEstimate gamma_plus_hilbert_exact(const StochasticChain& chain) {
  const auto spec = spectral_data(chain);
  const std::size_t n = chain.size();
  GapEstimate out;
  out.kind = GapKind::exact_hilbert;
  out.p = 2.0;
  out.value = spec.meanzero_norm >= 1.0 - 1e-12 ? kInf : 1.0 / (1.0 - spec.meanzero_norm);
  if (n >= 2) {
    // x = y = f for the top mean-zero eigenvalue, y = -f for the bottom one.
    const bool bottom = std::abs(spec.eigenvalues[n - 1]) > std::abs(spec.eigenvalues[1]);
    const std::size_t col = bottom ? n - 1 : 1;
    Matrix x(n, 1);
    Matrix y(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      x(i, 0) = spec.eigenvectors(i, col) / std::sqrt(chain.stationary()[i]);
      y(i, 0) = bottom ? -x(i, 0) : x(i, 0);
    }
    out.witness.emplace(MetricSpace::euclidean(1), std::move(x));
    out.witness_y.emplace(MetricSpace::euclidean(1), std::move(y));
  }
  return out;
}

RayleighCalculusReport rayleigh_calculus_check(const Configuration& x, const StochasticChain& a,
                                               const StochasticChain& b, double lambda, unsigned t, double p) {
  check_exponent(p);
  require(lambda >= 0.0 && lambda <= 1.0, ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  require(t >= 1, ErrorCode::InvalidPower, "power must be a positive integer");
  require(a.size() == b.size() && x.size() == a.size(), ErrorCode::LengthMismatch, "sizes differ");
  const auto& pi = a.stationary();
  for (std::size_t i = 0; i < pi.size(); ++i)
    require(std::abs(pi[i] - b.stationary()[i]) <= 1e-12, ErrorCode::MismatchedStationary,
            "chains have different stationary vectors");
  const Matrix powered = x.powered_distances(p);
  const Matrix& ma = a.transition();
  const Matrix& mb = b.transition();
  const std::size_t n = a.size();
  const double ra = quotient(powered, ma, pi);
  const double rb = quotient(powered, mb, pi);

  RayleighCalculusReport report;
  const double r_mix = quotient(powered, lambda * ma + (1.0 - lambda) * mb, pi);
  const double mix_rhs = lambda * ra + (1.0 - lambda) * rb;
  report.affinity_error = std::abs(r_mix - mix_rhs);
  const double r_dilute = quotient(powered, lambda * ma + (1.0 - lambda) * Matrix::identity(n), pi);
  report.dilution_error = std::abs(r_dilute - lambda * ra);
  const double r_prod = quotient(powered, ma * mb, pi);
  const double prod_rhs = std::pow(ra, 1.0 / p) + std::pow(rb, 1.0 / p);
  report.product_slack = prod_rhs - std::pow(r_prod, 1.0 / p);
  const double r_pow = quotient(powered, matrix_power(mb, t), pi);
  const double pow_rhs = std::pow(static_cast<double>(t), p) * rb;
  report.power_slack = pow_rhs - r_pow;
  report.holds = report.affinity_error <= scaled_tolerance(mix_rhs) &&
                 report.dilution_error <= scaled_tolerance(lambda * ra) &&
                 report.product_slack >= -scaled_tolerance(prod_rhs) &&
                 report.power_slack >= -scaled_tolerance(pow_rhs);
  return report;
}

SquaredChainIdentity squared_chain_identity(const Configuration& x, const StochasticChain& b) {
  require(!x.on_finite_space() && x.space().hilbertian() && x.space().theta() == 1.0,
          ErrorCode::UnsupportedSpace, "identity needs a Hilbertian configuration");
  require(b.reversible(), ErrorCode::NotReversibleChain, "identity needs a reversible chain");
  require(x.size() == b.size(), ErrorCode::LengthMismatch, "configuration length differs from the chain size");
  const auto& pi = b.stationary();
  const std::size_t n = x.size();
  const std::size_t d = x.space().dim();
  Matrix centered = x.coordinates();
  for (std::size_t k = 0; k < d; ++k) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += pi[i] * centered(i, k);
    for (std::size_t i = 0; i < n; ++i) centered(i, k) -= mean;
  }
  const Configuration xc(x.space(), centered);
  const Matrix b2 = b.transition() * b.transition();
  SquaredChainIdentity out;
  out.quotient = quotient(xc.powered_distances(2.0), b2, pi);
  const Matrix bx = b.transition() * centered;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += pi[i] * std::pow(x.space().norm(bx.row(i)), 2.0);
    den += pi[i] * std::pow(x.space().norm(centered.row(i)), 2.0);
  }
  out.closed_form = 1.0 - num / den;
  return out;
}

PointwiseEstimateReport pointwise_estimate_check(const Configuration& x, const StochasticChain& b,
                                                 const MetricSpace& space_x, const EllipsoidNorm& h, double d,
                                                 double eta, std::uint64_t seed, std::size_t sandwich_samples) {
  require(space_x.normed() && space_x.theta() == 1.0, ErrorCode::UnsupportedSpace,
          "pointwise estimate needs an unsnowflaked normed space");
  require(!x.on_finite_space() && x.coordinates().cols() == space_x.dim() && h.dim() == space_x.dim(),
          ErrorCode::DimensionMismatch, "configuration, norm and Hilbertian norm dimensions differ");
  require(d >= 1.0, ErrorCode::InvalidArgument, "D must be at least 1");
  require(eta > 0.0 && eta * d < 1.0, ErrorCode::InvalidArgument, "eta must lie in (0, 1/D)");
  require(b.reversible(), ErrorCode::NotReversibleChain, "pointwise estimate needs a reversible chain");
  require(x.size() == b.size(), ErrorCode::LengthMismatch, "configuration length differs from the chain size");

  const std::size_t n = x.size();
  const std::size_t dim = space_x.dim();
  auto check_sandwich = [&](std::span<const double> y) {
    const double nh = h.norm(y);
    const double nx = space_x.norm(y);
    const double tol = 1e-9 * std::max(nh, nx);
    require(nh <= nx + tol && nx <= d * nh + tol, ErrorCode::NormSandwichViolated,
            "sampled vector violates |y|_H <= |y|_X <= D |y|_H");
  };
  Rng rng(seed);
  Vector y(dim);
  for (std::size_t s = 0; s < sandwich_samples; ++s) {
    for (double& c : y) c = rng.normal();
    check_sandwich(y);
  }
  const Matrix& coords = x.coordinates();
  Matrix hp(n, n);
  Matrix xp(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < dim; ++k) y[k] = coords(i, k) - coords(j, k);
      check_sandwich(y);
      hp(i, j) = hp(j, i) = std::pow(h.norm(y), 2.0);
      xp(i, j) = xp(j, i) = std::pow(space_x.norm(y), 2.0);
    }

  PointwiseEstimateReport report;
  const auto& pi = b.stationary();
  report.hilbert_quotient = quotient(hp, b.transition() * b.transition(), pi);
  report.normed_quotient = quotient(xp, b.transition(), pi);
  report.premise_threshold = 1.0 - eta * eta;
  report.conclusion_threshold = (1.0 - eta * d) * (1.0 - eta * d) / 4.0;
  report.premise = report.hilbert_quotient >= report.premise_threshold;
  report.conclusion = report.normed_quotient >= report.conclusion_threshold - 1e-12;
  report.vacuous_or_holds = !report.premise || report.conclusion;
  return report;
}

unsigned tstar(double lambda2, double d_x) {
  require(d_x >= 1.0, ErrorCode::InvalidArgument, "D_X must be at least 1");
  require(lambda2 >= -1.0 - 1e-12, ErrorCode::InvalidArgument, "lambda_2 must lie in [-1, 1)");
  require(lambda2 < 1.0 - 1e-12, ErrorCode::DegenerateGap, "lambda_2 = 1 leaves no spectral gap");
  if (lambda2 <= -1.0 + 1e-15) return 1;
  const double ratio = std::log(2.0 * d_x) / std::log(2.0 / (1.0 + lambda2));
  // Guard exact integer ratios against rounding up by one ulp.
  const double t = std::ceil(ratio * (1.0 - 1e-12));
  return static_cast<unsigned>(std::max(1.0, t));
}

double theorem4_upper_bound(double lambda2, double d_x, double c) {
  require(d_x >= 1.0, ErrorCode::InvalidArgument, "D_X must be at least 1");
  require(c > 0.0, ErrorCode::InvalidArgument, "constant must be positive");
  if (lambda2 >= 1.0 - 1e-12) return kInf;
  return c * std::log(d_x + 1.0) / (1.0 - lambda2);
}

GapEstimate theorem4_upper_bound(const StochasticChain& chain, double d_x, double c) {
  const auto spec = spectral_data(chain);
  GapEstimate out;
  out.kind = GapKind::upper_bound_thm4;
  out.p = 1.0;
  out.value = theorem4_upper_bound(spec.lambda2, d_x, c);
  return out;
}

GapEstimate gamma_plus_bruteforce(const StochasticChain& chain, const MetricSpace& space, double q) {
  check_bruteforce_instance(chain, space, q);
  const std::size_t n = chain.size();
  const std::size_t m = space.point_count();
  checked_count(m, 2 * n);
  const Matrix base = powered_base(space, q);
  const auto& pi = chain.stationary();
  const auto& a = chain.transition();
  double best = kInf;
  std::vector<std::size_t> best_idx;
  enumerate_configurations(2 * n, m, [&](const std::vector<std::size_t>& idx) {
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double w = base(idx[i], idx[n + j]);
        lhs += pi[i] * pi[j] * w;
        rhs += pi[i] * a(i, j) * w;
      }
    if (lhs <= 0.0) return;
    const double r = rhs / lhs;
    if (r < best) {
      best = r;
      best_idx = idx;
    }
  });
  GapEstimate out;
  out.kind = GapKind::brute_force;
  out.p = q;
  out.value = inverse_quotient(best);
  if (!best_idx.empty()) {
    out.witness.emplace(space, std::vector<std::size_t>(best_idx.begin(), best_idx.begin() + n));
    out.witness_y.emplace(space, std::vector<std::size_t>(best_idx.begin() + n, best_idx.end()));
  }
  return out;
}

AbsGapSandwichReport abs_gap_sandwich_check(const StochasticChain& chain, const MetricSpace& space, double q) {
  AbsGapSandwichReport report;
  report.gamma = gamma_bruteforce(chain, space, q).value;
  report.gamma_plus_lazy = gamma_plus_bruteforce(lazy_power(chain, 1), space, q).value;
  report.lower = 2.0 * report.gamma;
  report.upper = std::pow(2.0, 2.0 * q + 1.0) * report.gamma;
  auto le = [](double lhs, double rhs) {
    if (std::isinf(rhs)) return true;
    if (std::isinf(lhs)) return false;
    return lhs <= rhs * (1.0 + 1e-9);
  };
  report.lower_ok = le(report.lower, report.gamma_plus_lazy);
  report.upper_ok = le(report.gamma_plus_lazy, report.upper);
  return report;
}

MarkovTypeReport markov_type_ratio(const StochasticChain& chain, const Configuration& x, unsigned t, double p) {
  check_exponent(p);
  require(t >= 1, ErrorCode::InvalidPower, "power must be a positive integer");
  require(!x.on_finite_space() && x.space().hilbertian(), ErrorCode::UnsupportedSpace,
          "Markov type ratio needs a Hilbertian configuration");
  require(x.size() == chain.size(), ErrorCode::LengthMismatch, "configuration length differs from the chain size");
  const Matrix powered = x.powered_distances(p);
  const auto& pi = chain.stationary();
  const double r1 = quotient(powered, chain.transition(), pi);
  require(r1 > 0.0, ErrorCode::DegenerateGap, "quotient of the base chain vanishes");
  const double rt = quotient(powered, matrix_power(chain.transition(), t), pi);
  MarkovTypeReport report;
  report.ratio = rt / (static_cast<double>(t) * r1);
  report.bound_holds = report.ratio <= 1.0 + 1e-9;
  return report;
}

}  // namespace nsgap
