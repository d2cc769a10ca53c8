#include "nsgap/mazur.hpp"

#include <algorithm>
#include <cmath>

#include "nsgap/error.hpp"

namespace nsgap {

namespace {

void check_exponents(double p, double q) {
  require(p >= 1.0 && q >= 1.0 && std::isfinite(p) && std::isfinite(q), ErrorCode::BadExponentRange,
          "Mazur exponents must be finite and at least 1");
}

void check_same_atoms(const WeightedVectorFunction& f, const WeightedVectorFunction& g) {
  require(f.atoms() == g.atoms() && f.values.cols() == g.values.cols(), ErrorCode::LengthMismatch,
          "functions live on different atoms");
  for (std::size_t k = 0; k < f.atoms(); ++k)
    require(f.weights[k] == g.weights[k], ErrorCode::LengthMismatch, "functions use different weights");
}

WeightedVectorFunction combine(const WeightedVectorFunction& f, double a, const WeightedVectorFunction& g, double b) {
  WeightedVectorFunction out{f.weights, a * f.values + b * g.values};
  return out;
}

}  // namespace

void validate(const WeightedVectorFunction& f, const MetricSpace& space) {
  require(space.normed(), ErrorCode::UnsupportedSpace, "vector functions need a normed space");
  require(f.values.rows() == f.atoms(), ErrorCode::LengthMismatch, "one value row per atom is required");
  require(f.values.cols() == space.dim(), ErrorCode::DimensionMismatch, "values do not match the space dimension");
  double sum = 0.0;
  for (double w : f.weights) {
    require(std::isfinite(w) && w >= 0.0, ErrorCode::InvalidArgument, "weights must be nonnegative");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-12 * std::max<double>(1.0, static_cast<double>(f.atoms())),
          ErrorCode::NotNormalized, "weights must sum to 1");
}

double lp_norm(const WeightedVectorFunction& f, const MetricSpace& space, double p) {
  validate(f, space);
  double total = 0.0;
  for (std::size_t k = 0; k < f.atoms(); ++k) total += f.weights[k] * std::pow(space.norm(f.values.row(k)), p);
  return std::pow(total, 1.0 / p);
}

double lp_distance(const WeightedVectorFunction& f, const WeightedVectorFunction& g, const MetricSpace& space,
                   double p) {
  check_same_atoms(f, g);
  return lp_norm(combine(f, 1.0, g, -1.0), space, p);
}

WeightedVectorFunction mazur_map(const WeightedVectorFunction& f, const MetricSpace& space, double p, double q) {
  check_exponents(p, q);
  validate(f, space);
  WeightedVectorFunction out = f;
  if (p == q) return out;
  const double exponent = 1.0 - p / q;
  for (std::size_t k = 0; k < f.atoms(); ++k) {
    const double nv = space.norm(f.values.row(k));
    auto row = out.values.row(k);
    if (nv == 0.0) {
      std::fill(row.begin(), row.end(), 0.0);
      continue;
    }
    const double scale = std::pow(nv, -exponent);
    for (double& c : row) c *= scale;
  }
  return out;
}

MazurRoundtripReport mazur_roundtrip_check(const WeightedVectorFunction& f, const MetricSpace& space, double p,
                                           double q) {
  const auto forward = mazur_map(f, space, p, q);
  const auto back = mazur_map(forward, space, q, p);
  MazurRoundtripReport report;
  for (std::size_t k = 0; k < f.atoms(); ++k)
    for (std::size_t c = 0; c < f.values.cols(); ++c) {
      const double v = f.values(k, c);
      report.max_error = std::max(report.max_error, std::abs(back.values(k, c) - v) / std::max(1.0, std::abs(v)));
    }
  const double source = std::pow(lp_norm(f, space, p), p);
  const double target = std::pow(lp_norm(forward, space, q), q);
  report.transfer_error = std::abs(target - source) / std::max(1.0, source);
  report.holds = report.max_error <= 1e-12 && report.transfer_error <= 1e-12;
  return report;
}

std::vector<double> geometric_ladder(std::size_t count, double ratio) {
  require(ratio > 0.0 && ratio < 1.0, ErrorCode::InvalidArgument, "ladder ratio must lie in (0, 1)");
  std::vector<double> scales;
  double s = 1.0;
  for (std::size_t k = 0; k < count; ++k) {
    s *= ratio;
    scales.push_back(s);
  }
  return scales;
}

MazurHolderReport mazur_holder_check(const WeightedVectorFunction& f, const WeightedVectorFunction& g,
                                     const MetricSpace& space, double p, double q, const std::vector<double>& scales,
                                     LadderMode mode) {
  check_exponents(p, q);
  check_same_atoms(f, g);
  require(lp_norm(f, space, p) <= 1.0 + 1e-12 && lp_norm(g, space, p) <= 1.0 + 1e-12, ErrorCode::NotNormalized,
          "both functions need L_p norm at most 1");
  MazurHolderReport report;
  report.target_exponent = std::min(p / q, 1.0);
  std::vector<double> log_in;
  std::vector<double> log_out;
  for (double s : scales) {
    require(s > 0.0 && s <= 1.0, ErrorCode::InvalidArgument, "ladder scales must lie in (0, 1]");
    WeightedVectorFunction a = f;
    WeightedVectorFunction b = g;
    if (mode == LadderMode::perturb) {
      b = combine(f, 1.0 - s, g, s);
    } else {
      a = combine(f, s, f, 0.0);
      b = combine(g, s, g, 0.0);
    }
    const double in = lp_distance(a, b, space, p);
    if (in == 0.0) continue;  // identical pair carries no information
    const double out = lp_distance(mazur_map(a, space, p, q), mazur_map(b, space, p, q), space, q);
    report.scales.push_back(s);
    report.per_scale_ratios.push_back(out / std::pow(in, report.target_exponent));
    if (out > 0.0) {
      log_in.push_back(std::log(in));
      log_out.push_back(std::log(out));
    }
  }
  if (log_in.size() >= 2) {
    const double m = static_cast<double>(log_in.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < log_in.size(); ++k) {
      mx += log_in[k] / m;
      my += log_out[k] / m;
    }
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < log_in.size(); ++k) {
      sxy += (log_in[k] - mx) * (log_out[k] - my);
      sxx += (log_in[k] - mx) * (log_in[k] - mx);
    }
    report.fitted_exponent = sxx > 0.0 ? sxy / sxx : 0.0;
    report.holds = report.fitted_exponent >= report.target_exponent - 0.1;
  }
  return report;
}

namespace {

GapEstimate best_gap(const StochasticChain& chain, const MetricSpace& space, double p, const HeuristicOptions& options) {
  try {
    if (!space.normed()) return gamma_bruteforce(chain, space, p);
    if (space.hilbertian() && space.theta() == 1.0 && p == 2.0) return gamma_hilbert_exact(chain);
    return gamma_heuristic(chain, space, p, options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InstanceTooLarge || e.code() == ErrorCode::UnsupportedSpace)
      fail(ErrorCode::GapUnavailable, std::string("cannot evaluate the gap: ") + e.what());
    throw;
  }
}

}  // namespace

ExtrapolationReport extrapolation_check(const StochasticChain& chain, const MetricSpace& space, double p, double q,
                                        const HeuristicOptions& options) {
  require(p >= 1.0 && p <= q, ErrorCode::BadExponentRange, "extrapolation needs 1 <= p <= q");
  ExtrapolationReport report;
  report.gamma_p = best_gap(chain, space, p, options);
  report.gamma_q = p == q ? report.gamma_p : best_gap(chain, space, q, options);
  const double gp = report.gamma_p.value;
  const double gq = report.gamma_q.value;
  report.left_ratio = gp / std::pow(gq, p / q);
  report.right_ratio = gp / gq;
  report.finite_positive = std::isfinite(report.left_ratio) && std::isfinite(report.right_ratio) &&
                           report.left_ratio > 0.0 && report.right_ratio > 0.0;
  return report;
}

}  // namespace nsgap
