#include "nsgap/calibrate.hpp"

#include <algorithm>
#include <cmath>

#include "nsgap/embed.hpp"
#include "nsgap/error.hpp"
#include "nsgap/expander.hpp"
#include "nsgap/john.hpp"
#include "nsgap/parallel.hpp"
#include "nsgap/random.hpp"
#include "nsgap/rayleigh.hpp"

namespace nsgap {

std::string_view to_string(CalibratedConstant c) {
  switch (c) {
    case CalibratedConstant::c_thm4: return "C_thm4";
    case CalibratedConstant::c_q: return "c_q";
    case CalibratedConstant::c_pq: return "C_pq";
  }
  return "unknown";
}

CalibratedConstant constant_from_string(std::string_view name) {
  if (name == "C_thm4") return CalibratedConstant::c_thm4;
  if (name == "c_q") return CalibratedConstant::c_q;
  if (name == "C_pq") return CalibratedConstant::c_pq;
  fail(ErrorCode::InvalidArgument, "unknown constant \"" + std::string(name) + "\"");
}

namespace {

// Random reversible chain with lambda_2 bounded away from 1.
StochasticChain draw_chain(Rng& rng, std::size_t max_states) {
  const std::size_t n = 3 + rng.below(std::max<std::size_t>(max_states, 3) - 2);
  return random_reversible_chain(n, rng);
}

double thm4_ratio(std::size_t index, const FamilyDescriptor& f) {
  Rng rng = Rng(f.seed).split(index);
  const auto chain = draw_chain(rng, f.max_states);
  const std::size_t d = 1 + rng.below(f.max_dim);
  const auto space = MetricSpace::lp(kInfinity, d);
  const auto spec = spectral_data(chain);
  HeuristicOptions options;
  options.seed = rng();
  const double gamma = gamma_heuristic(chain, space, 2.0, options).value;
  const double dx = hilbert_distance(space).d_x;
  return gamma * (1.0 - spec.lambda2) / std::log(dx + 1.0);
}

double cq_ratio(std::size_t index, const FamilyDescriptor& f) {
  Rng rng = Rng(f.seed).split(index);
  const std::size_t max_half = std::max<std::size_t>(f.max_vertices / 2, 4);
  const std::size_t n = 2 * (4 + rng.below(max_half - 3));
  const auto g = random_regular_graph(n, 3, rng());
  const Matrix dist = graph_metric(g);
  const Vector mu(n, 1.0 / static_cast<double>(n));
  const auto e = average_embed_hilbert(dist, mu, 1.0);
  const double distortion = evaluate_average_distortion(e, dist, f.q).distortion;
  const double gamma = spectral_data(graph_chain(g)).gamma_classical;
  const double r = static_cast<double>(e.factor.cols());
  return gamma * distortion * std::log(3.0) * std::log(r) / std::log(static_cast<double>(n));
}

double cpq_ratio(std::size_t index, const FamilyDescriptor& f) {
  Rng rng = Rng(f.seed).split(index);
  const auto chain = draw_chain(rng, f.max_states);
  const auto report = lp_gap_check(chain, f.p, chain.size(), rng());
  return report.vacuous ? 0.0 : report.ratio;
}

}  // namespace

CalibrationFit calibrate(CalibratedConstant constant, const FamilyDescriptor& family) {
  require(family.size > 0, ErrorCode::EmptyFamily, "calibration family is empty");
  CalibrationFit fit;
  fit.constant = constant;
  fit.instances = family.size;
  fit.ratios.resize(family.size);
  parallel_for(family.size, [&](std::size_t i) {
    switch (constant) {
      case CalibratedConstant::c_thm4: fit.ratios[i] = thm4_ratio(i, family); break;
      case CalibratedConstant::c_q: fit.ratios[i] = cq_ratio(i, family); break;
      case CalibratedConstant::c_pq: fit.ratios[i] = cpq_ratio(i, family); break;
    }
  });
  if (constant == CalibratedConstant::c_q)
    fit.value = *std::min_element(fit.ratios.begin(), fit.ratios.end());
  else
    fit.value = *std::max_element(fit.ratios.begin(), fit.ratios.end());
  return fit;
}

}  // namespace nsgap
