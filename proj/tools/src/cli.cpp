#include "nsgap/cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsgap/calibrate.hpp"
#include "nsgap/cli/batteries.hpp"
#include "nsgap/cli/report.hpp"
#include "nsgap/cli/suite.hpp"
#include "nsgap/embed.hpp"
#include "nsgap/error.hpp"
#include "nsgap/expander.hpp"
#include "nsgap/io.hpp"
#include "nsgap/john.hpp"
#include "nsgap/mazur.hpp"
#include "nsgap/rayleigh.hpp"

namespace nsgap::cli {

namespace {

using io::number;

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::string> kCommands = {"gap",   "gap-plus",       "rayleigh-check", "mazur-check",
                                            "extrapolate", "john",     "embed",          "verify-duality",
                                            "expander",    "bounds",   "calibrate",      "suite"};

struct Global {
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
  std::string calibration;
};

// What a command hands back: its config, its result and the exit code to
// use after the report has been written.
struct Outcome {
  json config;
  json result;
  int code = kExitOk;
};

std::string provenance_of(GapKind kind) {
  switch (kind) {
    case GapKind::exact_hilbert: return "exact";
    case GapKind::brute_force: return "brute_force";
    case GapKind::heuristic_lower_bound: return "heuristic";
    case GapKind::upper_bound_thm4: return "formula";
  }
  return "unknown";
}

json gap_result(const GapEstimate& g) {
  json out = io::gap_estimate_to_json(g);
  out["gamma"] = tagged(g.value, provenance_of(g.kind));
  return out;
}

std::optional<double> calibrated(const Global& global, std::string_view name) {
  if (global.calibration.empty()) return std::nullopt;
  const json j = io::read_json_file(global.calibration);
  const auto it = j.find(std::string(name));
  if (it == j.end()) return std::nullopt;
  return io::to_number(it->is_object() ? it->at("value") : *it);
}

Vector measure_from(const std::string& spec, std::size_t n) {
  if (spec == "uniform") return Vector(n, 1.0 / static_cast<double>(n));
  Vector mu = io::vector_from_json(io::read_json_file(spec));
  require(mu.size() == n, ErrorCode::SizeMismatch, "measure length differs from the metric");
  return mu;
}

// --- subcommands -----------------------------------------------------------

struct GapArgs {
  std::string chain;
  std::string space;
  double p = 2.0;
  std::string method = "auto";
  std::size_t restarts = 32;
  std::size_t iterations = 500;
  double dx = 0.0;
  double c = 0.0;
};

Outcome cmd_gap(const Global& g, const GapArgs& a) {
  const auto chain = io::read_chain_file(a.chain);
  const json space_json = io::read_json_file(a.space);
  const auto space = io::metric_from_json(space_json);
  Outcome o;
  o.config = {{"chain", io::chain_to_json(chain)}, {"space", space_json}, {"p", a.p},
              {"method", a.method}, {"restarts", a.restarts}, {"iterations", a.iterations}};
  std::string method = a.method;
  if (method == "auto") {
    if (!space.normed())
      method = "brute";
    else if (space.hilbertian() && a.p == 2.0 && space.theta() == 1.0)
      method = "exact";
    else
      method = "heuristic";
  }
  if (method == "exact") {
    require(space.hilbertian() && a.p == 2.0 && space.theta() == 1.0, ErrorCode::UnsupportedSpace,
            "exact evaluation needs a Hilbertian space and p = 2");
    o.result = gap_result(gamma_hilbert_exact(chain));
  } else if (method == "brute") {
    o.result = gap_result(gamma_bruteforce(chain, space, a.p));
  } else if (method == "heuristic") {
    HeuristicOptions options{a.restarts, a.iterations, g.seed, 0.1};
    o.result = gap_result(gamma_heuristic(chain, space, a.p, options));
  } else if (method == "upper") {
    const auto fitted = calibrated(g, "C_thm4");
    const double c = a.c > 0 ? a.c : fitted.value_or(1.0);
    const double dx = a.dx > 0 ? a.dx : hilbert_distance(space).d_x;
    const auto estimate = theorem4_upper_bound(chain, dx, c);
    o.result = gap_result(estimate);
    o.result["gamma"] = tagged(estimate.value, a.c > 0 || !fitted ? "formula" : "fitted");
    o.result["C"] = tagged(c, a.c > 0 || !fitted ? "formula" : "fitted");
    o.result["D_X"] = number(dx);
    o.result["tstar"] = tstar(spectral_data(chain).lambda2, dx);
    o.config["C"] = c;
    o.config["dx"] = dx;
  } else {
    fail(ErrorCode::InvalidArgument, "unknown method \"" + method + "\"");
  }
  o.result["method"] = method;
  return o;
}

struct GapPlusArgs {
  std::string chain;
  std::string space;
  double q = 2.0;
};

Outcome cmd_gap_plus(const Global&, const GapPlusArgs& a) {
  const auto chain = io::read_chain_file(a.chain);
  const json space_json = io::read_json_file(a.space);
  const auto space = io::metric_from_json(space_json);
  Outcome o;
  o.config = {{"chain", io::chain_to_json(chain)}, {"space", space_json}, {"q", a.q}};
  if (!space.normed()) {
    o.result = gap_result(gamma_plus_bruteforce(chain, space, a.q));
    const auto s = abs_gap_sandwich_check(chain, space, a.q);
    o.result["lazy_sandwich"] = {{"gamma", tagged(s.gamma, "brute_force")},
                                 {"gamma_plus_lazy", tagged(s.gamma_plus_lazy, "brute_force")},
                                 {"lower_ok", s.lower_ok},
                                 {"upper_ok", s.upper_ok}};
  } else {
    require(space.hilbertian() && a.q == 2.0 && space.theta() == 1.0, ErrorCode::UnsupportedSpace,
            "absolute gaps are available by enumeration or for Hilbert spaces with q = 2");
    o.result = gap_result(gamma_plus_hilbert_exact(chain));
    if (a.q == 2.0) {
      const auto r = meanzero_opnorm_bound_check(chain, 2.0, 1.0);
      o.result["opnorm_bound"] = {
          {"lhs", tagged(r.lhs, "exact")}, {"rhs", tagged(r.rhs, "exact")}, {"holds", r.holds}};
    }
  }
  return o;
}

Outcome cmd_rayleigh_check(const Global& g, std::size_t trials) {
  Outcome o;
  o.config = {{"trials", trials}};
  o.result = calculus_battery(trials, g.seed);
  if (!o.result.at("passed").get<bool>()) o.code = kExitCheckFailed;
  return o;
}

struct MazurArgs {
  double p = 1.0;
  double q = 2.0;
  std::size_t trials = 1000;
};

Outcome cmd_mazur_check(const Global& g, const MazurArgs& a) {
  Outcome o;
  o.config = {{"p", a.p}, {"q", a.q}, {"trials", a.trials}};
  o.result = mazur_battery({{a.p, a.q}}, a.trials, g.seed);
  if (!o.result.at("passed").get<bool>()) o.code = kExitCheckFailed;
  return o;
}

struct ExtrapolateArgs {
  std::string chain;
  std::string space;
  double p = 1.0;
  double q = 2.0;
};

Outcome cmd_extrapolate(const Global& g, const ExtrapolateArgs& a) {
  const auto chain = io::read_chain_file(a.chain);
  const json space_json = io::read_json_file(a.space);
  const auto space = io::metric_from_json(space_json);
  HeuristicOptions options;
  options.seed = g.seed;
  const auto r = extrapolation_check(chain, space, a.p, a.q, options);
  Outcome o;
  o.config = {{"chain", io::chain_to_json(chain)}, {"space", space_json}, {"p", a.p}, {"q", a.q}};
  o.result = {{"gamma_p", gap_result(r.gamma_p)},
              {"gamma_q", gap_result(r.gamma_q)},
              {"left_ratio", number(r.left_ratio)},
              {"right_ratio", number(r.right_ratio)},
              {"finite_positive", r.finite_positive}};
  return o;
}

struct JohnArgs {
  std::string space;
  std::size_t samples = 1000;
};

Outcome cmd_john(const Global& g, const JohnArgs& a) {
  const json space_json = io::read_json_file(a.space);
  const auto space = io::metric_from_json(space_json);
  HilbertDistanceOptions options;
  options.seed = g.seed;
  const auto hd = hilbert_distance(space, options);
  const auto sandwich = sandwich_check(space, hd.h, hd.d_x, a.samples, g.seed);
  Outcome o;
  o.config = {{"space", space_json}, {"samples", a.samples}};
  o.result = {{"D_X", tagged(hd.d_x, hd.exact ? "exact" : "heuristic")},
              {"slack", number(hd.slack)},
              {"exact", hd.exact},
              {"mvee_iterations", hd.mvee_iterations},
              {"form", io::matrix_to_json(hd.h.form())},
              {"sandwich", {{"samples", sandwich.samples},
                            {"violations", sandwich.violations},
                            {"worst_lower", number(sandwich.worst_lower)},
                            {"worst_upper", number(sandwich.worst_upper)}}}};
  if (sandwich.violations > 0) o.code = kExitCheckFailed;
  return o;
}

struct EmbedArgs {
  std::string metric;
  std::optional<double> theta;
  std::string mu = "uniform";
  std::size_t max_iterations = 5000;
  std::string pairs_csv;
  std::string chain;  // verify-duality only
};

struct EmbedInput {
  json metric_json;
  Matrix dist;
  double theta = 1.0;
  Vector mu;
};

EmbedInput embed_input(const EmbedArgs& a) {
  EmbedInput in;
  in.metric_json = io::read_json_file(a.metric);
  const auto space = io::metric_from_json(in.metric_json);
  require(!space.normed(), ErrorCode::UnsupportedSpace, "embedding needs a finite metric");
  in.dist = space.base_distances();
  in.theta = a.theta.value_or(space.theta());
  in.mu = measure_from(a.mu, in.dist.rows());
  return in;
}

json embed_config(const EmbedArgs& a, const EmbedInput& in) {
  return {{"metric", in.metric_json}, {"theta", in.theta}, {"mu", io::vector_to_json(in.mu)},
          {"max_iterations", a.max_iterations}};
}

json embedding_result(const GramEmbedding& e) {
  json out = io::embedding_to_json(e);
  out["D_achieved"] = tagged(e.d_achieved, "heuristic");
  out["D_lower"] = tagged(e.d_lower, "exact");
  return out;
}

Outcome cmd_embed(const Global&, const EmbedArgs& a) {
  const auto in = embed_input(a);
  EmbedOptions options;
  options.max_iterations = a.max_iterations;
  const auto e = average_embed_hilbert(in.dist, in.mu, in.theta, options);
  if (!a.pairs_csv.empty()) {
    std::ofstream csv(a.pairs_csv);
    require(csv.good(), ErrorCode::InvalidArgument, "cannot write " + a.pairs_csv);
    io::write_pairwise_csv(csv, e, in.dist);
  }
  Outcome o;
  o.config = embed_config(a, in);
  o.result = embedding_result(e);
  if (e.status == SolverStatus::stalled) o.code = kExitNumerical;
  return o;
}

Outcome cmd_verify_duality(const Global&, const EmbedArgs& a) {
  const auto in = embed_input(a);
  const auto chain = io::read_chain_file(a.chain);
  EmbedOptions options;
  options.max_iterations = a.max_iterations;
  const auto e = average_embed_hilbert(in.dist, chain.stationary(), in.theta, options);
  const auto f = duality_forward_check(e, chain, in.dist);
  // The embedding itself as a one-term witness with weight 1 / spread.
  const std::vector<Matrix> configs{e.factor};
  const Vector lambda{1.0};
  const Vector w = witness_weights(configs, lambda, in.dist, e.mu, 2.0, in.theta);
  const auto wr = duality_witness_check(w, configs, in.dist, e.mu, 2.0, in.theta, e.d_achieved, 1e-9);
  Outcome o;
  o.config = embed_config(a, in);
  o.config["mu"] = io::vector_to_json(chain.stationary());
  o.config["chain"] = io::chain_to_json(chain);
  o.result = {{"embedding", embedding_result(e)},
              {"forward", {{"distortion", number(f.distortion)},
                           {"gamma_target", tagged(f.gamma_target, "exact")},
                           {"lhs", number(f.lhs)},
                           {"rhs", number(f.rhs)},
                           {"slack", number(f.slack)},
                           {"product_ok", f.product_ok},
                           {"gamma_source_le", f.gamma_source_le}}},
              {"witness", {{"lipschitz", number(wr.lipschitz)},
                           {"average_lhs", number(wr.average_lhs)},
                           {"average_rhs", number(wr.average_rhs)},
                           {"lipschitz_ok", wr.lipschitz_ok},
                           {"average_ok", wr.average_ok}}}};
  if (!(f.gamma_source_le && f.product_ok && wr.lipschitz_ok && wr.average_ok)) o.code = kExitCheckFailed;
  if (e.status == SolverStatus::stalled) o.code = kExitNumerical;
  return o;
}

struct ExpanderArgs {
  std::size_t n = 64;
  std::size_t d = 3;
  std::string graph;
  std::string write_graph;
  double q = 2.0;
  double p = 2.0;
  double omega1 = 1.0;
};

Outcome cmd_expander(const Global& g, const ExpanderArgs& a) {
  Outcome o;
  std::optional<RegularGraph> graph;
  if (!a.graph.empty()) {
    std::ifstream in(a.graph);
    require(in.good(), ErrorCode::ParseError, "cannot open " + a.graph);
    in >> std::ws;
    graph = in.peek() == '{' ? io::graph_from_json(io::read_json_file(a.graph)) : io::graph_from_edge_list(in);
    o.config = {{"graph", io::graph_to_json(*graph)}};
  } else {
    graph = random_regular_graph(a.n, a.d, g.seed);
    o.config = {{"n", a.n}, {"d", a.d}};
  }
  o.config["q"] = a.q;
  o.config["p"] = a.p;
  o.config["omega1"] = a.omega1;
  if (!a.write_graph.empty()) {
    std::ofstream out(a.write_graph);
    require(out.good(), ErrorCode::InvalidArgument, "cannot write " + a.write_graph);
    io::write_edge_list(out, *graph);
  }
  const auto chain = graph_chain(*graph);
  const auto spec = spectral_data(chain);
  const double n = static_cast<double>(graph->n());
  const double d = static_cast<double>(graph->d());
  o.result = {{"n", graph->n()},
              {"d", graph->d()},
              {"connected", graph->connected()},
              {"lambda2", tagged(spec.lambda2, "exact")},
              {"gamma", tagged(spec.gamma_classical, "exact")}};
  if (graph->connected()) {
    const auto s = distance_spread_check(*graph);
    o.result["distance_spread"] = {{"threshold", s.threshold}, {"min_count", s.min_count}, {"holds", s.holds}};
    if (std::isfinite(spec.gamma_classical) && d >= 2) {
      o.result["avg_distortion_lower_bound"] =
          tagged(avg_distortion_lower_bound(n, d, spec.gamma_classical, a.q), "formula");
      o.result["coarse_obstruction"] =
          tagged(coarse_obstruction(spec.gamma_classical, a.omega1, a.p, n, d), "formula");
    }
    if (!s.holds) o.code = kExitCheckFailed;
  }
  o.result["log_base"] = "natural";
  return o;
}

struct BoundsArgs {
  double n = 1024;
  double d = 4;
  double gamma = 1;
  double distortion = 1;
  double q = 2;
  std::optional<double> cq;
  double p = 2;
  double omega1 = 1;
  std::optional<double> lambda2;
  std::optional<double> dx;
  std::optional<double> c;
};

Outcome cmd_bounds(const Global& g, const BoundsArgs& a) {
  const auto fitted_cq = calibrated(g, "c_q");
  const double cq = a.cq.value_or(fitted_cq.value_or(1.0));
  const char* cq_prov = a.cq || !fitted_cq ? "formula" : "fitted";
  Outcome o;
  o.config = {{"n", a.n}, {"d", a.d}, {"gamma", a.gamma}, {"D", a.distortion}, {"q", a.q},
              {"c_q", cq}, {"p", a.p}, {"omega1", a.omega1}};
  o.result = {{"c_q", tagged(cq, cq_prov)},
              {"dimension_lower_bound", tagged(dimension_lower_bound(a.n, a.d, a.gamma, a.distortion, a.q, cq),
                                               cq_prov)},
              {"avg_distortion_lower_bound", tagged(avg_distortion_lower_bound(a.n, a.d, a.gamma, a.q), "formula")},
              {"coarse_obstruction", tagged(coarse_obstruction(a.gamma, a.omega1, a.p, a.n, a.d), "formula")},
              {"spread_scale", spread_threshold(static_cast<std::size_t>(a.n), static_cast<std::size_t>(a.d))},
              {"log_base", "natural"}};
  if (a.lambda2 && a.dx) {
    const auto fitted = calibrated(g, "C_thm4");
    const double c = a.c.value_or(fitted.value_or(1.0));
    const char* prov = a.c || !fitted ? "formula" : "fitted";
    o.config["lambda2"] = *a.lambda2;
    o.config["dx"] = *a.dx;
    o.config["C"] = c;
    o.result["theorem4_upper_bound"] = tagged(theorem4_upper_bound(*a.lambda2, *a.dx, c), prov);
    o.result["C_thm4"] = tagged(c, prov);
    if (*a.lambda2 < 1.0 - 1e-12) o.result["tstar"] = tstar(*a.lambda2, *a.dx);
  }
  return o;
}

struct CalibrateArgs {
  std::string constant = "C_thm4";
  FamilyDescriptor family;
  std::string out;
};

Outcome cmd_calibrate(const Global& g, CalibrateArgs a) {
  a.family.seed = g.seed;
  const auto c = constant_from_string(a.constant);
  const auto fit = calibrate(c, a.family);
  Outcome o;
  o.config = {{"constant", a.constant},
              {"family", {{"size", a.family.size},
                          {"max_states", a.family.max_states},
                          {"max_dim", a.family.max_dim},
                          {"max_vertices", a.family.max_vertices},
                          {"q", a.family.q},
                          {"p", a.family.p}}}};
  o.result = {{"constant", a.constant},
              {"value", tagged(fit.value, "fitted")},
              {"instances", fit.instances},
              {"ratios", io::vector_to_json(fit.ratios)}};
  if (!a.out.empty()) {
    json file = std::filesystem::exists(a.out) ? io::read_json_file(a.out) : json::object();
    file[a.constant] = {{"value", io::number(fit.value)}, {"instances", fit.instances}, {"seed", g.seed}};
    std::ofstream out(a.out);
    require(out.good(), ErrorCode::InvalidArgument, "cannot write " + a.out);
    out << file.dump(2) << '\n';
  }
  return o;
}

Outcome cmd_suite(const Global& g, const std::string& name) {
  Outcome o;
  o.config = {{"name", name}};
  o.result = run_suite(name, g.seed);
  if (!o.result.at("passed").get<bool>()) o.code = kExitCheckFailed;
  return o;
}

bool known_command(std::string_view s) { return std::find(kCommands.begin(), kCommands.end(), s) != kCommands.end(); }

// First token that is not a global option or its value.
std::optional<std::string> first_command_token(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--seed" || arg == "--format" || arg == "--output" || arg == "-o" || arg == "--calibration") {
      ++i;
      continue;
    }
    if (!arg.empty() && arg.front() == '-') continue;
    return std::string(arg);
  }
  return std::nullopt;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  if (const auto cmd = first_command_token(argc, argv); cmd && !known_command(*cmd)) {
    err << "nsgap: unknown subcommand '" << *cmd << "'\n";
    return kExitUnknownCommand;
  }

  CLI::App app{"Nonlinear spectral gaps and average-distortion embeddings", "nsgap"};
  app.set_version_flag("--version", NSGAP_VERSION);
  app.require_subcommand(1);
  Global global;
  app.add_option("--seed", global.seed, "64-bit seed for every random choice");
  app.add_option("--format", global.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", global.output, "write the report to this file");
  app.add_option("--calibration", global.calibration, "calibration file written by 'calibrate'");

  std::function<Outcome()> action;
  const auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  GapArgs gap;
  auto* c_gap = sub("gap", "nonlinear spectral gap of a chain over a space");
  c_gap->add_option("--chain", gap.chain, "chain file (JSON or text)")->required();
  c_gap->add_option("--space", gap.space, "metric or normed space JSON")->required();
  c_gap->add_option("--p", gap.p, "distance exponent");
  c_gap->add_option("--method", gap.method, "auto, exact, brute, heuristic or upper")
      ->check(CLI::IsMember({"auto", "exact", "brute", "heuristic", "upper"}));
  c_gap->add_option("--restarts", gap.restarts);
  c_gap->add_option("--iterations", gap.iterations);
  c_gap->add_option("--dx", gap.dx, "distance to Hilbert space for --method upper");
  c_gap->add_option("--C", gap.c, "constant for --method upper");
  c_gap->callback([&] { action = [&] { return cmd_gap(global, gap); }; });

  GapPlusArgs plus;
  auto* c_plus = sub("gap-plus", "absolute spectral gap");
  c_plus->add_option("--chain", plus.chain)->required();
  c_plus->add_option("--space", plus.space)->required();
  c_plus->add_option("--q", plus.q);
  c_plus->callback([&] { action = [&] { return cmd_gap_plus(global, plus); }; });

  std::size_t calculus_trials = 1000;
  auto* c_ray = sub("rayleigh-check", "randomized checks of the Rayleigh quotient calculus");
  c_ray->add_option("--trials", calculus_trials);
  c_ray->callback([&] { action = [&] { return cmd_rayleigh_check(global, calculus_trials); }; });

  MazurArgs mazur;
  auto* c_mazur = sub("mazur-check", "Mazur map round trip, norm transfer and Hoelder fit");
  c_mazur->add_option("--p", mazur.p);
  c_mazur->add_option("--q", mazur.q);
  c_mazur->add_option("--trials", mazur.trials);
  c_mazur->callback([&] { action = [&] { return cmd_mazur_check(global, mazur); }; });

  ExtrapolateArgs extra;
  auto* c_extra = sub("extrapolate", "compare gamma(A, d^p) with gamma(A, d^q)");
  c_extra->add_option("--chain", extra.chain)->required();
  c_extra->add_option("--space", extra.space)->required();
  c_extra->add_option("--p", extra.p);
  c_extra->add_option("--q", extra.q);
  c_extra->callback([&] { action = [&] { return cmd_extrapolate(global, extra); }; });

  JohnArgs john;
  auto* c_john = sub("john", "John ellipsoid and distance to Hilbert space");
  c_john->add_option("--space", john.space)->required();
  c_john->add_option("--samples", john.samples);
  c_john->callback([&] { action = [&] { return cmd_john(global, john); }; });

  EmbedArgs embed;
  const auto embed_options = [&](CLI::App* s) {
    s->add_option("--metric", embed.metric, "finite metric JSON")->required();
    s->add_option("--theta", embed.theta, "snowflake exponent in (0, 1]");
    s->add_option("--max-iterations", embed.max_iterations);
  };
  auto* c_embed = sub("embed", "quadratic-average-distortion Hilbert embedding");
  embed_options(c_embed);
  c_embed->add_option("--mu", embed.mu, "'uniform' or a JSON array file");
  c_embed->add_option("--pairs-csv", embed.pairs_csv, "write pairwise distances as CSV");
  c_embed->callback([&] { action = [&] { return cmd_embed(global, embed); }; });

  auto* c_dual = sub("verify-duality", "embed, then check both directions of the duality at the witness");
  embed_options(c_dual);
  c_dual->add_option("--chain", embed.chain, "reversible chain; its stationary vector is the measure")->required();
  c_dual->callback([&] { action = [&] { return cmd_verify_duality(global, embed); }; });

  ExpanderArgs exp;
  auto* c_exp = sub("expander", "random regular graph, spectrum, spread and bounds");
  c_exp->add_option("--n", exp.n);
  c_exp->add_option("--d", exp.d);
  c_exp->add_option("--graph", exp.graph, "edge list or JSON graph instead of sampling");
  c_exp->add_option("--write-graph", exp.write_graph, "write the edge list");
  c_exp->add_option("--q", exp.q);
  c_exp->add_option("--p", exp.p);
  c_exp->add_option("--omega1", exp.omega1);
  c_exp->callback([&] { action = [&] { return cmd_expander(global, exp); }; });

  BoundsArgs bounds;
  auto* c_bounds = sub("bounds", "evaluate the nonembeddability bound formulas");
  c_bounds->add_option("--n", bounds.n);
  c_bounds->add_option("--d", bounds.d);
  c_bounds->add_option("--gamma", bounds.gamma);
  c_bounds->add_option("--D", bounds.distortion);
  c_bounds->add_option("--q", bounds.q);
  c_bounds->add_option("--cq", bounds.cq);
  c_bounds->add_option("--p", bounds.p);
  c_bounds->add_option("--omega1", bounds.omega1);
  c_bounds->add_option("--lambda2", bounds.lambda2);
  c_bounds->add_option("--dx", bounds.dx);
  c_bounds->add_option("--C", bounds.c);
  c_bounds->callback([&] { action = [&] { return cmd_bounds(global, bounds); }; });

  CalibrateArgs cal;
  auto* c_cal = sub("calibrate", "fit an unspecified constant over an instance family");
  c_cal->add_option("--constant", cal.constant)->check(CLI::IsMember({"C_thm4", "c_q", "C_pq"}));
  c_cal->add_option("--family-size", cal.family.size);
  c_cal->add_option("--max-states", cal.family.max_states);
  c_cal->add_option("--max-dim", cal.family.max_dim);
  c_cal->add_option("--max-vertices", cal.family.max_vertices);
  c_cal->add_option("--q", cal.family.q);
  c_cal->add_option("--p", cal.family.p);
  c_cal->add_option("--out", cal.out, "calibration file to create or update");
  c_cal->callback([&] { action = [&] { return cmd_calibrate(global, cal); }; });

  std::string suite_name = "acceptance";
  auto* c_suite = sub("suite", "run a verification suite");
  c_suite->add_option("--name", suite_name)->check(CLI::IsMember({"acceptance", "quick"}));
  c_suite->callback([&] { action = [&] { return cmd_suite(global, suite_name); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << NSGAP_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "nsgap: " << e.what() << '\n';
    return kExitValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Outcome o = action();
    const json report = envelope(command, global.seed, o.config, std::move(o.result));
    const Format format = global.format == "csv" ? Format::csv : Format::json;
    if (global.output.empty()) {
      emit(out, report, format);
    } else {
      std::ofstream file(global.output);
      require(file.good(), ErrorCode::InvalidArgument, "cannot write " + global.output);
      emit(file, report, format);
    }
    return o.code;
  } catch (const Error& e) {
    err << "nsgap " << command << ": " << to_string(e.code()) << ": " << e.what() << '\n';
    return is_numerical_failure(e.code()) ? kExitNumerical : kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "nsgap " << command << ": ParseError: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace nsgap::cli
