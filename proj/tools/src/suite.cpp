#include "nsgap/cli/suite.hpp"

#include <string>

#include "nsgap/cli/batteries.hpp"
#include "nsgap/error.hpp"
#include "nsgap/random.hpp"

namespace nsgap::cli {

namespace {

struct Scale {
  std::size_t chains;
  std::size_t sandwich;
  std::size_t calculus;
  std::size_t mazur;
  std::size_t graph_seeds;
};

json criterion(int id, std::string_view name, json details, bool passed) {
  return {{"id", id}, {"name", name}, {"passed", passed}, {"details", std::move(details)}};
}

}  // namespace

json run_suite(std::string_view name, std::uint64_t seed) {
  Scale scale{};
  if (name == "acceptance")
    scale = {100, 50, 10000, 1000, 100};
  else if (name == "quick")
    scale = {10, 10, 500, 100, 5};
  else
    fail(ErrorCode::InvalidArgument, "unknown suite \"" + std::string(name) + "\"");

  const Rng root(seed);
  const auto sub = [&](std::uint64_t k) { return root.split(k)(); };
  json criteria = json::array();
  bool all = true;
  const auto add = [&](int id, std::string_view title, json details) {
    const bool ok = details.at("passed").get<bool>();
    all = all && ok;
    criteria.push_back(criterion(id, title, std::move(details), ok));
  };

  add(1, "hilbert gap identity", hilbert_gap_battery(scale.chains, 8, sub(1)));
  add(2, "brute-force oracle agreement", bruteforce_battery(scale.sandwich, sub(2)));
  add(3, "rayleigh calculus", calculus_battery(scale.calculus, sub(3)));
  add(4, "mazur suite", mazur_battery({{1.0, 2.0}, {1.5, 3.0}, {2.0, 4.0}}, scale.mazur, sub(4)));
  add(5, "john ellipsoid of cubes", john_battery(2, 6, sub(5)));
  json embed = embed_battery({2, 4, 8, 16}, sub(6));
  json shadow = embed;
  shadow["passed"] = embed.at("shadow_passed");
  add(6, "average john shadow", shadow);
  json duality = {{"forward_ok", embed.at("forward_ok")},
                  {"witness_trials", embed.at("witness_trials")},
                  {"witness_passed", embed.at("witness_passed")},
                  {"control_rejected", embed.at("control_rejected")},
                  {"passed", embed.at("duality_passed")}};
  add(7, "duality witness", duality);
  add(8, "mean-zero operator norm bound", opnorm_battery(scale.chains, 8, sub(8)));
  add(9, "expander pipeline", expander_battery({16, 32, 64, 128}, scale.graph_seeds, sub(9)));
  return {{"name", name}, {"criteria", criteria}, {"passed", all}};
}

}  // namespace nsgap::cli
