#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

// Randomized verification batteries shared by the single-purpose
// subcommands and the acceptance suite. Every battery is deterministic in
// its seed and returns a JSON summary with a boolean "passed".
namespace nsgap::cli {

using nlohmann::json;

// gamma_heuristic on l_2^n against 1/(1 - lambda_2) for random chains.
json hilbert_gap_battery(std::size_t chains, std::size_t max_states, std::uint64_t seed);

// Flip chain on the 2-point metric, then the lazy absolute-gap sandwich on
// random small chains and finite metrics.
json bruteforce_battery(std::size_t instances, std::uint64_t seed);

// Affinity, dilution, product and power rules of the Rayleigh quotient.
json calculus_battery(std::size_t trials, std::uint64_t seed);

// Round trip and norm transfer on random inputs, Hoelder fits on both
// ladders for each (p, q).
json mazur_battery(const std::vector<std::pair<double, double>>& exponents, std::size_t trials, std::uint64_t seed);

// MVEE of cube vertex sets.
json john_battery(std::size_t min_dim, std::size_t max_dim, std::uint64_t seed);

// Embeddings of cube corners under l_inf with theta = 1/2, plus forward
// duality against the lazy cube-graph chain and witness assembly.
json embed_battery(const std::vector<std::size_t>& dims, std::uint64_t seed);

// Mean-zero operator norm bound on random chains.
json opnorm_battery(std::size_t chains, std::size_t max_states, std::uint64_t seed);

// Random cubic graphs: structure, distance spread and bound values.
json expander_battery(const std::vector<std::size_t>& sizes, std::size_t seeds, std::uint64_t seed);

}  // namespace nsgap::cli
