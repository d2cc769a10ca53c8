#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "nsgap/embed.hpp"
#include "nsgap/expander.hpp"
#include "nsgap/markov.hpp"
#include "nsgap/rayleigh.hpp"
#include "nsgap/spaces.hpp"

namespace nsgap::io {

using nlohmann::json;

// Doubles as JSON numbers; +-inf and nan become the strings "inf", "-inf", "nan".
json number(double v);
double to_number(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
json vector_to_json(std::span<const double> v);
Vector vector_from_json(const json& j);

// {"n": n, "rows": [[...]], "pi": [...]}; pi optional.
json chain_to_json(const StochasticChain& chain);
StochasticChain chain_from_json(const json& j);
// Whitespace text: n, then n rows of n entries, then optionally n entries of pi.
StochasticChain chain_from_text(std::istream& in);

// {"kind": "finite", "dist": [[...]]}, {"kind": "lp", "p": 3 | "inf", "dim": d},
// {"kind": "euclidean", "dim": d}, {"kind": "polytope", "vertices": [[...]]},
// {"kind": "ellipsoid", "form": [[...]]}; "theta" optional everywhere.
json metric_to_json(const MetricSpace& space);
MetricSpace metric_from_json(const json& j);

json configuration_to_json(const Configuration& x);
json gap_estimate_to_json(const GapEstimate& g);
json embedding_to_json(const GramEmbedding& e);

// {"n": n, "edges": [[u, v], ...]}.
json graph_to_json(const RegularGraph& g);
RegularGraph graph_from_json(const json& j);
// One "u v" pair per line, 0-indexed; blank lines and '#' comments skipped.
// The vertex count is one past the largest endpoint unless given.
RegularGraph graph_from_edge_list(std::istream& in, std::size_t n = 0);
void write_edge_list(std::ostream& out, const RegularGraph& g);

// "i,j,metric,embedded" rows for every pair i < j.
void write_pairwise_csv(std::ostream& out, const GramEmbedding& e, const Matrix& dist);

// Parses JSON (first non-space character '{') or the chain text format.
StochasticChain read_chain_file(const std::string& path);
json read_json_file(const std::string& path);

}  // namespace nsgap::io
