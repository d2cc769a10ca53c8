#include "nsgap/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "nsgap/error.hpp"

namespace nsgap::io {

namespace {

const json& field(const json& j, const char* key) {
  require(j.is_object(), ErrorCode::ParseError, "expected a JSON object");
  const auto it = j.find(key);
  require(it != j.end(), ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  return *it;
}

double theta_of(const json& j) { return j.contains("theta") ? to_number(j.at("theta")) : 1.0; }

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::ParseError, "cannot open " + path);
  return in;
}

}  // namespace

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double to_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(ErrorCode::ParseError, "expected a number, got " + j.dump());
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return rows;
}

Matrix matrix_from_json(const json& j) {
  require(j.is_array(), ErrorCode::ParseError, "matrix must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) {
    const Vector v = vector_from_json(r);
    rows.emplace_back(v.begin(), v.end());
  }
  for (const auto& r : rows)
    require(r.size() == rows.front().size(), ErrorCode::ParseError, "matrix rows differ in length");
  return Matrix::from_rows(rows);
}

json vector_to_json(std::span<const double> v) {
  json out = json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

Vector vector_from_json(const json& j) {
  require(j.is_array(), ErrorCode::ParseError, "expected an array of numbers");
  Vector v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(to_number(x));
  return v;
}

json chain_to_json(const StochasticChain& chain) {
  return {{"n", chain.size()},
          {"rows", matrix_to_json(chain.transition())},
          {"pi", vector_to_json(chain.stationary())},
          {"reversible", chain.reversible()}};
}

StochasticChain chain_from_json(const json& j) {
  Matrix a = matrix_from_json(field(j, "rows"));
  if (j.contains("n"))
    require(j.at("n").get<std::size_t>() == a.rows(), ErrorCode::DimensionMismatch, "\"n\" differs from the row count");
  if (j.contains("pi")) return build_reversible_chain(std::move(a), vector_from_json(j.at("pi")));
  return build_reversible_chain(std::move(a));
}

StochasticChain chain_from_text(std::istream& in) {
  std::size_t n = 0;
  require(static_cast<bool>(in >> n) && n > 0, ErrorCode::ParseError, "chain text must start with n");
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      require(static_cast<bool>(in >> a(i, k)), ErrorCode::ParseError, "chain text has too few entries");
  Vector pi;
  double v = 0.0;
  while (in >> v) pi.push_back(v);
  require(in.eof(), ErrorCode::ParseError, "chain text has a non-numeric token");
  if (pi.empty()) return build_reversible_chain(std::move(a));
  require(pi.size() == n, ErrorCode::LengthMismatch, "stationary vector length differs from n");
  return build_reversible_chain(std::move(a), pi);
}

json metric_to_json(const MetricSpace& space) {
  json out{{"kind", to_string(space.kind())}, {"theta", space.theta()}};
  switch (space.kind()) {
    case SpaceKind::finite:
      out["dist"] = matrix_to_json(space.base_distances());
      break;
    case SpaceKind::lp_norm:
      out["p"] = number(space.p());
      out["dim"] = space.dim();
      break;
    case SpaceKind::polytope_norm: {
      json rows = json::array();
      for (const auto& v : space.vertices()) rows.push_back(vector_to_json(v));
      out["vertices"] = std::move(rows);
      break;
    }
    case SpaceKind::ellipsoid_norm:
      out["form"] = matrix_to_json(space.ellipsoid().form());
      break;
  }
  return out;
}

MetricSpace metric_from_json(const json& j) {
  const auto kind = field(j, "kind").get<std::string>();
  const double theta = theta_of(j);
  if (kind == "finite") return MetricSpace::finite(matrix_from_json(field(j, "dist")), theta);
  if (kind == "lp") return MetricSpace::lp(to_number(field(j, "p")), field(j, "dim").get<std::size_t>(), theta);
  if (kind == "euclidean") return MetricSpace::euclidean(field(j, "dim").get<std::size_t>(), theta);
  if (kind == "polytope") {
    const Matrix v = matrix_from_json(field(j, "vertices"));
    std::vector<Vector> vertices;
    for (std::size_t i = 0; i < v.rows(); ++i) vertices.emplace_back(v.row(i).begin(), v.row(i).end());
    return MetricSpace::polytope(std::move(vertices), theta);
  }
  if (kind == "ellipsoid") return MetricSpace::ellipsoid(EllipsoidNorm(matrix_from_json(field(j, "form"))), theta);
  fail(ErrorCode::UnsupportedSpace, "unknown metric kind \"" + kind + "\"");
}

json configuration_to_json(const Configuration& x) {
  if (x.on_finite_space()) return {{"indices", x.indices()}};
  return {{"coordinates", matrix_to_json(x.coordinates())}};
}

json gap_estimate_to_json(const GapEstimate& g) {
  json out{{"value", number(g.value)}, {"kind", to_string(g.kind)}, {"p", number(g.p)}};
  if (g.witness) out["witness"] = configuration_to_json(*g.witness);
  if (g.witness_y) out["witness_y"] = configuration_to_json(*g.witness_y);
  return out;
}

json embedding_to_json(const GramEmbedding& e) {
  return {{"G", matrix_to_json(e.gram)},
          {"factor", matrix_to_json(e.factor)},
          {"theta", number(e.theta)},
          {"mu", vector_to_json(e.mu)},
          {"lip", number(e.lip)},
          {"spread", number(e.spread)},
          {"D_achieved", number(e.d_achieved)},
          {"D_lower", number(e.d_lower)},
          {"iterations", e.iterations},
          {"status", to_string(e.status)}};
}

json graph_to_json(const RegularGraph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.n()}, {"d", g.d()}, {"connected", g.connected()}, {"edges", std::move(edges)}};
}

RegularGraph graph_from_json(const json& j) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : field(j, "edges")) {
    require(e.is_array() && e.size() == 2, ErrorCode::ParseError, "edge must be a pair");
    edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return RegularGraph::from_edges(field(j, "n").get<std::size_t>(), edges);
}

RegularGraph graph_from_edge_list(std::istream& in, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t largest = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::size_t u = 0;
    std::size_t v = 0;
    if (!(ls >> u)) continue;
    require(static_cast<bool>(ls >> v), ErrorCode::ParseError, "edge line needs two endpoints: " + line);
    edges.emplace_back(u, v);
    largest = std::max({largest, u, v});
  }
  require(!edges.empty() || n > 0, ErrorCode::ParseError, "edge list is empty");
  return RegularGraph::from_edges(n > 0 ? n : largest + 1, edges);
}

void write_edge_list(std::ostream& out, const RegularGraph& g) {
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_pairwise_csv(std::ostream& out, const GramEmbedding& e, const Matrix& dist) {
  const std::size_t n = e.factor.rows();
  require(dist.rows() == n, ErrorCode::SizeMismatch, "metric size differs from the embedding");
  out << "i,j,metric,embedded\n";
  const auto old = out.precision(17);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < e.factor.cols(); ++k) s += std::pow(e.factor(i, k) - e.factor(j, k), 2);
      out << i << ',' << j << ',' << std::pow(dist(i, j), e.theta) << ',' << std::sqrt(s) << '\n';
    }
  out.precision(old);
}

StochasticChain read_chain_file(const std::string& path) {
  auto in = open(path);
  in >> std::ws;
  if (in.peek() == '{') {
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      fail(ErrorCode::ParseError, path + ": " + e.what());
    }
    return chain_from_json(j);
  }
  return chain_from_text(in);
}

json read_json_file(const std::string& path) {
  auto in = open(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace nsgap::io
