#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "nsgap/embed.hpp"
#include "nsgap/error.hpp"
#include "nsgap/io.hpp"

using namespace nsgap;

namespace {

std::string data(const char* name) { return std::string(NSGAP_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("numbers keep non-finite values") {
  CHECK(io::number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(std::isnan(io::to_number(io::number(std::nan("")))));
  CHECK(io::to_number(io::number(0.25)) == 0.25);
  CHECK(std::isinf(io::to_number(io::json("inf"))));
  CHECK_THROWS_AS(io::to_number(io::json("many")), Error);
}

TEST_CASE("chain files") {
  const auto c = io::read_chain_file(data("cycle4_chain.json"));
  CHECK(c.size() == 4);
  CHECK(c.reversible());
  const auto lazy = io::read_chain_file(data("lazy_cycle4_chain.txt"));
  CHECK(lazy.transition()(0, 0) == 0.5);
  const auto flip = io::read_chain_file(data("flip_chain.json"));
  CHECK(flip.stationary()[0] == doctest::Approx(0.5));

  const auto back = io::chain_from_json(io::chain_to_json(lazy));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(back.stationary()[i] == lazy.stationary()[i]);
    for (std::size_t j = 0; j < 4; ++j) CHECK(back.transition()(i, j) == lazy.transition()(i, j));
  }
  std::istringstream text("2\n0.3 0.7\n0.7 0.3\n");
  CHECK(io::chain_from_text(text).transition()(0, 1) == 0.7);
  std::istringstream bad("2\n0.3 0.7\n");
  CHECK_THROWS_AS(io::chain_from_text(bad), Error);
  CHECK_THROWS_AS(io::read_chain_file(data("missing.json")), Error);
}

TEST_CASE("metric files round trip") {
  for (const char* name : {"cycle4.json", "two_points.json", "euclidean4.json", "linf2.json", "square_polytope.json"}) {
    const auto space = io::metric_from_json(io::read_json_file(data(name)));
    const auto again = io::metric_from_json(io::metric_to_json(space));
    CHECK(again.kind() == space.kind());
    CHECK(again.theta() == space.theta());
    if (space.normed()) {
      const Vector v(space.dim(), 0.3);
      CHECK(again.norm(v) == space.norm(v));
    } else {
      for (std::size_t i = 0; i < space.point_count(); ++i)
        for (std::size_t j = 0; j < space.point_count(); ++j) CHECK(again.distance(i, j) == space.distance(i, j));
    }
  }
  const auto linf = io::metric_from_json(io::read_json_file(data("linf2.json")));
  CHECK(std::isinf(linf.p()));
  CHECK_THROWS_AS(io::metric_from_json(io::json{{"kind", "torus"}}), Error);
}

TEST_CASE("graphs round trip") {
  std::ifstream in(data("k4_edges.txt"));
  const auto g = io::graph_from_edge_list(in);
  CHECK(g.n() == 4);
  CHECK(g.d() == 3);
  std::ostringstream out;
  io::write_edge_list(out, g);
  std::istringstream back(out.str());
  CHECK(io::graph_from_edge_list(back, 4).edges() == g.edges());
  CHECK(io::graph_from_json(io::graph_to_json(g)).edges() == g.edges());
}

TEST_CASE("embedding reports") {
  const Matrix d = Matrix::from_rows({{0, 1}, {1, 0}});
  const auto e = average_embed_hilbert(d, Vector{.5, .5}, 1.0);
  const auto j = io::embedding_to_json(e);
  CHECK(j.contains("D_achieved"));
  CHECK(j.at("status") == "converged");
  std::ostringstream csv;
  io::write_pairwise_csv(csv, e, d);
  std::istringstream lines(csv.str());
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "i,j,metric,embedded");
  std::getline(lines, row);
  CHECK(row.rfind("0,1,1,", 0) == 0);
}
