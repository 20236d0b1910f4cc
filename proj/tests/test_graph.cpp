#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "gsr/experiments.hpp"
#include "gsr/graph.hpp"
#include "support.hpp"

using namespace gsr;

TEST_CASE("laplacian of P3") {
  const Eigen::MatrixXd l = build_laplacian(path_graph(3));
  Eigen::MatrixXd expected(3, 3);
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK(l == expected);
}

TEST_CASE("laplacian of a single edge and of an edgeless graph") {
  Eigen::MatrixXd p2(2, 2);
  p2 << 1, -1, -1, 1;
  CHECK(build_laplacian(path_graph(2)) == p2);
  CHECK(build_laplacian(Graph(3, {})).isZero());
}

TEST_CASE("graph construction rejects bad edges") {
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::out_of_range);
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  const Graph g(3, {{2, 0}});
  CHECK(g.edges().front() == Edge{0, 2});
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(0, 1));
}

TEST_CASE("edge list loading") {
  SUBCASE("header, comments and 1-based indices") {
    std::istringstream in("# comment\n3 2\n1 2\n\n2 3\n");
    EdgeListOptions opts;
    opts.index_base = 1;
    const Graph g = load_edge_list(in, opts);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 2));
  }
  SUBCASE("header keeps isolated trailing vertices") {
    std::istringstream in("5 1\n0 1\n");
    CHECK(load_edge_list(in).num_vertices() == 5);
  }
  SUBCASE("no header infers the vertex count") {
    std::istringstream in("0 1\n1 2\n2 3\n");
    const Graph g = load_edge_list(in);
    CHECK(g.num_vertices() == 4);
    CHECK(g.num_edges() == 3);
  }
  SUBCASE("duplicates rejected by default and merged on request") {
    std::istringstream a("0 1\n1 0\n1 2\n");
    CHECK_THROWS_AS(load_edge_list(a), std::invalid_argument);
    std::istringstream b("0 1\n1 0\n1 2\n2 2\n");
    EdgeListOptions opts;
    opts.duplicates = DuplicatePolicy::kDeduplicate;
    opts.header = HeaderMode::kAbsent;
    const Graph g = load_edge_list(b, opts);
    CHECK(g.num_edges() == 2);
  }
  SUBCASE("malformed line reports its number") {
    std::istringstream in("0 1\n1 x\n");
    try {
      load_edge_list(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("index below the base") {
    std::istringstream in("0 1\n");
    EdgeListOptions opts;
    opts.index_base = 1;
    CHECK_THROWS_AS(load_edge_list(in, opts), std::out_of_range);
  }
  SUBCASE("round trip") {
    const Graph g = grid_graph(3, 4);
    std::stringstream s;
    write_edge_list(s, g);
    const Graph h = load_edge_list(s);
    CHECK(h.num_vertices() == g.num_vertices());
    CHECK(h.edges() == g.edges());
  }
}

TEST_CASE("hop distances") {
  const Graph p3 = path_graph(3);
  CHECK(bfs_distance(p3, 0, 2) == 2u);
  CHECK(bfs_distance(p3, 1, 1) == 0u);
  const Graph two(4, {{0, 1}, {2, 3}});
  CHECK_FALSE(bfs_distance(two, 0, 3).has_value());
  CHECK(bfs_distances(two, 0)[2] == kUnreachable);
  CHECK_FALSE(is_connected(two));
  CHECK(is_connected(p3));
}

TEST_CASE("induced subgraphs") {
  const Graph p3 = path_graph(3);
  const std::vector<Vertex> ends{0, 2};
  auto sub = induced_subgraph(p3, ends);
  CHECK(sub.graph.num_vertices() == 2);
  CHECK(sub.graph.num_edges() == 0);
  CHECK_FALSE(sub.connected);

  const std::vector<Vertex> first{1, 0};
  sub = induced_subgraph(p3, first);
  CHECK(sub.graph.num_edges() == 1);
  CHECK(sub.connected);
  CHECK(sub.vertices == std::vector<Vertex>{0, 1});

  const Graph g = grid_graph(3, 3);
  const std::vector<Vertex> all{0, 1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(induced_subgraph(g, all).graph.edges() == g.edges());

  CHECK_THROWS_AS(induced_subgraph(p3, std::vector<Vertex>{}), std::domain_error);
  CHECK_THROWS_AS(induced_subgraph(p3, std::vector<Vertex>{5}), std::out_of_range);
  CHECK_THROWS_AS(induced_subgraph(p3, std::vector<Vertex>{1, 1}), std::invalid_argument);
}

TEST_CASE("graph properties on random graphs") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = test::random_connected_graph(25, 0.15, rng);
    const Eigen::MatrixXd l = build_laplacian(g);

    CHECK((l * Eigen::VectorXd::Ones(25)).cwiseAbs().maxCoeff() < 1e-12);

    const Eigen::VectorXd f = test::gaussian(25, rng);
    CHECK(f.dot(l * f) == doctest::Approx(edge_energy(g, f)).epsilon(1e-12));

    std::uniform_int_distribution<Vertex> pick(0, 24);
    for (int t = 0; t < 30; ++t) {
      const Vertex a = pick(rng), b = pick(rng), c = pick(rng);
      CHECK(*bfs_distance(g, a, c) <= *bfs_distance(g, a, b) + *bfs_distance(g, b, c));
      CHECK(*bfs_distance(g, a, b) == *bfs_distance(g, b, a));
    }

    std::vector<Vertex> s;
    std::bernoulli_distribution keep(0.5);
    for (Vertex v = 0; v < 25; ++v)
      if (keep(rng)) s.push_back(v);
    if (s.empty()) s.push_back(0);
    std::size_t brute = 0;
    for (const Edge& e : g.edges()) {
      const bool in_u = std::find(s.begin(), s.end(), e.u) != s.end();
      const bool in_v = std::find(s.begin(), s.end(), e.v) != s.end();
      brute += in_u && in_v;
    }
    CHECK(induced_subgraph(g, s).graph.num_edges() == brute);
  }
}

TEST_CASE("bundled Minnesota road graph") {
  const Graph g = load_edge_list_file(GSR_DATA_DIR "/minnesota.edges");
  CHECK(g.num_vertices() == 2640);
  CHECK(g.num_edges() == 3302);
  CHECK(is_connected(g));
}
