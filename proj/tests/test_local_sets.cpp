#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "gsr/experiments.hpp"
#include "gsr/local_sets.hpp"
#include "support.hpp"

using namespace gsr;
using Kind = PartitionViolation::Kind;

namespace {

bool has_violation(const std::vector<PartitionViolation>& vs, Kind kind) {
  for (const auto& v : vs)
    if (v.kind == kind) return true;
  return false;
}

Graph star3() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}}); }

}  // namespace

TEST_CASE("greedy partition of P4") {
  const Partition p = greedy_partition(path_graph(4), 2);
  CHECK(p.sets == std::vector<std::vector<Vertex>>{{0, 1}, {2, 3}});
  CHECK_FALSE(p.has_centers());
}

TEST_CASE("greedy partition with n_max = 1 gives singletons") {
  const Graph g = grid_graph(4, 5);
  const Partition p = greedy_partition(g, 1);
  CHECK(p.size() == 20);
  for (const auto& s : p.sets) CHECK(s.size() == 1);
  CHECK_THROWS_AS(greedy_partition(g, 0), std::domain_error);
}

TEST_CASE("greedy partition absorbs isolated vertices") {
  const Graph g(5, {{0, 1}, {1, 2}});
  const Partition p = greedy_partition(g, 3);
  CHECK(validate_partition(g, p).empty());
  CHECK(p.size() == 3);
}

TEST_CASE("greedy partition hand trace on a star with a tail") {
  // 0 is the hub of leaves 1, 2, 3; 3 continues to 4.
  const Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
  // Round 1 seeds vertex 1 (degree 1, lowest index), the only neighbor is 0,
  // then the frontier {2, 3} has degrees {1, 2}, so 2 joins.
  const Partition p = greedy_partition(g, 3);
  CHECK(p.sets == std::vector<std::vector<Vertex>>{{0, 1, 2}, {3, 4}});
}

TEST_CASE("validate_partition") {
  const Graph p4 = path_graph(4);
  Partition ok{{{0, 1}, {2, 3}}, {}};
  CHECK(validate_partition(p4, ok).empty());

  Partition split{{{0, 2}, {1, 3}}, {}};
  auto vs = validate_partition(p4, split);
  std::size_t disconnected = 0;
  for (const auto& v : vs) disconnected += v.kind == Kind::kDisconnected;
  CHECK(disconnected == 2);

  Partition overlap{{{0, 1}, {1, 2, 3}}, {}};
  vs = validate_partition(p4, overlap);
  REQUIRE(has_violation(vs, Kind::kOverlap));
  for (const auto& v : vs)
    if (v.kind == Kind::kOverlap) CHECK(v.vertex == 1);

  CHECK(has_violation(validate_partition(p4, Partition{{{0, 1}, {2}}, {}}), Kind::kUncovered));
  CHECK(has_violation(validate_partition(p4, Partition{{{0, 1}, {}, {2, 3}}, {}}), Kind::kEmptySet));
  CHECK(has_violation(validate_partition(p4, Partition{{{0, 1}, {2, 3, 7}}, {}}), Kind::kOutOfRange));
  CHECK(has_violation(validate_partition(p4, Partition{{{0, 1}, {2, 3}}, {0}}), Kind::kCenterCount));
  CHECK(has_violation(validate_partition(p4, Partition{{{0, 1}, {2, 3}}, {0, 1}}),
                      Kind::kCenterNotMember));
  CHECK_THROWS_AS(require_valid_partition(p4, split), std::domain_error);
}

TEST_CASE("partition metrics examples") {
  const Graph p4 = path_graph(4);
  auto m = partition_metrics(p4, Partition::singletons(4));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(m.diameter[i] == 0);
    CHECK(m.cardinality[i] == 1);
    CHECK(m.max_multiple[i] == 0);
  }
  CHECK(m.c_max == 0.0);
  CHECK(*m.q_max == 0.0);

  m = partition_metrics(p4, Partition{{{0, 1}, {2, 3}}, {}});
  CHECK(m.diameter == std::vector<std::size_t>{1, 1});
  CHECK(m.c_max == doctest::Approx(std::sqrt(2.0)));
  CHECK_FALSE(m.q_max.has_value());

  m = partition_metrics(star3(), Partition{{{0, 1, 2, 3}}, {0}});
  CHECK(m.radius[0] == 1);
  CHECK(m.max_multiple[0] == 1);
  CHECK(m.diameter[0] == 2);
  CHECK(*m.q_max == doctest::Approx(1.0));
  CHECK(m.c_max == doctest::Approx(std::sqrt(8.0)));

  // Path 0-1-2-3 centered at 1: subtrees {0} and {2, 3}.
  m = partition_metrics(p4, Partition{{{0, 1, 2, 3}}, {1}});
  CHECK(m.radius[0] == 2);
  CHECK(m.max_multiple[0] == 2);
  CHECK(*m.q_max == doctest::Approx(2.0));

  CHECK_THROWS_AS(partition_metrics(p4, Partition{{{0, 2}, {1, 3}}, {}}), std::domain_error);
}

TEST_CASE("diameters are measured inside the set") {
  // Cycle 0-1-2-3-4-5-0; the set {0,1,2,3} is a path of length 3 inside,
  // although 0 and 3 are also joined through 4, 5 outside the set.
  const Graph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  const auto m = partition_metrics(c6, Partition{{{0, 1, 2, 3}, {4, 5}}, {}});
  CHECK(m.diameter[0] == 3);
  CHECK(m.diameter[1] == 1);
}

TEST_CASE("shortest-path tree ties attach to the lowest-index parent") {
  // Square 0-1, 0-2, 1-3, 2-3 plus pendant 4 on 3, rooted at 0: vertex 3
  // could hang off 1 or 2 and goes to 1, whose subtree is then {1, 3, 4}.
  const Graph g(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}});
  const auto m = partition_metrics(g, Partition{{{0, 1, 2, 3, 4}}, {0}});
  CHECK(m.max_multiple[0] == 3);
  CHECK(m.radius[0] == 3);
}

TEST_CASE("suggest_nmax") {
  CHECK(suggest_nmax(0.01) == 5);
  CHECK(suggest_nmax(0.25) == 1);
  CHECK(suggest_nmax(1.0 / 400.0) == 10);
  CHECK(suggest_nmax(4.0) == 1);
  CHECK_THROWS_AS(suggest_nmax(0.0), std::domain_error);
  CHECK_THROWS_AS(suggest_nmax(-1.0), std::domain_error);
}

TEST_CASE("greedy partition properties on random graphs") {
  Rng rng(21);
  for (int rep = 0; rep < 15; ++rep) {
    const Graph g = rep % 2 ? test::random_connected_graph(40, 0.08, rng)
                            : random_geometric_graph(60, 0.25, rng);
    for (std::size_t n_max : {1u, 2u, 3u, 5u, 8u}) {
      const Partition p = greedy_partition(g, n_max);
      CHECK(validate_partition(g, p).empty());
      for (const auto& s : p.sets) CHECK(s.size() <= n_max);
      CHECK(greedy_partition(g, n_max).sets == p.sets);

      // Centered copy: first vertex of each set as center.
      Partition centered = p;
      for (const auto& s : p.sets) centered.centers.push_back(s.front());
      const auto m = partition_metrics(g, centered);
      for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(m.radius[i] <= m.diameter[i]);
        CHECK(m.max_multiple[i] <= m.cardinality[i]);
      }
      CHECK(*m.q_max <= m.c_max + 1e-12);
    }
  }
}

TEST_CASE("partition serialization") {
  const Partition p{{{0, 1, 4}, {2, 3}}, {}};
  std::stringstream s;
  write_partition(s, p);
  CHECK(s.str() == "0 1 4\n2 3\n");
  CHECK(read_partition(s).sets == p.sets);

  const Partition c{{{0, 1}, {2, 3}}, {1, 2}};
  std::stringstream t;
  write_partition(t, c);
  CHECK(t.str() == "0 1 center=1\n2 3 center=2\n");
  const Partition back = read_partition(t);
  CHECK(back.sets == c.sets);
  CHECK(back.centers == c.centers);

  std::istringstream bad("0 1\n2 -3\n");
  CHECK_THROWS_AS(read_partition(bad), ParseError);
  std::istringstream mixed("0 1 center=0\n2 3\n");
  CHECK_THROWS_AS(read_partition(mixed), ParseError);
}

TEST_CASE("Minnesota greedy counts") {
  const Graph g = load_edge_list_file(GSR_DATA_DIR "/minnesota.edges");
  const Partition p4 = greedy_partition(g, 4);
  const Partition p8 = greedy_partition(g, 8);
  CHECK(validate_partition(g, p4).empty());
  CHECK(validate_partition(g, p8).empty());
  CHECK(p4.size() == 709);
  CHECK(p8.size() == 358);
}
