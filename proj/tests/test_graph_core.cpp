#include <doctest.h>

#include "outerspace/errors.hpp"
#include "support.hpp"

using namespace outerspace;
using testing::barbell_graph;
using testing::theta_graph;

namespace {

EdgePath open_path(const Graph& g, const std::string& text) { return EdgePath{parse_path(g, text), false}; }

// Random walk with backtracking allowed, starting anywhere.
std::vector<OrientedEdge> random_walk(const Graph& g, int len, std::mt19937& rng) {
  std::uniform_int_distribution<int> start(0, g.num_directions() - 1);
  std::vector<OrientedEdge> w{OrientedEdge::from_code(start(rng))};
  while (static_cast<int>(w.size()) < len) {
    const auto dirs = g.directions_at(g.head(w.back()));
    std::uniform_int_distribution<std::size_t> pick(0, dirs.size() - 1);
    w.push_back(dirs[pick(rng)]);
  }
  return w;
}

}  // namespace

TEST_CASE("reduce_path cancels backtracks") {
  const Graph rose = Graph::rose(2);
  CHECK(reduce_path(rose, EdgePath{}).empty());
  CHECK(reduce_path(rose, open_path(rose, "aA")).empty());
  CHECK(format_path(rose, reduce_path(rose, open_path(rose, "abBAa")).edges) == "a");
  CHECK(format_path(rose, reduce_path(rose, testing::loop_of(rose, "baAB")).edges).empty());
}

TEST_CASE("reduce_path agrees with string rewriting on the rose") {
  std::mt19937 rng(11);
  const Graph rose = Graph::rose(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto w = random_walk(rose, 1 + trial % 20, rng);
    const EdgePath r = reduce_path(rose, EdgePath{w, false});
    CHECK(format_word(r.edges) == testing::rewrite_reduce(format_word(w)));
  }
}

TEST_CASE("reduce_path property: idempotent, reversal involution") {
  std::mt19937 rng(12);
  const std::vector<Graph> graphs{Graph::rose(2), theta_graph(), barbell_graph()};
  for (int trial = 0; trial < 300; ++trial) {
    const Graph& g = graphs[static_cast<std::size_t>(trial) % graphs.size()];
    const EdgePath p{random_walk(g, 1 + trial % 15, rng), false};
    const EdgePath r = reduce_path(g, p);
    CHECK(is_reduced(r));
    CHECK(reduce_path(g, r) == r);
    CHECK(reversed(reversed(p)) == p);
    CHECK(reduce_path(g, reversed(p)) == reversed(r));
  }
}

TEST_CASE("check_path rejects non-incident edges") {
  const Graph b = barbell_graph();
  CHECK_THROWS_AS(check_path(b, open_path(b, "xy")), MalformedPathError);
  CHECK_NOTHROW(check_path(b, open_path(b, "xzy")));
  CHECK_THROWS_AS(check_path(b, EdgePath{parse_path(b, "xz"), true}), MalformedPathError);
}

TEST_CASE("cyclic reduction and canonical words") {
  const Graph rose = Graph::rose(2);
  CHECK(format_word(cyclic_reduce(parse_path(rose, "abA"))) == "b");
  CHECK(canonical_cyclic_word(parse_path(rose, "ba")) == canonical_cyclic_word(parse_path(rose, "AB")));
  CHECK(canonical_cyclic_word(parse_path(rose, "ab")) != canonical_cyclic_word(parse_path(rose, "aB")));
}

TEST_CASE("core") {
  const Graph tree(3, {{0, 1, "p"}, {1, 2, "q"}});
  CHECK(core(tree, all_edges(tree)).empty());
  const Graph b = barbell_graph();
  CHECK(core(b, EdgeSet{0, 2}) == EdgeSet{0});
  CHECK(core(b, all_edges(b)) == all_edges(b));
  CHECK(core(theta_graph(), EdgeSet{0, 1}) == EdgeSet{0, 1});
}

TEST_CASE("is_forest") {
  const Graph tree(2, {{0, 1, "p"}});
  CHECK(is_forest(tree, EdgeSet{0}));
  CHECK_FALSE(is_forest(Graph::rose(1), EdgeSet{0}));
  CHECK(is_forest(theta_graph(), EdgeSet{0}));
  CHECK_FALSE(is_forest(theta_graph(), EdgeSet{0, 1}));
}

TEST_CASE("complexity") {
  CHECK(complexity(Graph::rose(2), EdgeSet{0, 1}) == Complexity{2, -1});
  CHECK(complexity(theta_graph(), EdgeSet{0, 1, 2}) == Complexity{2, -1});
  CHECK(complexity(barbell_graph(), EdgeSet{0, 1}) == Complexity{2, -2});
  CHECK_THROWS_AS(complexity(theta_graph(), EdgeSet{}), DomainError);
}

TEST_CASE("core property: idempotent, and first Betti number is monotone under inclusion") {
  for (const Graph& g : testing::core_graphs(5)) {
    const int ne = g.num_edges();
    for (std::uint32_t mask = 1; mask < (1u << ne); ++mask) {
      EdgeSet s;
      for (int e = 0; e < ne; ++e) {
        if ((mask >> e) & 1u) s.push_back(e);
      }
      const EdgeSet c = core(g, s);
      CHECK(core(g, c) == c);
      for (int e : c) CHECK(contains(s, e));
      for (std::uint32_t sub = (mask - 1) & mask; sub != 0; sub = (sub - 1) & mask) {
        EdgeSet t;
        for (int e = 0; e < ne; ++e) {
          if ((sub >> e) & 1u) t.push_back(e);
        }
        const Complexity ct = complexity(g, t);
        const Complexity cs = complexity(g, s);
        CHECK(ct.rank_h1 <= cs.rank_h1);
      }
    }
  }
}

TEST_CASE("enumerated core graphs") {
  // One circle with one edge; with two edges the rose and the two-edge circle.
  const auto graphs = testing::core_graphs(4);
  int by_edges[5] = {0, 0, 0, 0, 0};
  for (const Graph& g : graphs) ++by_edges[g.num_edges()];
  CHECK(by_edges[1] == 1);
  CHECK(by_edges[2] == 2);
  for (const Graph& g : graphs) CHECK(betti_number(g) >= 1);
}

TEST_CASE("turns and crossing counts") {
  const Graph rose = Graph::rose(2);
  const EdgePath p{parse_path(rose, "abA"), true};
  const auto turns = turns_of(p);
  REQUIRE(turns.size() == 3);
  CHECK(turns[0] == Turn(OrientedEdge(0, true), OrientedEdge(1, false)));
  CHECK(crossing_counts(rose, parse_path(rose, "abAb")) == std::vector<int>{2, 2});
}

TEST_CASE("path text round trip") {
  const Graph t = theta_graph();
  const auto p = parse_path(t, "e1 e2^-1");
  CHECK(format_path(t, p) == "e1 e2^-1");
  CHECK_THROWS_AS(parse_path(t, "e9"), ParseError);
  CHECK(format_path(Graph::rose(2), parse_path(Graph::rose(2), "aB")) == "aB");
}
