#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ccd/graph.hpp"
#include "ccd/objective.hpp"
#include "support.hpp"

using namespace ccd;

TEST_CASE("single edge gives unit degrees") {
  const std::vector<WeightedEdge> e{{0, 1, 1.0}};
  const WeightedGraph g = build_graph(e, 2);
  CHECK(g.degree(0) == 1.0);
  CHECK(g.degree(1) == 1.0);
  CHECK(g.total_weight() == 2.0);
}

TEST_CASE("self-loop counts once in the degree") {
  const std::vector<WeightedEdge> e{{0, 0, 3.0}};
  const WeightedGraph g = build_graph(e, 1);
  CHECK(g.degree(0) == 3.0);
  CHECK(g.total_weight() == 3.0);
  CHECK(g.self_weight(0) == 3.0);
  CHECK(g.neighbors(0).empty());
}

TEST_CASE("duplicate and reversed pairs are summed") {
  const std::vector<WeightedEdge> e{{0, 1, 1.0}, {1, 0, 2.0}};
  const WeightedGraph g = build_graph(e, 2);
  CHECK(g.weight(0, 1) == 3.0);
  CHECK(g.weight(1, 0) == 3.0);
  CHECK(g.total_weight() == 6.0);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("build_graph rejects bad input") {
  const std::vector<WeightedEdge> none;
  CHECK_THROWS_AS(build_graph(none, 0), std::invalid_argument);
  const std::vector<WeightedEdge> out_of_range{{0, 2, 1.0}};
  CHECK_THROWS_AS(build_graph(out_of_range, 2), std::invalid_argument);
  const std::vector<WeightedEdge> negative{{0, 1, -1.0}};
  CHECK_THROWS_AS(build_graph(negative, 2), std::invalid_argument);
  const std::vector<WeightedEdge> nan{{0, 1, std::numeric_limits<double>::quiet_NaN()}};
  CHECK_THROWS_AS(build_graph(nan, 2), std::invalid_argument);
}

TEST_CASE("isolated vertices are allowed") {
  const std::vector<WeightedEdge> e{{0, 1, 2.0}};
  const WeightedGraph g = build_graph(e, 4);
  CHECK(g.vertex_count() == 4);
  CHECK(g.degree(3) == 0.0);
  CHECK(g.weight(2, 3) == 0.0);
}

TEST_CASE("edges() lists each undirected edge once") {
  const WeightedGraph g = test::barbell();
  const auto e = g.edges();
  CHECK(e.size() == 7);
  for (const auto &x : e) {
    CHECK(x.u <= x.v);
  }
}

TEST_CASE("graph invariants hold on random graphs") {
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t p = 1 + rng.below(12);
    const WeightedGraph g = test::random_graph(rng, p, 0.4, 1, 5, 0.3);
    double total = 0.0;
    for (Vertex u = 0; u < p; ++u) {
      double row = g.self_weight(u);
      for (Vertex v = 0; v < p; ++v) {
        CHECK(g.weight(u, v) == g.weight(v, u));
        CHECK(g.weight(u, v) >= 0.0);
        if (v != u) {
          row += g.weight(u, v);
        }
      }
      CHECK(std::abs(row - g.degree(u)) <= 1e-12 * std::max(1.0, row));
      total += g.degree(u);
    }
    CHECK(std::abs(total - g.total_weight()) <= 1e-12 * total);
  }
}

TEST_CASE("volumes and the special set") {
  const VertexVolumes f(std::vector<Volume>{3, 0, 5});
  REQUIRE(f.special_set().size() == 2);
  CHECK(f.special_set()[0] == 0);
  CHECK(f.special_set()[1] == 2);
  CHECK(f.total() == 8);
  CHECK_FALSE(f.is_special(1));
  CHECK_THROWS_AS(VertexVolumes(std::vector<Volume>{1, -1}), std::invalid_argument);
  CHECK(VertexVolumes::zeros(3).special_set().empty());
}

TEST_CASE("assignment helpers") {
  const Assignment x(std::vector<Label>{4, 4, 1, 0});
  CHECK(x.community_count() == 3);
  CHECK(x.canonical() == Assignment(std::vector<Label>{0, 0, 1, 2}));
  CHECK_THROWS_AS(x.validate(4), std::invalid_argument);
  CHECK_NOTHROW(Assignment(std::vector<Label>{3, 3, 1, 0}).validate(4));
  CHECK_THROWS_AS(Assignment::singletons(3).validate(4), std::invalid_argument);
  CHECK(Assignment::singletons(3).community_count() == 3);
  CHECK(Assignment::single_community(3).community_count() == 1);
}

TEST_CASE("triangle fold matches the hand-evaluated matrix") {
  const WeightedGraph g = test::triangle();
  const FoldResult r = fold(g, VertexVolumes::zeros(3), Assignment(std::vector<Label>{0, 0, 1}));
  REQUIRE(r.graph.vertex_count() == 2);
  CHECK(r.graph.self_weight(0) == 2.0);
  CHECK(r.graph.weight(0, 1) == 2.0);
  CHECK(r.graph.weight(1, 0) == 2.0);
  CHECK(r.graph.self_weight(1) == 0.0);
  CHECK(r.graph.degree(0) == 4.0);
  CHECK(r.graph.degree(1) == 2.0);
  CHECK(r.graph.total_weight() == 6.0);
  CHECK(r.map.parent == std::vector<Vertex>{0, 0, 1});
}

TEST_CASE("singleton fold reproduces the graph") {
  CounterRng rng(5, 0);
  const WeightedGraph g = test::random_graph(rng, 7, 0.5, 1, 3, 0.2);
  const FoldResult r = fold(g, VertexVolumes::zeros(7), Assignment::singletons(7));
  REQUIRE(r.graph.vertex_count() == 7);
  for (Vertex u = 0; u < 7; ++u) {
    CHECK(r.graph.self_weight(u) == g.self_weight(u));
    for (Vertex v = 0; v < 7; ++v) {
      CHECK(r.graph.weight(u, v) == g.weight(u, v));
    }
  }
}

TEST_CASE("all-one fold is a single vertex with self-weight 2m") {
  const WeightedGraph g = test::barbell();
  const FoldResult r = fold(g, VertexVolumes(std::vector<Volume>{9, 0, 0, 0, 0, 9}), Assignment::single_community(6));
  REQUIRE(r.graph.vertex_count() == 1);
  CHECK(r.graph.self_weight(0) == 14.0);
  CHECK(r.graph.total_weight() == 14.0);
  CHECK(r.volumes[0] == 18);
}

TEST_CASE("folded vertices follow first appearance of labels") {
  const WeightedGraph g = test::barbell();
  const FoldResult r = fold(g, VertexVolumes::zeros(6), Assignment(std::vector<Label>{5, 5, 2, 0, 0, 2}));
  CHECK(r.map.parent == std::vector<Vertex>{0, 0, 1, 2, 2, 1});
  CHECK(r.map.folded_of_label[5] == 0);
  CHECK(r.map.folded_of_label[2] == 1);
  CHECK(r.map.folded_of_label[0] == 2);
  CHECK(r.map.folded_of_label[1] == kNoLabel);
  CHECK(r.map.folded_count() == 3);
}

TEST_CASE("fold preserves weight, modularity, volumes and feasibility") {
  CounterRng rng(2024, 0);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t p = 2 + rng.below(14);
    const WeightedGraph g = test::random_graph(rng, p, 0.5, 1, 4, 0.2);
    const VertexVolumes f = test::random_volumes(rng, p, rng.below(p + 1), 6);
    const Assignment x = test::random_assignment(rng, p, 1 + rng.below(p));
    const FoldResult r = fold(g, f, x);
    const std::size_t k = r.graph.vertex_count();
    CHECK(k == x.community_count());
    CHECK(r.graph.total_weight() == g.total_weight());
    CHECK(std::abs(modularity(g, x) - modularity(r.graph, Assignment::singletons(k))) <= 1e-12);
    CHECK(r.volumes.total() == f.total());
    for (Volume tau : {0, 1, 5}) {
      CHECK(infeasibility(f, x, tau) == infeasibility(r.volumes, Assignment::singletons(k), tau));
    }
    for (std::size_t u = 0; u < p; ++u) {
      for (std::size_t v = 0; v < p; ++v) {
        CHECK((x[u] == x[v]) == (r.map.parent[u] == r.map.parent[v]));
      }
    }
    // Idempotent on singletons.
    const FoldResult again = fold(r.graph, r.volumes, Assignment::singletons(k));
    CHECK(again.graph.vertex_count() == k);
    for (Vertex a = 0; a < k; ++a) {
      CHECK(again.graph.self_weight(a) == r.graph.self_weight(a));
      for (Vertex b = 0; b < k; ++b) {
        CHECK(again.graph.weight(a, b) == r.graph.weight(a, b));
      }
    }
  }
}

TEST_CASE("composed fold maps unfold to equivalent assignments") {
  CounterRng rng(77, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t p = 3 + rng.below(10);
    const WeightedGraph g = test::random_graph(rng, p);
    const VertexVolumes f = test::random_volumes(rng, p, 2, 4);
    const Assignment x1 = test::random_assignment(rng, p, 1 + rng.below(p));
    const FoldResult r1 = fold(g, f, x1);
    const std::size_t k1 = r1.graph.vertex_count();
    const Assignment x2 = test::random_assignment(rng, k1, 1 + rng.below(k1));
    const FoldResult r2 = fold(r1.graph, r1.volumes, x2);
    const FoldMap both = compose(r1.map, r2.map);
    const std::size_t k2 = r2.graph.vertex_count();
    CHECK(both.folded_count() == k2);
    std::vector<bool> hit(k2, false);
    for (Vertex u : both.parent) {
      REQUIRE(u < k2);
      hit[u] = true;
    }
    CHECK(std::count(hit.begin(), hit.end(), true) == static_cast<long>(k2));

    const Assignment y = test::random_assignment(rng, k2, 1 + rng.below(k2));
    const Assignment pulled = unfold(y, both.parent);
    CHECK(std::abs(modularity(r2.graph, y) - modularity(g, pulled)) <= 1e-12);
    CHECK(infeasibility(r2.volumes, y, 3) == infeasibility(f, pulled, 3));
  }
}
