#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ccd/analysis.hpp"
#include "support.hpp"

using namespace ccd;

namespace {

Assignment labels(std::initializer_list<Label> l) { return Assignment(std::vector<Label>(l)); }

} // namespace

TEST_CASE("jaccard examples") {
  const Assignment a = labels({0, 0, 1, 1});
  for (double j : jaccard_per_vertex(a, a)) {
    CHECK(j == 1.0);
  }
  for (double j : jaccard_per_vertex(Assignment::single_community(4), Assignment::singletons(4))) {
    CHECK(j == 0.25);
  }
  const auto j = jaccard_per_vertex(a, labels({0, 0, 0, 1}));
  REQUIRE(j.size() == 4);
  CHECK(j[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(j[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(j[2] == doctest::Approx(1.0 / 4.0).epsilon(1e-15));
  CHECK(j[3] == doctest::Approx(1.0 / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(jaccard_per_vertex(a, Assignment::singletons(3)), std::invalid_argument);
}

TEST_CASE("pair classes examples") {
  const Assignment a = labels({0, 0, 1, 1});
  CHECK(pair_comembership_classes(a, a) == PairClasses{2, 0, 0});
  CHECK(pair_comembership_classes(a, Assignment::single_community(4)) == PairClasses{2, 0, 4});
  CHECK(pair_comembership_classes(Assignment::singletons(5), Assignment::singletons(5)) == PairClasses{0, 0, 0});
}

TEST_CASE("volume summary examples") {
  const VertexVolumes f(std::vector<Volume>{3, 0, 5});
  const VolumeSummary s = community_volume_summary(f, labels({0, 0, 1}), 4);
  CHECK(s.totals == std::vector<Volume>{3, 5});
  CHECK(s.fraction_at_most_tau == 0.5);
  const VolumeSummary one = community_volume_summary(f, Assignment::single_community(3), 4);
  CHECK(one.totals == std::vector<Volume>{8});
  CHECK(one.fraction_at_most_tau == 0.0);
}

TEST_CASE("analysis properties on random pairs") {
  CounterRng rng(1, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t p = 1 + rng.below(25);
    const Assignment a = test::random_assignment(rng, p, 1 + rng.below(p));
    const Assignment b = test::random_assignment(rng, p, 1 + rng.below(p));
    const auto ab = jaccard_per_vertex(a, b);
    const auto ba = jaccard_per_vertex(b, a);
    const auto ca = a.canonical();
    const auto cb = b.canonical();
    for (std::size_t v = 0; v < p; ++v) {
      CHECK(ab[v] == ba[v]);
      CHECK(ab[v] >= 0.0);
      CHECK(ab[v] <= 1.0);
      bool identical = true;
      for (std::size_t u = 0; u < p; ++u) {
        identical = identical && ((a[u] == a[v]) == (b[u] == b[v]));
      }
      CHECK((ab[v] == 1.0) == identical);
    }

    // Pair classes against an explicit pair loop.
    std::uint64_t both = 0, only_a = 0, only_b = 0;
    for (std::size_t u = 0; u < p; ++u) {
      for (std::size_t v = u + 1; v < p; ++v) {
        const bool sa = a[u] == a[v];
        const bool sb = b[u] == b[v];
        both += sa && sb;
        only_a += sa && !sb;
        only_b += !sa && sb;
      }
    }
    CHECK(pair_comembership_classes(a, b) == PairClasses{both, only_a, only_b});

    // b refines a: split each a-community by a coin flip.
    std::vector<Label> split(p);
    for (std::size_t v = 0; v < p; ++v) {
      split[v] = static_cast<Label>(2 * ca[v] + rng.below(2));
    }
    CHECK(pair_comembership_classes(a, Assignment(split)).only_b == 0);

    std::size_t shared = 0;
    for (const OverlapEdge &e : overlap_edges(a, b)) {
      CHECK(e.shared >= 1);
      shared += e.shared;
    }
    CHECK(shared == p);

    const VertexVolumes f = test::random_volumes(rng, p, rng.below(p + 1), 5);
    const ComparisonReport r = compare_assignments(a, b, f, 2);
    CHECK(r.communities_a == a.community_count());
    CHECK(r.mean_size_a == static_cast<double>(p) / static_cast<double>(a.community_count()));
    CHECK(r.mean_size_b == static_cast<double>(p) / static_cast<double>(b.community_count()));
    (void)cb;
  }
}

TEST_CASE("comparison report split statistics") {
  // a: {0,1} volume 0 (violating at tau 1), {2,3} volume 4 (feasible).
  const Assignment a = labels({0, 0, 1, 1});
  const Assignment b = labels({0, 1, 2, 2});
  const VertexVolumes f(std::vector<Volume>{0, 0, 4, 0});
  const ComparisonReport r = compare_assignments(a, b, f, 1);
  CHECK(r.fanout_violating == 2.0);
  CHECK(r.fanout_feasible == 1.0);
  CHECK(r.size_change_violating == 1.0);
  CHECK(r.size_change_feasible == 0.0);
  const ComparisonReport none = compare_assignments(a, a, VertexVolumes::zeros(4), 1);
  CHECK(std::isnan(none.fanout_feasible));
}
