#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ccd/combinatorics.hpp"
#include "ccd/objective.hpp"
#include "support.hpp"

using namespace ccd;

TEST_CASE("stirling boundary values") {
  CHECK(stirling2(0, 0) == 1);
  for (unsigned n = 1; n <= 15; ++n) {
    CHECK(stirling2(n, 0) == 0);
    CHECK(stirling2(n, 1) == 1);
    CHECK(stirling2(n, n) == 1);
    CHECK(stirling2(n, n + 1) == 0);
  }
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(5, 3) == 25);
}

TEST_CASE("recurrence agrees with the alternating sum") {
  for (unsigned n = 0; n <= 20; ++n) {
    for (unsigned k = 0; k <= 20; ++k) {
      CHECK(stirling2(n, k) == stirling2_alternating_sum(n, k));
    }
  }
  CHECK(stirling2(40, 17) == stirling2_alternating_sum(40, 17));
}

TEST_CASE("ordered bell numbers") {
  const long long expected[] = {0, 1, 3, 13, 75, 541, 4683, 47293, 545835, 7087261, 102247563};
  for (unsigned r = 0; r <= 10; ++r) {
    CHECK(ordered_bell(r) == expected[r]);
  }
  const double ratio = static_cast<double>(ordered_bell(10)) / ordered_bell_approx(10);
  CHECK(std::abs(ratio - 1.0) < 0.01);
}

TEST_CASE("printed feasible count formula") {
  CHECK(count_feasible_closed_form(3, 1) == 1);
  CHECK(count_feasible_closed_form(4, 2) == 3);
  CHECK(count_feasible_closed_form(3, 2) == 1);
  CHECK(count_feasible_closed_form(5, 0) == 0);
}

TEST_CASE("exact feasible count") {
  CHECK(count_feasible_exact(3, 1) == 1);
  CHECK(count_feasible_exact(4, 2) == 5);
  CHECK(count_feasible_exact(3, 2) == 3);
  CHECK(count_feasible_exact(6, 0) == 0);
  // Every vertex special: every partition qualifies, so the Bell number.
  CHECK(count_feasible_exact(5, 5) == 52);
}

TEST_CASE("exact count matches enumeration for small sizes") {
  for (unsigned p = 1; p <= 10; ++p) {
    for (unsigned r = 0; r <= p; ++r) {
      INFO("p = " << p << ", r = " << r);
      CHECK(count_feasible_exact(p, r) == count_feasible_enumerated(p, r));
    }
  }
  CHECK_THROWS_AS(count_feasible_enumerated(3, 4), std::invalid_argument);
}

TEST_CASE("partition enumeration") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
  for (std::size_t p = 1; p <= 8; ++p) {
    std::size_t seen = 0;
    std::vector<Label> previous;
    const std::size_t n = for_each_partition(p, [&](std::span<const Label> l) {
      REQUIRE(l.size() == p);
      CHECK(l[0] == 0);
      Label top = 0;
      for (std::size_t i = 1; i < p; ++i) {
        CHECK(l[i] <= top + 1);
        top = std::max(top, l[i]);
      }
      const std::vector<Label> current(l.begin(), l.end());
      if (!previous.empty()) {
        CHECK(previous < current);
      }
      previous = current;
      ++seen;
    });
    CHECK(n == bell[p]);
    CHECK(seen == bell[p]);
    CHECK(count_partitions_up_to(static_cast<unsigned>(p), static_cast<unsigned>(p)) == bell[p]);
  }
}

TEST_CASE("brute-force optima") {
  const auto tri = brute_force_optimum(test::triangle(), VertexVolumes::zeros(3), 0, false);
  REQUIRE(tri.has_value());
  CHECK(tri->first == Assignment::single_community(3));
  CHECK(tri->second == 0.0);

  const auto bb = brute_force_optimum(test::barbell(), VertexVolumes::zeros(6), 0, false);
  REQUIRE(bb.has_value());
  CHECK(bb->first == Assignment(std::vector<Label>{0, 0, 0, 1, 1, 1}));
  CHECK(std::abs(bb->second - 5.0 / 14.0) <= 1e-15);

  const VertexVolumes f(std::vector<Volume>{9, 0, 0, 0, 0, 9});
  const auto c = brute_force_optimum(test::barbell(), f, 10, true);
  REQUIRE(c.has_value());
  CHECK(c->first == Assignment::single_community(6));
  CHECK(c->second == 0.0);
  CHECK_FALSE(brute_force_optimum(test::barbell(), f, 18, true).has_value());

  CounterRng rng(1, 0);
  CHECK_THROWS_AS(brute_force_optimum(test::random_graph(rng, 13), VertexVolumes::zeros(13), 0, false),
                  std::invalid_argument);
}

TEST_CASE("feasible fraction bounds") {
  for (unsigned r = 1; r <= 12; ++r) {
    const double exact = std::exp(std::lgamma(r + 1.0) - r * std::log(static_cast<double>(r)) -
                                  std::log(2.0) - (r + 1) * std::log(std::log(2.0)));
    CHECK(feasible_fraction_bound(r) == doctest::Approx(exact).epsilon(1e-12));
  }
  // The Stirling form tracks the factorial form closely for large r.
  CHECK(feasible_fraction_bound_stirling(40) / feasible_fraction_bound(40) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(log_feasible_asymptotic_bound(20, 4) ==
        doctest::Approx(16 * std::log(4.0) - std::log(2.0) - 5 * std::log(std::log(2.0))).epsilon(1e-12));
}
