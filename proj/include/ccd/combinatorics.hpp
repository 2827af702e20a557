#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "ccd/graph.hpp"
#include "ccd/types.hpp"

namespace ccd {

using BigCount = boost::multiprecision::cpp_int;

/// Stirling number of the second kind via S(n,k) = k S(n-1,k) + S(n-1,k-1).
BigCount stirling2(unsigned n, unsigned k);

/// The closed form (1/k!) sum_j (-1)^(k-j) C(k,j) j^n. Independent of the
/// recurrence; used to cross-check it.
BigCount stirling2_alternating_sum(unsigned n, unsigned k);

/// sum_{k=1}^{r} S(r,k) k!. The sum starts at k = 1, so r = 0 gives 0.
BigCount ordered_bell(unsigned r);

/// r! / (2 (ln 2)^(r+1)).
double ordered_bell_approx(unsigned r);

/// The printed count sum_{k=1}^{r} S(p-r,k) S(r,k) k!. It also requires every
/// block to hold a non-special vertex, so it undercounts the tau = 0 feasible
/// set (e.g. p = 4, r = 2 gives 3, the true count is 5).
BigCount count_feasible_closed_form(unsigned p, unsigned r);

/// Partitions of p labeled vertices, r of them special, in which every block
/// holds at least one special vertex: sum_{k=1}^{r} S(r,k) k^(p-r).
BigCount count_feasible_exact(unsigned p, unsigned r);

/// Number of partitions with at most r blocks: sum_{k=1}^{r} S(p,k).
BigCount count_partitions_up_to(unsigned p, unsigned r);

/// Asymptotic upper bound r^(p-r) / (2 (ln 2)^(r+1)) on the feasible count, as a natural log.
double log_feasible_asymptotic_bound(unsigned p, unsigned r);

/// r! r^-r / (2 (ln 2)^(r+1)), the bound on the feasible fraction.
double feasible_fraction_bound(unsigned r);

/// Stirling-approximated form (sqrt(2 pi) / (2 ln 2)) sqrt(r) / (e ln 2)^r.
double feasible_fraction_bound_stirling(unsigned r);

/// Calls `visit` with every set partition of {0..p-1} as a restricted growth
/// string, in lexicographic order. Returns the number of partitions visited.
std::size_t for_each_partition(std::size_t p, const std::function<void(std::span<const Label>)> &visit);

/// Largest p accepted by brute_force_optimum.
inline constexpr std::size_t kBruteForceLimit = 12;

/// Exhaustive argmax of modularity over all set partitions, or over the
/// feasible ones when `constrained`. The first maximizer in lexicographic
/// restricted-growth order wins. Returns nullopt when constrained and nothing
/// is feasible. Throws std::invalid_argument if p > kBruteForceLimit.
std::optional<std::pair<Assignment, double>> brute_force_optimum(const WeightedGraph &graph,
                                                                 const VertexVolumes &volumes, Volume tau,
                                                                 bool constrained);

/// Feasible partitions at tau = 0 with vertices 0..r-1 special, counted by
/// walking every partition. Throws std::invalid_argument unless
/// r <= p <= kBruteForceLimit.
std::uint64_t count_feasible_enumerated(std::size_t p, std::size_t r);

} // namespace ccd
