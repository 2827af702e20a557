#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ccd/graph.hpp"
#include "ccd/types.hpp"

namespace ccd {

/// Unordered vertex pairs sharing a community in at least one of two assignments.
struct PairClasses {
  std::uint64_t both = 0;
  std::uint64_t only_a = 0;
  std::uint64_t only_b = 0;

  friend bool operator==(const PairClasses &, const PairClasses &) = default;
};

struct VolumeSummary {
  /// Volume per community, ascending.
  std::vector<Volume> totals;
  /// Share of communities with total <= tau.
  double fraction_at_most_tau = 0.0;
};

/// One nonzero cell of the a-by-b contingency table. Communities are numbered
/// by first appearance in their assignment.
struct OverlapEdge {
  std::size_t a_community = 0;
  std::size_t b_community = 0;
  std::size_t shared = 0;
};

struct ComparisonReport {
  std::vector<double> jaccard;
  PairClasses pairs;
  VolumeSummary volumes_a;
  VolumeSummary volumes_b;
  std::vector<OverlapEdge> overlap;
  std::size_t communities_a = 0;
  std::size_t communities_b = 0;
  double mean_size_a = 0.0;
  double mean_size_b = 0.0;
  /// Mean number of b-communities each a-community feeds, split by whether the
  /// a-community violates tau (volume <= tau) or satisfies it. NaN when a
  /// class is empty.
  double fanout_violating = 0.0;
  double fanout_feasible = 0.0;
  /// Mean |U_a(v)| - |U_b(v)| over vertices whose a-community violates or
  /// satisfies tau. NaN when a class is empty.
  double size_change_violating = 0.0;
  double size_change_feasible = 0.0;
  Volume tau = 0;
};

/// Per vertex, |A_v ∩ B_v| / |A_v ∪ B_v| for v's communities in a and b.
/// Throws std::invalid_argument on a length mismatch.
std::vector<double> jaccard_per_vertex(const Assignment &a, const Assignment &b);

/// Counts from the contingency table, not a pair loop:
/// both = sum C(n_ij, 2), only_a = sum C(a_i, 2) - both, only_b likewise.
PairClasses pair_comembership_classes(const Assignment &a, const Assignment &b);

VolumeSummary community_volume_summary(const VertexVolumes &volumes, const Assignment &assignment, Volume tau);

std::vector<OverlapEdge> overlap_edges(const Assignment &a, const Assignment &b);

ComparisonReport compare_assignments(const Assignment &a, const Assignment &b, const VertexVolumes &volumes,
                                     Volume tau);

} // namespace ccd
