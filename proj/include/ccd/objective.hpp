#pragma once

#include <vector>

#include "ccd/graph.hpp"
#include "ccd/types.hpp"

namespace ccd {

/// Penalty parameters shared by every vertex update of one round.
struct PenaltyContext {
  Volume tau = 0;
  double lambda = 0.0;
  /// lambda_v[v] = |W_vv - d_v^2 / 2m| / m
  std::vector<double> lambda_v;

  static PenaltyContext make(const WeightedGraph &graph, Volume tau, double lambda);
};

/// |W_vv - d_v^2 / 2m| / m, the weight that balances v's total interaction.
double penalty_weight(const WeightedGraph &graph, Vertex v);

/// Newman modularity: (1/2m) sum over ordered same-community pairs (u, v),
/// diagonal included, of W_uv - d_u d_v / 2m. Throws std::invalid_argument
/// when 2m == 0 or the assignment does not fit the graph.
double modularity(const WeightedGraph &graph, const Assignment &assignment);

/// F(v, x): total volume of v's community.
Volume community_volume(const VertexVolumes &volumes, const Assignment &assignment, Vertex v);

/// Volume total per label, indexed by label (size p; absent labels hold 0).
std::vector<Volume> label_volumes(const VertexVolumes &volumes, const Assignment &assignment);

/// T_tau(x): true when some community has volume <= tau.
bool infeasibility(const VertexVolumes &volumes, const Assignment &assignment, Volume tau);

/// Combined penalty indicator in {0, 1, 2}:
///   1{F(v,x) <= tau} + T_tau(x) * 1{v special and F(v,x) - f(v) > tau}.
/// The second term flags special vertices whose departure would leave their
/// community feasible while the assignment as a whole is not.
int chi(const VertexVolumes &volumes, const Assignment &assignment, Vertex v, Volume tau);

struct HamiltonianParts {
  double interaction = 0.0; ///< equals modularity
  double external = 0.0;    ///< -(lambda/m) sum_v |W_vv - d_v^2/2m| 1{F(v,x) <= tau}
  [[nodiscard]] double total() const { return interaction + external; }
};

HamiltonianParts hamiltonian_parts(const WeightedGraph &graph, const VertexVolumes &volumes,
                                   const Assignment &assignment, const PenaltyContext &ctx);

/// Potts Hamiltonian H = Q + external field.
double hamiltonian(const WeightedGraph &graph, const VertexVolumes &volumes, const Assignment &assignment,
                   const PenaltyContext &ctx);

/// Unnormalized log-probability of relabeling v to `candidate` given the rest
/// of the assignment:
///   (theta/m) [ sum_{u != v, x_u = c} (W_uv - d_u d_v/2m) - lambda |W_vv - d_v^2/2m| chi(v, x[v := c]) ].
/// Straight O(p) evaluation; the sampler keeps an incremental equivalent.
/// Throws std::invalid_argument if `candidate` is not a live label.
double conditional_log_weight(const WeightedGraph &graph, const VertexVolumes &volumes, const Assignment &assignment,
                              Vertex v, Label candidate, const PenaltyContext &ctx, double theta);

} // namespace ccd
