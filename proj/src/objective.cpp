#include "ccd/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccd {

namespace {

void check_weighted(const WeightedGraph &graph) {
  if (!(graph.total_weight() > 0.0)) {
    throw std::invalid_argument("graph has zero total weight; modularity is undefined");
  }
}

void check_sizes(const WeightedGraph &graph, const VertexVolumes &volumes, const Assignment &assignment) {
  assignment.validate(graph.vertex_count());
  if (volumes.size() != graph.vertex_count()) {
    throw std::invalid_argument("volume vector length does not match the graph");
  }
}

} // namespace

double penalty_weight(const WeightedGraph &graph, Vertex v) {
  const double two_m = graph.total_weight();
  const double m = two_m / 2.0;
  const double d = graph.degree(v);
  return std::abs(graph.self_weight(v) - d * d / two_m) / m;
}

PenaltyContext PenaltyContext::make(const WeightedGraph &graph, Volume tau, double lambda) {
  check_weighted(graph);
  if (tau < 0) {
    throw std::invalid_argument("tau must be non-negative");
  }
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("lambda must be non-negative");
  }
  PenaltyContext ctx;
  ctx.tau = tau;
  ctx.lambda = lambda;
  ctx.lambda_v.resize(graph.vertex_count());
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    ctx.lambda_v[v] = penalty_weight(graph, v);
  }
  return ctx;
}

double modularity(const WeightedGraph &graph, const Assignment &assignment) {
  check_weighted(graph);
  const std::size_t p = graph.vertex_count();
  assignment.validate(p);

  // Per label: ordered-pair internal weight and degree total.
  std::vector<double> internal(p, 0.0);
  std::vector<double> degree_total(p, 0.0);
  for (Vertex u = 0; u < p; ++u) {
    const Label c = assignment[u];
    double inside = graph.self_weight(u);
    for (const Neighbor &n : graph.neighbors(u)) {
      if (assignment[n.vertex] == c) {
        inside += n.weight;
      }
    }
    internal[c] += inside;
    degree_total[c] += graph.degree(u);
  }
  const double two_m = graph.total_weight();
  double q = 0.0;
  for (std::size_t c = 0; c < p; ++c) {
    if (degree_total[c] != 0.0 || internal[c] != 0.0) {
      q += internal[c] - degree_total[c] * (degree_total[c] / two_m);
    }
  }
  return q / two_m;
}

std::vector<Volume> label_volumes(const VertexVolumes &volumes, const Assignment &assignment) {
  if (volumes.size() != assignment.size()) {
    throw std::invalid_argument("volume vector length does not match the assignment");
  }
  assignment.validate(assignment.size());
  std::vector<Volume> totals(assignment.size(), 0);
  for (std::size_t u = 0; u < assignment.size(); ++u) {
    totals[assignment[u]] += volumes[u];
  }
  return totals;
}

Volume community_volume(const VertexVolumes &volumes, const Assignment &assignment, Vertex v) {
  if (v >= assignment.size() || volumes.size() != assignment.size()) {
    throw std::invalid_argument("community_volume: vertex out of range");
  }
  Volume total = 0;
  const Label c = assignment[v];
  for (std::size_t u = 0; u < assignment.size(); ++u) {
    if (assignment[u] == c) {
      total += volumes[u];
    }
  }
  return total;
}

bool infeasibility(const VertexVolumes &volumes, const Assignment &assignment, Volume tau) {
  const auto totals = label_volumes(volumes, assignment);
  for (std::size_t u = 0; u < assignment.size(); ++u) {
    if (totals[assignment[u]] <= tau) {
      return true;
    }
  }
  return false;
}

int chi(const VertexVolumes &volumes, const Assignment &assignment, Vertex v, Volume tau) {
  const auto totals = label_volumes(volumes, assignment);
  if (v >= assignment.size()) {
    throw std::invalid_argument("chi: vertex out of range");
  }
  const Volume F = totals[assignment[v]];
  int value = F <= tau ? 1 : 0;
  if (volumes.is_special(v) && F - volumes[v] > tau && infeasibility(volumes, assignment, tau)) {
    value += 1;
  }
  return value;
}

HamiltonianParts hamiltonian_parts(const WeightedGraph &graph, const VertexVolumes &volumes,
                                   const Assignment &assignment, const PenaltyContext &ctx) {
  check_sizes(graph, volumes, assignment);
  HamiltonianParts parts;
  parts.interaction = modularity(graph, assignment);
  if (ctx.lambda == 0.0) {
    return parts;
  }
  const auto totals = label_volumes(volumes, assignment);
  double field = 0.0;
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    if (totals[assignment[v]] <= ctx.tau) {
      field += penalty_weight(graph, v);
    }
  }
  parts.external = -ctx.lambda * field;
  return parts;
}

double hamiltonian(const WeightedGraph &graph, const VertexVolumes &volumes, const Assignment &assignment,
                   const PenaltyContext &ctx) {
  return hamiltonian_parts(graph, volumes, assignment, ctx).total();
}

double conditional_log_weight(const WeightedGraph &graph, const VertexVolumes &volumes, const Assignment &assignment,
                              Vertex v, Label candidate, const PenaltyContext &ctx, double theta) {
  check_weighted(graph);
  check_sizes(graph, volumes, assignment);
  const auto labels = assignment.labels();
  if (std::find(labels.begin(), labels.end(), candidate) == labels.end()) {
    throw std::invalid_argument("candidate label is not live in the assignment");
  }
  const double two_m = graph.total_weight();
  const double m = two_m / 2.0;
  const double dv = graph.degree(v);

  double interaction = 0.0;
  for (Vertex u = 0; u < graph.vertex_count(); ++u) {
    if (u != v && assignment[u] == candidate) {
      interaction += graph.weight(u, v) - graph.degree(u) * dv / two_m;
    }
  }

  double penalty = 0.0;
  if (ctx.lambda != 0.0) {
    Assignment moved = assignment;
    moved[v] = candidate;
    penalty = ctx.lambda * std::abs(graph.self_weight(v) - dv * dv / two_m) * chi(volumes, moved, v, ctx.tau);
  }
  return (theta / m) * (interaction - penalty);
}

} // namespace ccd
