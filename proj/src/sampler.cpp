#include "ccd/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ccd {

CoolingSchedule CoolingSchedule::constant(double theta) {
  CoolingSchedule s;
  s.kind = Kind::constant;
  s.theta0 = theta;
  return s;
}

CoolingSchedule CoolingSchedule::exponential(double theta0) {
  CoolingSchedule s;
  s.kind = Kind::exponential2;
  s.theta0 = theta0;
  return s;
}

CoolingSchedule CoolingSchedule::custom(std::vector<double> values) {
  CoolingSchedule s;
  s.kind = Kind::table;
  s.table = std::move(values);
  return s;
}

double CoolingSchedule::theta(std::size_t sweep) const {
  const std::size_t t = std::max<std::size_t>(sweep, 1);
  switch (kind) {
  case Kind::constant:
    return theta0;
  case Kind::exponential2:
    return std::ldexp(theta0, static_cast<int>(std::min<std::size_t>(t - 1, 1000)));
  case Kind::table:
    return table[std::min(t - 1, table.size() - 1)];
  }
  return theta0;
}

void CoolingSchedule::validate() const {
  if (!(theta_cap > 0.0)) {
    throw std::invalid_argument("theta cap must be positive");
  }
  if (kind == Kind::table) {
    if (table.empty()) {
      throw std::invalid_argument("custom cooling table is empty");
    }
    for (double t : table) {
      if (!(t > 0.0)) {
        throw std::invalid_argument("cooling table entries must be positive");
      }
    }
  } else if (!(theta0 > 0.0) || !std::isfinite(theta0)) {
    throw std::invalid_argument("theta0 must be positive and finite");
  }
}

SweepState::SweepState(const WeightedGraph &graph, const VertexVolumes &volumes, Assignment initial, Volume tau,
                       CounterRng rng)
    : assignment_(std::move(initial)), tau_(tau), rng_(rng) {
  const std::size_t p = graph.vertex_count();
  assignment_.validate(p);
  if (volumes.size() != p) {
    throw std::invalid_argument("volume vector length does not match the graph");
  }
  live_pos_.assign(p, kAbsent);
  members_.assign(p, 0);
  volume_.assign(p, 0);
  degree_total_.assign(p, 0.0);
  for (Vertex v = 0; v < p; ++v) {
    const Label l = assignment_[v];
    if (members_[l]++ == 0) {
      live_pos_[l] = live_.size();
      live_.push_back(l);
    }
    volume_[l] += volumes[v];
    degree_total_[l] += graph.degree(v);
  }
  for (Label l : live_) {
    violating_ += volume_[l] <= tau_ ? 1 : 0;
  }
  weight_to_.assign(p, 0.0);
  touched_.assign(p, false);
}

void SweepState::move(Vertex v, Label to, double degree, Volume volume) {
  const Label from = assignment_[v];
  if (from == to) {
    return;
  }
  violating_ -= (volume_[from] <= tau_ ? 1 : 0) + (members_[to] > 0 && volume_[to] <= tau_ ? 1 : 0);

  members_[from] -= 1;
  volume_[from] -= volume;
  degree_total_[from] -= degree;
  if (members_[to]++ == 0) {
    live_pos_[to] = live_.size();
    live_.push_back(to);
  }
  volume_[to] += volume;
  degree_total_[to] += degree;
  assignment_[v] = to;

  if (members_[from] == 0) {
    // Extinct: swap-remove from the live list.
    const std::size_t pos = live_pos_[from];
    live_[pos] = live_.back();
    live_pos_[live_[pos]] = pos;
    live_.pop_back();
    live_pos_[from] = kAbsent;
    volume_[from] = 0;
    degree_total_[from] = 0.0;
  } else {
    violating_ += volume_[from] <= tau_ ? 1 : 0;
  }
  violating_ += volume_[to] <= tau_ ? 1 : 0;
}

bool resample_vertex(SweepState &state, const WeightedGraph &graph, const VertexVolumes &volumes,
                     const PenaltyContext &ctx, double theta, Vertex v, const SamplerOptions &options) {
  if (v >= graph.vertex_count()) {
    throw std::invalid_argument("resample_vertex: vertex out of range");
  }
  const double two_m = graph.total_weight();
  const double m = two_m / 2.0;
  const double dv = graph.degree(v);
  const Volume fv = volumes[v];
  const Label current = state.assignment_[v];
  const Volume tau = state.tau_;

  auto &candidates = state.candidates_;
  candidates.clear();
  for (const Neighbor &n : graph.neighbors(v)) {
    const Label l = state.assignment_[n.vertex];
    if (!state.touched_[l]) {
      state.touched_[l] = true;
      if (options.neighbor_candidates_only) {
        candidates.push_back(l);
      }
    }
    state.weight_to_[l] += n.weight;
  }
  if (options.neighbor_candidates_only) {
    if (!state.touched_[current]) {
      candidates.push_back(current);
    }
  } else {
    candidates.assign(state.live_.begin(), state.live_.end());
  }

  // Penalty bookkeeping for a hypothetical move of v out of `current`.
  const bool current_survives = state.members_[current] > 1;
  const Volume current_after = state.volume_[current] - fv;
  const long violating_without_move =
      static_cast<long>(state.violating_) - (state.volume_[current] <= tau ? 1 : 0) +
      (current_survives && current_after <= tau ? 1 : 0);
  const double self_term = std::abs(graph.self_weight(v) - dv * dv / two_m);

  auto &scores = state.scores_;
  scores.resize(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Label c = candidates[i];
    const double others_degree = state.degree_total_[c] - (c == current ? dv : 0.0);
    double score = state.weight_to_[c] - dv * others_degree / two_m;
    if (ctx.lambda != 0.0) {
      Volume F = 0;
      long violating = 0;
      if (c == current) {
        F = state.volume_[c];
        violating = static_cast<long>(state.violating_);
      } else {
        F = state.volume_[c] + fv;
        violating = violating_without_move - (state.volume_[c] <= tau ? 1 : 0) + (F <= tau ? 1 : 0);
      }
      int chi_value = F <= tau ? 1 : 0;
      if (violating > 0 && fv > 0 && F - fv > tau) {
        chi_value += 1;
      }
      score -= ctx.lambda * self_term * chi_value;
    }
    scores[i] = score;
  }

  for (const Neighbor &n : graph.neighbors(v)) {
    const Label l = state.assignment_[n.vertex];
    state.weight_to_[l] = 0.0;
    state.touched_[l] = false;
  }

  std::size_t pick = 0;
  if (std::isinf(theta)) {
    // Point-mass limit: uniform over the maximizers.
    const double best = *std::max_element(scores.begin(), scores.end());
    std::size_t ties = 0;
    for (double s : scores) {
      ties += s == best ? 1 : 0;
    }
    auto k = state.rng_.below(ties);
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] == best && k-- == 0) {
        pick = i;
        break;
      }
    }
  } else {
    const double scale = theta / m;
    double best = -std::numeric_limits<double>::infinity();
    for (double &s : scores) {
      s *= scale;
      best = std::max(best, s);
    }
    double total = 0.0;
    for (double &s : scores) {
      s = std::exp(s - best);
      total += s;
    }
    const double u = state.rng_.uniform() * total;
    double cumulative = 0.0;
    pick = scores.size() - 1;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      cumulative += scores[i];
      if (u < cumulative) {
        pick = i;
        break;
      }
    }
  }

  const Label chosen = candidates[pick];
  if (chosen == current) {
    return false;
  }
  state.move(v, chosen, dv, fv);
  return true;
}

namespace {

SweepRecord summarize(const WeightedGraph &graph, const VertexVolumes &volumes, const PenaltyContext &ctx,
                      const SweepState &state, std::size_t sweep, double theta, std::size_t changes) {
  SweepRecord r;
  r.sweep = sweep;
  r.theta = theta;
  const auto parts = hamiltonian_parts(graph, volumes, state.assignment(), ctx);
  r.modularity = parts.interaction;
  r.hamiltonian = parts.total();
  r.infeasible = state.infeasible();
  r.community_count = state.community_count();
  r.changes = changes;
  return r;
}

} // namespace

LocalTrace local_optimize(const WeightedGraph &graph, const VertexVolumes &volumes, const PenaltyContext &ctx,
                          const CoolingSchedule &cooling, std::size_t sweeps, const Assignment &initial,
                          CounterRng &rng, const SamplerOptions &options, bool keep_snapshots) {
  if (sweeps < 1) {
    throw std::invalid_argument("local_optimize needs at least one sweep");
  }
  cooling.validate();
  if (!(graph.total_weight() > 0.0)) {
    throw std::invalid_argument("graph has zero total weight");
  }
  if (ctx.lambda_v.size() != graph.vertex_count()) {
    throw std::invalid_argument("penalty context was built for a different graph");
  }

  SweepState state(graph, volumes, initial, ctx.tau, rng);
  std::vector<Vertex> order(graph.vertex_count());

  LocalTrace trace;
  trace.records.reserve(sweeps);
  for (std::size_t t = 1; t <= sweeps; ++t) {
    const double theta = cooling.theta(t);
    const double effective = theta > cooling.theta_cap ? std::numeric_limits<double>::infinity() : theta;
    std::iota(order.begin(), order.end(), Vertex{0});
    state.rng().shuffle(std::span<Vertex>(order));
    std::size_t changes = 0;
    for (Vertex v : order) {
      changes += resample_vertex(state, graph, volumes, ctx, effective, v, options) ? 1 : 0;
    }
    trace.records.push_back(summarize(graph, volumes, ctx, state, t, theta, changes));
    if (keep_snapshots) {
      trace.snapshots.push_back(state.assignment());
    }
    if (options.halt_when_stable && changes == 0 && std::isinf(effective)) {
      break;
    }
  }
  trace.final_assignment = state.assignment();
  rng = state.rng();
  return trace;
}

LocalTrace local_optimize(const WeightedGraph &graph, const VertexVolumes &volumes, const PenaltyContext &ctx,
                          const CoolingSchedule &cooling, std::size_t sweeps, std::uint64_t seed,
                          const SamplerOptions &options) {
  CounterRng rng(seed, 0);
  return local_optimize(graph, volumes, ctx, cooling, sweeps, Assignment::singletons(graph.vertex_count()), rng,
                        options);
}

} // namespace ccd
