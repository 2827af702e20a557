#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccd/graph.hpp"
#include "ccd/sampler.hpp"
#include "ccd/types.hpp"

namespace ccd {

/// Binary lambda schedule over folding rounds.
///
/// - zero / one: lambda is constant.
/// - switch_at_fold(j): lambda = 0 for the first j rounds, 1 afterwards, i.e.
///   the penalty turns on once j folds have happened.
/// - switch_at_end: lambda = 0 until the unconstrained chain stops making
///   progress (a round whose fold does not shrink the graph) or exhausts its
///   round budget, then lambda = 1 for a further round budget.
struct PenaltySchedule {
  enum class Kind { zero, one, switch_at_fold, switch_at_end };

  Kind kind = Kind::switch_at_end;
  std::size_t switch_fold = 0;

  static PenaltySchedule none() { return {Kind::zero, 0}; }
  static PenaltySchedule always() { return {Kind::one, 0}; }
  static PenaltySchedule at_fold(std::size_t j) { return {Kind::switch_at_fold, j}; }
  static PenaltySchedule at_end() { return {Kind::switch_at_end, 0}; }

  /// lambda for 1-based round r; `unconstrained_done` only matters for switch_at_end.
  [[nodiscard]] double lambda(std::size_t round, bool unconstrained_done) const;
  /// True once lambda can no longer change after round r.
  [[nodiscard]] bool settled(std::size_t round, bool unconstrained_done) const;
  /// Whether any round of this schedule can apply the penalty.
  [[nodiscard]] bool ends_constrained(std::size_t rounds) const;
  [[nodiscard]] std::string name() const;
};

struct ChainRecord {
  std::size_t round = 0;
  std::size_t sweep = 0;
  double theta = 0.0;
  double lambda = 0.0;
  double modularity = 0.0;
  /// Evaluated on the round's (folded) graph and penalty weights.
  double hamiltonian = 0.0;
  bool infeasible = false;
  std::size_t community_count = 0;
};

/// A traversed state picked out of a trace, expressed on the original vertices.
struct TracedAssignment {
  Assignment assignment;
  double modularity = 0.0;
  std::size_t round = 0;
  std::size_t sweep = 0;
};

struct ChainTrace {
  std::vector<ChainRecord> records;
  /// Sweep-end assignments on the original vertex set, parallel to records.
  /// Empty when snapshots were not requested.
  std::vector<Assignment> snapshots;
  std::optional<TracedAssignment> best_feasible;
  TracedAssignment best_overall;
  Assignment final_assignment;
  /// Vertex count of the working graph after each round's fold.
  std::vector<std::size_t> folded_sizes;
};

struct OptimizeOptions {
  SamplerOptions sampler;
  /// Stop once a round leaves the graph unfolded and lambda can no longer change.
  bool early_stop = true;
  bool keep_snapshots = true;
};

/// Alternates `sweeps` Gibbs sweeps with a fold for up to `rounds` rounds (two
/// budgets of `rounds` for switch_at_end), recording every sweep on the
/// original vertex set.
ChainTrace constrained_optimize(const WeightedGraph &graph, const VertexVolumes &volumes, Volume tau,
                                const PenaltySchedule &penalty, const CoolingSchedule &cooling, std::size_t sweeps,
                                std::size_t rounds, CounterRng &rng, const OptimizeOptions &options = {});

ChainTrace constrained_optimize(const WeightedGraph &graph, const VertexVolumes &volumes, Volume tau,
                                const PenaltySchedule &penalty, const CoolingSchedule &cooling, std::size_t sweeps,
                                std::size_t rounds, std::uint64_t seed, const OptimizeOptions &options = {});

struct ChainConfig {
  PenaltySchedule penalty;
  CoolingSchedule cooling = CoolingSchedule::exponential();
  std::size_t sweeps = 30;
  std::size_t rounds = 5;
};

struct EnsembleOptions {
  std::size_t chains = 250;
  std::uint64_t seed = 0;
  /// 0 = hardware concurrency.
  std::size_t threads = 0;
  OptimizeOptions optimize;
};

struct EnsembleSelection {
  TracedAssignment state;
  std::size_t config = 0;
  std::size_t chain = 0;
};

struct EnsembleResult {
  /// Best feasible traversed state; absent when none was feasible.
  std::optional<EnsembleSelection> x_dagger;
  /// Best traversed state overall.
  EnsembleSelection x_ddagger;
  /// traces[config][chain]
  std::vector<std::vector<ChainTrace>> traces;
  /// Set when tau >= total volume, so no assignment can be feasible.
  bool feasible_space_empty = false;
  std::string diagnostic;
};

/// Runs `options.chains` chains per config. Chain n of every config draws
/// from stream (seed, n), so chains that share an unconstrained prefix replay
/// it identically. Ties go to the earliest (config, chain, round, sweep).
EnsembleResult run_ensemble(const WeightedGraph &graph, const VertexVolumes &volumes, Volume tau,
                            const std::vector<ChainConfig> &configs, const EnsembleOptions &options);

/// floor(total volume / number of communities of x_ddagger).
Volume default_tau(const VertexVolumes &volumes, const Assignment &x_ddagger);

} // namespace ccd
