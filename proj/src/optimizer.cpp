#include "ccd/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>

#include "ccd/objective.hpp"

namespace ccd {

double PenaltySchedule::lambda(std::size_t round, bool unconstrained_done) const {
  switch (kind) {
  case Kind::zero:
    return 0.0;
  case Kind::one:
    return 1.0;
  case Kind::switch_at_fold:
    return round > switch_fold ? 1.0 : 0.0;
  case Kind::switch_at_end:
    return unconstrained_done ? 1.0 : 0.0;
  }
  return 0.0;
}

bool PenaltySchedule::settled(std::size_t round, bool unconstrained_done) const {
  switch (kind) {
  case Kind::zero:
  case Kind::one:
    return true;
  case Kind::switch_at_fold:
    return round > switch_fold;
  case Kind::switch_at_end:
    return unconstrained_done;
  }
  return true;
}

bool PenaltySchedule::ends_constrained(std::size_t rounds) const {
  switch (kind) {
  case Kind::zero:
    return false;
  case Kind::one:
  case Kind::switch_at_end:
    return true;
  case Kind::switch_at_fold:
    return rounds > switch_fold;
  }
  return false;
}

std::string PenaltySchedule::name() const {
  switch (kind) {
  case Kind::zero:
    return "none";
  case Kind::one:
    return "always";
  case Kind::switch_at_fold:
    return "fold:" + std::to_string(switch_fold);
  case Kind::switch_at_end:
    return "end";
  }
  return "?";
}

ChainTrace constrained_optimize(const WeightedGraph &graph, const VertexVolumes &volumes, Volume tau,
                                const PenaltySchedule &penalty, const CoolingSchedule &cooling, std::size_t sweeps,
                                std::size_t rounds, CounterRng &rng, const OptimizeOptions &options) {
  if (sweeps < 1 || rounds < 1) {
    throw std::invalid_argument("sweeps and rounds must both be at least 1");
  }
  if (volumes.size() != graph.vertex_count()) {
    throw std::invalid_argument("volume vector length does not match the graph");
  }
  if (tau < 0) {
    throw std::invalid_argument("tau must be non-negative");
  }

  ChainTrace trace;
  WeightedGraph current = graph;
  VertexVolumes current_volumes = volumes;
  std::vector<Vertex> parent = FoldMap::identity(graph.vertex_count()).parent;

  const bool two_phase = penalty.kind == PenaltySchedule::Kind::switch_at_end;
  bool unconstrained_done = false;
  std::size_t phase_round = 0;
  bool have_best = false;

  for (std::size_t round = 1;; ++round) {
    ++phase_round;
    const double lambda = penalty.lambda(round, unconstrained_done);
    const PenaltyContext ctx = PenaltyContext::make(current, tau, lambda);
    const LocalTrace local =
        local_optimize(current, current_volumes, ctx, cooling, sweeps, Assignment::singletons(current.vertex_count()),
                       rng, options.sampler, /*keep_snapshots=*/true);

    for (std::size_t i = 0; i < local.records.size(); ++i) {
      const SweepRecord &s = local.records[i];
      trace.records.push_back(
          {round, s.sweep, s.theta, lambda, s.modularity, s.hamiltonian, s.infeasible, s.community_count});

      const bool better_overall = !have_best || s.modularity > trace.best_overall.modularity;
      const bool better_feasible =
          !s.infeasible && (!trace.best_feasible || s.modularity > trace.best_feasible->modularity);
      if (options.keep_snapshots || better_overall || better_feasible) {
        Assignment original = unfold(local.snapshots[i], parent);
        if (better_overall) {
          trace.best_overall = {original, s.modularity, round, s.sweep};
          have_best = true;
        }
        if (better_feasible) {
          trace.best_feasible = TracedAssignment{original, s.modularity, round, s.sweep};
        }
        if (options.keep_snapshots) {
          trace.snapshots.push_back(std::move(original));
        }
      }
    }

    FoldResult folded = fold(current, current_volumes, local.final_assignment);
    const bool stalled = folded.graph.vertex_count() == current.vertex_count();
    for (Vertex &f : parent) {
      f = folded.map.parent[f];
    }
    current = std::move(folded.graph);
    current_volumes = std::move(folded.volumes);
    trace.folded_sizes.push_back(current.vertex_count());

    const bool budget_spent = phase_round >= rounds;
    if (two_phase && !unconstrained_done) {
      if (budget_spent || (options.early_stop && stalled)) {
        unconstrained_done = true;
        phase_round = 0;
      }
      continue;
    }
    if (budget_spent || (options.early_stop && stalled && penalty.settled(round, unconstrained_done))) {
      break;
    }
  }

  // After the last fold every original vertex maps to its community's folded vertex.
  trace.final_assignment = Assignment(std::vector<Label>(parent.begin(), parent.end()));
  return trace;
}

ChainTrace constrained_optimize(const WeightedGraph &graph, const VertexVolumes &volumes, Volume tau,
                                const PenaltySchedule &penalty, const CoolingSchedule &cooling, std::size_t sweeps,
                                std::size_t rounds, std::uint64_t seed, const OptimizeOptions &options) {
  CounterRng rng(seed, 0);
  return constrained_optimize(graph, volumes, tau, penalty, cooling, sweeps, rounds, rng, options);
}

EnsembleResult run_ensemble(const WeightedGraph &graph, const VertexVolumes &volumes, Volume tau,
                            const std::vector<ChainConfig> &configs, const EnsembleOptions &options) {
  if (options.chains < 1) {
    throw std::invalid_argument("an ensemble needs at least one chain");
  }
  if (configs.empty()) {
    throw std::invalid_argument("an ensemble needs at least one chain configuration");
  }

  EnsembleResult result;
  result.traces.assign(configs.size(), std::vector<ChainTrace>(options.chains));
  const std::size_t jobs = configs.size() * options.chains;
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t c = job / options.chains;
      const std::size_t n = job % options.chains;
      try {
        CounterRng rng(options.seed, n);
        const ChainConfig &cfg = configs[c];
        result.traces[c][n] = constrained_optimize(graph, volumes, tau, cfg.penalty, cfg.cooling, cfg.sweeps,
                                                   cfg.rounds, rng, options.optimize);
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };

  std::size_t threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.threads;
  threads = std::min(threads, jobs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
  }
  for (const auto &e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }

  // Deterministic reduction in (config, chain) order; strict comparisons keep
  // the earliest maximizer.
  bool have_overall = false;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (std::size_t n = 0; n < options.chains; ++n) {
      const ChainTrace &t = result.traces[c][n];
      if (!have_overall || t.best_overall.modularity > result.x_ddagger.state.modularity) {
        result.x_ddagger = {t.best_overall, c, n};
        have_overall = true;
      }
      if (t.best_feasible && (!result.x_dagger || t.best_feasible->modularity > result.x_dagger->state.modularity)) {
        result.x_dagger = EnsembleSelection{*t.best_feasible, c, n};
      }
    }
  }

  if (tau >= volumes.total()) {
    result.feasible_space_empty = true;
    result.diagnostic = "tau = " + std::to_string(tau) + " is not below the total volume " +
                        std::to_string(volumes.total()) + "; no assignment is feasible";
  } else if (!result.x_dagger) {
    result.diagnostic = "no feasible state was traversed";
  }
  return result;
}

Volume default_tau(const VertexVolumes &volumes, const Assignment &x_ddagger) {
  const std::size_t k = x_ddagger.community_count();
  if (k == 0) {
    throw std::invalid_argument("default_tau: assignment has no communities");
  }
  return volumes.total() / static_cast<Volume>(k);
}

} // namespace ccd
