#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ccd/graph.hpp"
#include "ccd/objective.hpp"
#include "ccd/rng.hpp"
#include "ccd/types.hpp"

namespace ccd {

/// Inverse-temperature schedule evaluated once per sweep (sweeps count from 1).
struct CoolingSchedule {
  enum class Kind { constant, exponential2, table };

  Kind kind = Kind::constant;
  double theta0 = 1.0;
  /// Above this theta a resample takes the argmax label, ties broken uniformly.
  double theta_cap = 0x1.0p40;
  /// Per-sweep values for Kind::table; the last entry repeats.
  std::vector<double> table;

  static CoolingSchedule constant(double theta);
  /// theta(t) = theta0 * 2^(t-1).
  static CoolingSchedule exponential(double theta0 = 1.0);
  static CoolingSchedule custom(std::vector<double> values);

  [[nodiscard]] double theta(std::size_t sweep) const;
  /// Throws std::invalid_argument on non-positive parameters.
  void validate() const;
};

struct SamplerOptions {
  /// Score only the current label and labels adjacent to v instead of every
  /// live label.
  bool neighbor_candidates_only = false;
  /// Stop after a sweep that changed nothing while in the argmax regime.
  bool halt_when_stable = false;
};

/// Mutable chain state for one graph: the assignment plus per-label caches of
/// member count, volume, and degree total, and the count of live labels whose
/// volume is <= tau.
class SweepState {
public:
  SweepState(const WeightedGraph &graph, const VertexVolumes &volumes, Assignment initial, Volume tau,
             CounterRng rng);

  [[nodiscard]] const Assignment &assignment() const { return assignment_; }
  [[nodiscard]] std::span<const Label> live_labels() const { return live_; }
  [[nodiscard]] std::size_t community_count() const { return live_.size(); }
  [[nodiscard]] bool is_live(Label l) const { return live_pos_[l] != kAbsent; }
  [[nodiscard]] std::size_t members(Label l) const { return members_[l]; }
  [[nodiscard]] Volume label_volume(Label l) const { return volume_[l]; }
  [[nodiscard]] double label_degree(Label l) const { return degree_total_[l]; }
  [[nodiscard]] std::size_t violating_count() const { return violating_; }
  [[nodiscard]] bool infeasible() const { return violating_ > 0; }
  [[nodiscard]] Volume tau() const { return tau_; }
  CounterRng &rng() { return rng_; }

private:
  friend bool resample_vertex(SweepState &, const WeightedGraph &, const VertexVolumes &, const PenaltyContext &,
                              double, Vertex, const SamplerOptions &);

  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

  void move(Vertex v, Label to, double degree, Volume volume);

  Assignment assignment_;
  std::vector<Label> live_;
  std::vector<std::size_t> live_pos_;
  std::vector<std::size_t> members_;
  std::vector<Volume> volume_;
  std::vector<double> degree_total_;
  std::size_t violating_ = 0;
  Volume tau_ = 0;
  CounterRng rng_;

  // Scratch space for resample_vertex.
  std::vector<double> weight_to_;
  std::vector<bool> touched_;
  std::vector<Label> candidates_;
  std::vector<double> scores_;
};

/// Draws a new label for v from the conditional distribution over live labels
/// and applies it. ctx.tau must equal state.tau(). Returns whether the label
/// changed.
bool resample_vertex(SweepState &state, const WeightedGraph &graph, const VertexVolumes &volumes,
                     const PenaltyContext &ctx, double theta, Vertex v, const SamplerOptions &options = {});

struct SweepRecord {
  std::size_t sweep = 0;
  double theta = 0.0;
  double modularity = 0.0;
  double hamiltonian = 0.0;
  bool infeasible = false;
  std::size_t community_count = 0;
  std::size_t changes = 0;
};

struct LocalTrace {
  std::vector<SweepRecord> records;
  /// Assignment at the end of each sweep.
  std::vector<Assignment> snapshots;
  Assignment final_assignment;
};

/// Gibbs sweeps: for t = 1..T set theta = cooling(t), visit all vertices in a
/// fresh random order and resample each. Records Q, H, T_tau and the community
/// count after every sweep. `rng` advances in place so callers can continue
/// the stream.
LocalTrace local_optimize(const WeightedGraph &graph, const VertexVolumes &volumes, const PenaltyContext &ctx,
                          const CoolingSchedule &cooling, std::size_t sweeps, const Assignment &initial,
                          CounterRng &rng, const SamplerOptions &options = {}, bool keep_snapshots = true);

/// Convenience overload starting from singletons with stream (seed, 0).
LocalTrace local_optimize(const WeightedGraph &graph, const VertexVolumes &volumes, const PenaltyContext &ctx,
                          const CoolingSchedule &cooling, std::size_t sweeps, std::uint64_t seed,
                          const SamplerOptions &options = {});

} // namespace ccd
