#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "ccd/generator.hpp"
#include "ccd/optimizer.hpp"
#include "ccd/sampler.hpp"

namespace ccd::cli {

/// Process exit codes.
enum class ExitCode : int {
  ok = 0,
  invalid_config = 1,
  parse_failure = 2,
  /// No feasible assignment was found; unconstrained results are still written.
  no_feasible_assignment = 3,
  write_failure = 4,
};

struct RunConfig {
  std::filesystem::path edges;
  /// Empty path: every vertex has volume 0.
  std::filesystem::path volumes;
  /// Overrides the vertex count implied by the inputs (must not be smaller).
  std::optional<std::size_t> vertices;
  /// nullopt selects auto mode: floor(total volume / |x_ddagger|).
  std::optional<Volume> tau;
  /// none | always | fold:j | end
  std::string penalty = "end";
  /// exp2 | exp2:theta0 | constant:theta
  std::string cooling = "exp2";
  double theta_cap = 0x1.0p40;
  std::size_t sweeps = 30;
  std::size_t rounds = 5;
  std::size_t chains = 250;
  std::uint64_t seed = 0;
  std::filesystem::path outdir = "ccd_out";
  bool fast = false;
  bool early_stop = true;
  /// 0 = hardware concurrency.
  std::size_t threads = 0;
};

/// Throws std::invalid_argument on an unknown preset.
PenaltySchedule parse_penalty(const std::string &text);
CoolingSchedule parse_cooling(const std::string &text, double theta_cap);
/// Throws std::invalid_argument for an inconsistent config.
void validate(const RunConfig &config);

/// Output file names inside RunConfig::outdir.
inline constexpr const char *kUnconstrainedFile = "assignment_unconstrained.csv";
inline constexpr const char *kConstrainedFile = "assignment_constrained.csv";
inline constexpr const char *kTraceFile = "trace.csv";
inline constexpr const char *kSummaryFile = "summary.txt";
/// Wall time lives apart from the summary so reruns stay byte-identical.
inline constexpr const char *kTimingFile = "timing.txt";

/// Runs the unconstrained and constrained ensembles and writes the artifacts.
/// Diagnostics go to `log`.
ExitCode cmd_detect(const RunConfig &config, std::ostream &log);

/// Writes a comparison report of two assignment files to `report` (stdout
/// when empty).
ExitCode cmd_compare(const std::filesystem::path &a, const std::filesystem::path &b,
                     const std::filesystem::path &volumes, Volume tau, const std::filesystem::path &report,
                     std::ostream &out, std::ostream &log);

/// Largest p the count command accepts, and the largest it cross-checks by enumeration.
inline constexpr unsigned kCountLimit = 200;
inline constexpr unsigned kEnumerateLimit = 10;

/// Prints Stirling row S(p, 0..p), ordered Bell of r, the printed feasible
/// count formula, the exact count, and an enumeration check when p is small.
ExitCode cmd_count(unsigned p, unsigned r, std::ostream &out, std::ostream &log);

/// Reads a planted-partition spec from JSON text. Throws nlohmann parse
/// errors on bad JSON and std::invalid_argument on bad fields.
PlantedSpec parse_planted_spec(const std::string &json_text);

/// Writes edges.txt, volumes.txt, ground_truth.csv into `outdir`.
ExitCode cmd_generate(const std::filesystem::path &spec, const std::filesystem::path &outdir, std::ostream &log);

} // namespace ccd::cli
