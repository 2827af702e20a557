#include "ccd/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "ccd/analysis.hpp"
#include "ccd/combinatorics.hpp"
#include "ccd/io.hpp"
#include "ccd/objective.hpp"

namespace ccd::cli {

namespace {

std::size_t parse_count(const std::string &text, const std::string &what) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception &) {
    pos = std::string::npos;
  }
  if (pos != text.size() || text.empty() || text.front() == '-') {
    throw std::invalid_argument("bad " + what + " '" + text + "'");
  }
  return static_cast<std::size_t>(value);
}

double parse_positive(const std::string &text, const std::string &what) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception &) {
    pos = std::string::npos;
  }
  if (pos != text.size() || !(value > 0.0)) {
    throw std::invalid_argument("bad " + what + " '" + text + "'");
  }
  return value;
}

std::string render(const io::KeyValueDoc &doc) {
  std::ostringstream out;
  doc.write(out);
  return out.str();
}

std::string render(const Assignment &x) {
  std::ostringstream out;
  io::write_assignment(out, x);
  return out.str();
}

Volume min_community_volume(const VertexVolumes &volumes, const Assignment &x) {
  const VolumeSummary s = community_volume_summary(volumes, x, 0);
  return s.totals.empty() ? 0 : s.totals.front();
}

} // namespace

PenaltySchedule parse_penalty(const std::string &text) {
  if (text == "none") {
    return PenaltySchedule::none();
  }
  if (text == "always") {
    return PenaltySchedule::always();
  }
  if (text == "end") {
    return PenaltySchedule::at_end();
  }
  if (text.rfind("fold:", 0) == 0) {
    return PenaltySchedule::at_fold(parse_count(text.substr(5), "fold index"));
  }
  throw std::invalid_argument("unknown penalty preset '" + text + "' (none | always | fold:j | end)");
}

CoolingSchedule parse_cooling(const std::string &text, double theta_cap) {
  CoolingSchedule c;
  if (text == "exp2") {
    c = CoolingSchedule::exponential();
  } else if (text.rfind("exp2:", 0) == 0) {
    c = CoolingSchedule::exponential(parse_positive(text.substr(5), "theta0"));
  } else if (text.rfind("constant:", 0) == 0) {
    c = CoolingSchedule::constant(parse_positive(text.substr(9), "theta"));
  } else {
    throw std::invalid_argument("unknown cooling preset '" + text + "' (exp2 | exp2:theta0 | constant:theta)");
  }
  c.theta_cap = theta_cap;
  c.validate();
  return c;
}

void validate(const RunConfig &config) {
  if (config.edges.empty()) {
    throw std::invalid_argument("an edge file is required");
  }
  if (config.tau && *config.tau < 0) {
    throw std::invalid_argument("tau must be non-negative");
  }
  if (config.sweeps == 0 || config.rounds == 0 || config.chains == 0) {
    throw std::invalid_argument("sweeps, rounds and chains must be positive");
  }
  parse_penalty(config.penalty);
  parse_cooling(config.cooling, config.theta_cap);
}

ExitCode cmd_detect(const RunConfig &config, std::ostream &log) {
  const auto started = std::chrono::steady_clock::now();
  PenaltySchedule penalty;
  CoolingSchedule cooling;
  try {
    validate(config);
    penalty = parse_penalty(config.penalty);
    cooling = parse_cooling(config.cooling, config.theta_cap);
  } catch (const std::invalid_argument &e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::invalid_config;
  }

  io::EdgeList edges;
  std::vector<std::pair<Vertex, Volume>> volume_entries;
  try {
    edges = io::read_edge_list(config.edges);
    if (!config.volumes.empty()) {
      volume_entries = io::read_volumes(config.volumes);
    }
  } catch (const std::exception &e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::parse_failure;
  }

  std::size_t p = edges.vertex_bound;
  for (const auto &[v, f] : volume_entries) {
    p = std::max<std::size_t>(p, v + std::size_t{1});
  }
  if (config.vertices) {
    if (*config.vertices < p) {
      log << "error: --vertices " << *config.vertices << " is smaller than the " << p << " vertices referenced\n";
      return ExitCode::invalid_config;
    }
    p = *config.vertices;
  }

  WeightedGraph graph;
  VertexVolumes volumes;
  try {
    graph = build_graph(edges.edges, p);
    volumes = io::expand_volumes(volume_entries, p);
    if (!(graph.total_weight() > 0.0)) {
      throw std::invalid_argument("graph has no edge weight, modularity is undefined");
    }
  } catch (const std::invalid_argument &e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::parse_failure;
  }

  EnsembleOptions options;
  options.chains = config.chains;
  options.seed = config.seed;
  options.threads = config.threads;
  options.optimize.sampler.neighbor_candidates_only = config.fast;
  options.optimize.early_stop = config.early_stop;
  options.optimize.keep_snapshots = false;

  const ChainConfig unconstrained{PenaltySchedule::none(), cooling, config.sweeps, config.rounds};
  const bool constrained_mode = penalty.kind != PenaltySchedule::Kind::zero;
  std::vector<ChainConfig> configs{unconstrained};
  if (constrained_mode) {
    configs.push_back({penalty, cooling, config.sweeps, config.rounds});
  }

  Volume tau = 0;
  if (config.tau) {
    tau = *config.tau;
  } else {
    // Pilot unconstrained ensemble; the full run below replays it exactly
    // because chain n of every config shares stream (seed, n).
    const EnsembleResult pilot = run_ensemble(graph, volumes, 0, {unconstrained}, options);
    tau = default_tau(volumes, pilot.x_ddagger.state.assignment);
    log << "auto tau = " << tau << " (total volume " << volumes.total() << " over "
        << pilot.x_ddagger.state.assignment.community_count() << " communities)\n";
  }

  const EnsembleResult result = run_ensemble(graph, volumes, tau, configs, options);
  const auto &best = result.x_ddagger;
  const Assignment x_ddagger = best.state.assignment.canonical();

  io::KeyValueDoc summary;
  summary.set("format", std::string("ccd-summary-1"));
  summary.set_int("vertices", static_cast<std::int64_t>(p));
  summary.set_int("edges", static_cast<std::int64_t>(graph.edge_count()));
  summary.set_double("total_weight", graph.total_weight());
  summary.set_int("total_volume", volumes.total());
  summary.set_int("special_vertices", static_cast<std::int64_t>(volumes.special_set().size()));
  summary.set("tau_mode", std::string(config.tau ? "explicit" : "auto"));
  summary.set_int("tau", tau);
  summary.set("penalty", penalty.name());
  summary.set("cooling", config.cooling);
  summary.set_double("theta_cap", config.theta_cap);
  summary.set_int("sweeps", static_cast<std::int64_t>(config.sweeps));
  summary.set_int("rounds", static_cast<std::int64_t>(config.rounds));
  summary.set_int("chains", static_cast<std::int64_t>(config.chains));
  summary.set("seed", std::to_string(config.seed));
  summary.set_bool("fast", config.fast);
  summary.set_bool("early_stop", config.early_stop);
  summary.set("trace_chain_layout", constrained_mode ? fmt::format("unconstrained 0..{}, constrained {}..{}",
                                                                   config.chains - 1, config.chains,
                                                                   2 * config.chains - 1)
                                                     : fmt::format("unconstrained 0..{}", config.chains - 1));
  summary.set_double("unconstrained_modularity", best.state.modularity);
  summary.set_int("unconstrained_communities", static_cast<std::int64_t>(x_ddagger.community_count()));
  summary.set_int("unconstrained_chain", static_cast<std::int64_t>(best.config * config.chains + best.chain));
  summary.set_int("unconstrained_round", static_cast<std::int64_t>(best.state.round));
  summary.set_int("unconstrained_sweep", static_cast<std::int64_t>(best.state.sweep));
  summary.set_bool("unconstrained_feasible", !infeasibility(volumes, x_ddagger, tau));
  summary.set_bool("constrained_present", result.x_dagger.has_value());

  Assignment x_dagger;
  if (result.x_dagger) {
    const auto &sel = *result.x_dagger;
    x_dagger = sel.state.assignment.canonical();
    summary.set_double("constrained_modularity", sel.state.modularity);
    summary.set_int("constrained_communities", static_cast<std::int64_t>(x_dagger.community_count()));
    summary.set_int("constrained_chain", static_cast<std::int64_t>(sel.config * config.chains + sel.chain));
    summary.set_int("constrained_round", static_cast<std::int64_t>(sel.state.round));
    summary.set_int("constrained_sweep", static_cast<std::int64_t>(sel.state.sweep));
    summary.set_int("constrained_min_community_volume", min_community_volume(volumes, x_dagger));
    summary.set_double("modularity_reduction", best.state.modularity - sel.state.modularity);
  }
  const bool failed = constrained_mode && !result.x_dagger;
  summary.set("status", std::string(failed ? "no_feasible_assignment" : "ok"));
  summary.set("diagnostic", result.diagnostic.empty() ? std::string("none") : result.diagnostic);

  std::ostringstream trace;
  trace << io::kTraceHeader << '\n';
  for (std::size_t c = 0; c < result.traces.size(); ++c) {
    for (std::size_t n = 0; n < result.traces[c].size(); ++n) {
      io::write_trace_rows(trace, c * config.chains + n, result.traces[c][n]);
    }
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  io::KeyValueDoc timing;
  timing.set_double("wall_seconds", seconds);

  io::AtomicFileSet files(config.outdir);
  files.add(kUnconstrainedFile, render(x_ddagger));
  if (result.x_dagger) {
    files.add(kConstrainedFile, render(x_dagger));
  }
  files.add(kTraceFile, trace.str());
  files.add(kSummaryFile, render(summary));
  files.add(kTimingFile, render(timing));
  try {
    std::error_code ignored;
    std::filesystem::remove(config.outdir / kConstrainedFile, ignored);
    files.commit();
  } catch (const std::exception &e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::write_failure;
  }

  log << fmt::format("Q(x_ddagger) = {:.6f} with {} communities\n", best.state.modularity,
                     x_ddagger.community_count());
  if (result.x_dagger) {
    log << fmt::format("Q(x_dagger)  = {:.6f} with {} communities (tau = {})\n", result.x_dagger->state.modularity,
                       x_dagger.community_count(), tau);
  } else if (constrained_mode) {
    log << "no feasible assignment: " << result.diagnostic << '\n';
  }
  return failed ? ExitCode::no_feasible_assignment : ExitCode::ok;
}

ExitCode cmd_compare(const std::filesystem::path &a_path, const std::filesystem::path &b_path,
                     const std::filesystem::path &volumes_path, Volume tau, const std::filesystem::path &report_path,
                     std::ostream &out, std::ostream &log) {
  Assignment a;
  Assignment b;
  std::vector<std::pair<Vertex, Volume>> entries;
  try {
    a = io::read_assignment(a_path);
    b = io::read_assignment(b_path);
    if (!volumes_path.empty()) {
      entries = io::read_volumes(volumes_path);
    }
  } catch (const std::exception &e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::parse_failure;
  }

  ComparisonReport r;
  try {
    if (a.size() != b.size()) {
      throw std::invalid_argument(
          fmt::format("assignments cover different vertex sets ({} vs {} vertices)", a.size(), b.size()));
    }
    if (tau < 0) {
      throw std::invalid_argument("tau must be non-negative");
    }
    r = compare_assignments(a, b, io::expand_volumes(entries, a.size()), tau);
  } catch (const std::invalid_argument &e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::invalid_config;
  }

  io::KeyValueDoc head;
  head.set("format", std::string("ccd-compare-1"));
  head.set_int("vertices", static_cast<std::int64_t>(a.size()));
  head.set_int("tau", tau);
  head.set_int("communities_a", static_cast<std::int64_t>(r.communities_a));
  head.set_int("communities_b", static_cast<std::int64_t>(r.communities_b));
  head.set_double("mean_size_a", r.mean_size_a);
  head.set_double("mean_size_b", r.mean_size_b);
  head.set_int("pairs_both", static_cast<std::int64_t>(r.pairs.both));
  head.set_int("pairs_only_a", static_cast<std::int64_t>(r.pairs.only_a));
  head.set_int("pairs_only_b", static_cast<std::int64_t>(r.pairs.only_b));
  double jaccard_sum = 0.0;
  for (double j : r.jaccard) {
    jaccard_sum += j;
  }
  head.set_double("jaccard_mean", r.jaccard.empty() ? 0.0 : jaccard_sum / static_cast<double>(r.jaccard.size()));
  head.set_double("fraction_at_most_tau_a", r.volumes_a.fraction_at_most_tau);
  head.set_double("fraction_at_most_tau_b", r.volumes_b.fraction_at_most_tau);
  head.set_double("fanout_violating", r.fanout_violating);
  head.set_double("fanout_feasible", r.fanout_feasible);
  head.set_double("size_change_violating", r.size_change_violating);
  head.set_double("size_change_feasible", r.size_change_feasible);

  std::ostringstream doc;
  head.write(doc);
  doc << "\n[jaccard]\nvertex,jaccard\n";
  for (std::size_t v = 0; v < r.jaccard.size(); ++v) {
    doc << v << ',' << io::format_double(r.jaccard[v]) << '\n';
  }
  doc << "\n[volumes_a]\nvolume\n";
  for (Volume f : r.volumes_a.totals) {
    doc << f << '\n';
  }
  doc << "\n[volumes_b]\nvolume\n";
  for (Volume f : r.volumes_b.totals) {
    doc << f << '\n';
  }
  doc << "\n[overlap]\na_community,b_community,shared\n";
  for (const OverlapEdge &e : r.overlap) {
    doc << e.a_community << ',' << e.b_community << ',' << e.shared << '\n';
  }

  if (report_path.empty()) {
    out << doc.str();
    return ExitCode::ok;
  }
  try {
    const auto dir = report_path.has_parent_path() ? report_path.parent_path() : std::filesystem::path(".");
    io::AtomicFileSet files(dir);
    files.add(report_path.filename().string(), doc.str());
    files.commit();
  } catch (const std::exception &e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::write_failure;
  }
  return ExitCode::ok;
}

ExitCode cmd_count(unsigned p, unsigned r, std::ostream &out, std::ostream &log) {
  if (p == 0 || p > kCountLimit || r > p) {
    log << "error: need 1 <= p <= " << kCountLimit << " and r <= p\n";
    return ExitCode::invalid_config;
  }
  io::KeyValueDoc doc;
  doc.set_int("p", p);
  doc.set_int("r", r);
  std::string row;
  for (unsigned k = 0; k <= p; ++k) {
    row += (k ? " " : "") + stirling2(p, k).str();
  }
  doc.set("stirling2_row", row);
  doc.set("ordered_bell", ordered_bell(r).str());
  doc.set_double("ordered_bell_approx", ordered_bell_approx(r));
  const BigCount closed_form = count_feasible_closed_form(p, r);
  const BigCount exact = count_feasible_exact(p, r);
  doc.set("feasible_closed_form", closed_form.str());
  doc.set("feasible_exact", exact.str());
  doc.set_bool("closed_form_matches", closed_form == exact);
  if (p <= kEnumerateLimit) {
    const std::uint64_t enumerated = count_feasible_enumerated(p, r);
    doc.set("feasible_enumerated", std::to_string(enumerated));
    doc.set_bool("enumeration_matches_exact", BigCount(enumerated) == exact);
  }
  doc.write(out);
  return ExitCode::ok;
}

PlantedSpec parse_planted_spec(const std::string &json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  if (!j.is_object()) {
    throw std::invalid_argument("spec must be a JSON object");
  }
  static const char *known[] = {"blocks",           "p_in",       "p_out",      "weight_min", "weight_max",
                                "specials_per_block", "volume_min", "volume_max", "seed"};
  for (const auto &[key, value] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw std::invalid_argument("unknown spec key '" + key + "'");
    }
  }
  PlantedSpec spec;
  try {
    spec.block_sizes = j.at("blocks").get<std::vector<std::size_t>>();
    spec.p_in = j.value("p_in", spec.p_in);
    spec.p_out = j.value("p_out", spec.p_out);
    spec.weight_min = j.value("weight_min", spec.weight_min);
    spec.weight_max = j.value("weight_max", spec.weight_max);
    spec.specials_per_block = j.value("specials_per_block", spec.specials_per_block);
    spec.volume_min = j.value("volume_min", spec.volume_min);
    spec.volume_max = j.value("volume_max", spec.volume_max);
    spec.seed = j.value("seed", spec.seed);
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument(std::string("bad spec field: ") + e.what());
  }
  spec.validate();
  return spec;
}

ExitCode cmd_generate(const std::filesystem::path &spec_path, const std::filesystem::path &outdir,
                      std::ostream &log) {
  std::ifstream in(spec_path);
  if (!in) {
    log << "error: cannot open " << spec_path.string() << '\n';
    return ExitCode::parse_failure;
  }
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  PlantedSpec spec;
  try {
    spec = parse_planted_spec(text);
  } catch (const nlohmann::json::parse_error &e) {
    log << "error: " << spec_path.string() << ": " << e.what() << '\n';
    return ExitCode::parse_failure;
  } catch (const std::invalid_argument &e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::invalid_config;
  }

  const PlantedInstance inst = generate(spec);
  std::ostringstream edges;
  io::write_edge_list(edges, inst.edges);
  std::ostringstream volumes;
  io::write_volumes(volumes, inst.volumes);

  io::AtomicFileSet files(outdir);
  files.add("edges.txt", edges.str());
  files.add("volumes.txt", volumes.str());
  files.add("ground_truth.csv", render(inst.ground_truth));
  try {
    files.commit();
  } catch (const std::exception &e) {
    log << "error: " << e.what() << '\n';
    return ExitCode::write_failure;
  }
  log << fmt::format("wrote {} vertices, {} edges, {} special vertices to {}\n", inst.graph.vertex_count(),
                     inst.edges.size(), inst.volumes.special_set().size(), outdir.string());
  return ExitCode::ok;
}

} // namespace ccd::cli
