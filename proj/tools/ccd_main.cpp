#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ccd/cli.hpp"

namespace {

int code(ccd::cli::ExitCode c) { return static_cast<int>(c); }

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Constrained community detection by Gibbs sampling with folding"};
  app.require_subcommand(1);

  ccd::cli::RunConfig run;
  std::string tau_text = "auto";
  std::size_t vertices = 0;
  auto *detect = app.add_subcommand("detect", "Run unconstrained and constrained ensembles");
  detect->add_option("--edges", run.edges, "Edge list, one 'u v w' per line")->required();
  detect->add_option("--volumes", run.volumes, "Volume file, one 'v f' per line");
  detect->add_option("--vertices", vertices, "Vertex count when it exceeds the largest index + 1");
  detect->add_option("--tau", tau_text, "Volume threshold, or 'auto'")->capture_default_str();
  detect->add_option("--penalty", run.penalty, "none | always | fold:j | end")->capture_default_str();
  detect->add_option("--cooling", run.cooling, "exp2 | exp2:theta0 | constant:theta")->capture_default_str();
  detect->add_option("--theta-cap", run.theta_cap, "Inverse temperature above which moves are greedy")
      ->capture_default_str();
  detect->add_option("-T,--sweeps", run.sweeps, "Sweeps per round")->capture_default_str();
  detect->add_option("-R,--rounds", run.rounds, "Folding rounds")->capture_default_str();
  detect->add_option("-N,--chains", run.chains, "Chains per ensemble")->capture_default_str();
  detect->add_option("--seed", run.seed, "Ensemble seed")->capture_default_str();
  detect->add_option("-o,--out", run.outdir, "Output directory")->capture_default_str();
  detect->add_option("--threads", run.threads, "Worker threads, 0 for all cores")->capture_default_str();
  detect->add_flag("--fast", run.fast, "Only consider labels adjacent to the vertex");
  bool no_early_stop = false;
  detect->add_flag("--no-early-stop", no_early_stop, "Always run the full round budget");

  std::string cmp_a;
  std::string cmp_b;
  std::string cmp_volumes;
  std::string cmp_report;
  ccd::Volume cmp_tau = 0;
  auto *compare = app.add_subcommand("compare", "Compare two assignment files");
  compare->add_option("a", cmp_a, "First assignment CSV")->required();
  compare->add_option("b", cmp_b, "Second assignment CSV")->required();
  compare->add_option("--volumes", cmp_volumes, "Volume file");
  compare->add_option("--tau", cmp_tau, "Volume threshold")->capture_default_str();
  compare->add_option("-o,--out", cmp_report, "Report file (stdout if omitted)");

  unsigned count_p = 0;
  unsigned count_r = 0;
  auto *count = app.add_subcommand("count", "Partition and feasible-assignment counts");
  count->add_option("p", count_p, "Number of vertices")->required();
  count->add_option("r", count_r, "Number of special vertices")->required();

  std::string gen_spec;
  std::string gen_out = "instance";
  auto *gen = app.add_subcommand("generate", "Write a planted-partition instance");
  gen->add_option("spec", gen_spec, "JSON spec file")->required();
  gen->add_option("-o,--out", gen_out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ccd::cli::ExitCode::invalid_config);
  }

  if (*detect) {
    if (tau_text != "auto") {
      try {
        std::size_t pos = 0;
        run.tau = std::stoll(tau_text, &pos);
        if (pos != tau_text.size()) {
          throw std::invalid_argument(tau_text);
        }
      } catch (const std::exception &) {
        std::cerr << "error: --tau must be an integer or 'auto'\n";
        return code(ccd::cli::ExitCode::invalid_config);
      }
    }
    if (vertices > 0) {
      run.vertices = vertices;
    }
    run.early_stop = !no_early_stop;
    return code(ccd::cli::cmd_detect(run, std::cerr));
  }
  if (*compare) {
    return code(ccd::cli::cmd_compare(cmp_a, cmp_b, cmp_volumes, cmp_tau, cmp_report, std::cout, std::cerr));
  }
  if (*count) {
    return code(ccd::cli::cmd_count(count_p, count_r, std::cout, std::cerr));
  }
  return code(ccd::cli::cmd_generate(gen_spec, gen_out, std::cerr));
}
