// agm: ingest, fit, generate, measure and compare community-affiliation graphs.

#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "agm/parallel.hpp"
#include "commands.hpp"

using namespace agm;
using namespace agm::cli;

namespace {

// Options shared by every subcommand. Only flags the user actually passed
// are applied, so they can override a config file.
struct FlagSet {
  std::map<std::string, std::string> values;
  bool fit_epsilon = false;
  bool allow_quadratic = false;

  void attach(CLI::App* app) {
    auto add = [&](const std::string& flag, const std::string& key, const std::string& help) {
      app->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { values[key] = v; }, help);
    };
    add("--seed", "seed", "Random seed (recorded in outputs)");
    add("--threads", "threads", "Worker thread cap (0 = all cores)");
    add("--tol", "tol", "Relative convergence tolerance");
    add("--max-iter", "max_iter", "Maximum optimizer iterations");
    add("--beta", "beta", "Power-law exponent for p_c = scale * n_c^-beta");
    add("--scale", "scale", "Power-law scale");
    add("--epsilon", "epsilon", "Background edge probability");
    add("--bins", "bins", "Log-bin factor");
    add("--min-bin-samples", "min_bin_samples", "Suppress bins with fewer samples");
    add("--k-max", "k_max", "Largest shared-community count measured");
    add("--pair-sample", "pair_sample", "Community pairs sampled for overlap clustering");
    add("--hop-sources", "hop_sources", "BFS sources for sampled hop plots");
    add("--eig-k", "eig_k", "Number of eigenvalues");
    add("--properties", "properties", "Comma-separated property selection");
    add("--community-format", "community_format", "auto, lines or pairs");
    app->add_flag_callback("--fit-epsilon", [this] { values["fit_epsilon"] = "1"; },
                           "Fit a background community covering all pairs");
    app->add_flag_callback("--allow-quadratic", [this] { values["allow_quadratic"] = "1"; },
                           "Allow background sampling above the node-count guard");
  }

  void apply(RunConfig& config) const {
    for (const auto& [k, v] : values) config.set(k, v);
    config.validate();
  }
};

int report(const std::exception& e) {
  const auto code = exit_code_for(e);
  std::cerr << "error: " << e.what() << '\n';
  return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community-affiliation graph model toolkit"};
  app.require_subcommand(1);

  FlagSet flags;
  std::string out;
  std::string edges_path, communities_path, dataset_path, affiliation_path, params_path, real_path,
      synth_path, config_path;

  auto* ingest = app.add_subcommand("ingest", "Parse and preprocess an edge list and community file");
  ingest->add_option("edges", edges_path, "Edge list file")->required();
  ingest->add_option("communities", communities_path, "Community file")->required();
  ingest->add_option("--out", out, "Output dataset directory")->required();

  auto* fit_cmd = app.add_subcommand("fit", "Fit per-community edge probabilities");
  fit_cmd->add_option("dataset", dataset_path, "Dataset directory")->required();
  fit_cmd->add_option("--out", out, "Fit report path")->required();

  auto* gen = app.add_subcommand("generate", "Generate a graph from an affiliation network");
  gen->add_option("affiliation", affiliation_path, "Dataset directory or community file")->required();
  gen->add_option("--params", params_path, "Fit report with community probabilities");
  gen->add_option("--out", out, "Output dataset directory")->required();

  auto* stats = app.add_subcommand("stats", "Measure community and network properties");
  stats->add_option("dataset", dataset_path, "Dataset directory")->required();
  stats->add_option("--out", out, "Output directory")->required();

  auto* compare = app.add_subcommand("compare", "KS comparison of two datasets");
  compare->add_option("real", real_path, "Reference dataset directory")->required();
  compare->add_option("synth", synth_path, "Candidate dataset directory")->required();
  compare->add_option("--out", out, "Report path")->required();

  auto* bench = app.add_subcommand("bench", "Run ingest, fit, generate, stats and compare from a config file");
  bench->add_option("config", config_path, "Config file (key=value)")->required();
  bench->add_option_function<std::string>("--out", [&](const std::string& v) { flags.values["out"] = v; },
                                          "Output root (overrides config)");

  for (auto* sub : {ingest, fit_cmd, gen, stats, compare, bench}) flags.attach(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
  }

  try {
    RunConfig config;
    if (bench->parsed()) {
      config = parse_run_config(read_file(config_path));
    }
    flags.apply(config);
    set_max_threads(config.threads);

    if (ingest->parsed()) {
      const auto s = cmd_ingest(edges_path, communities_path, out, config.community_format);
      write_summary(std::cout, s);
    } else if (fit_cmd->parsed()) {
      const auto outcome = cmd_fit(dataset_path, config, out);
      std::cout << "log_likelihood\t" << format_double(outcome.result.log_likelihood) << '\n'
                << "iterations\t" << outcome.result.iterations << '\n'
                << "converged\t" << (outcome.result.converged ? 1 : 0) << '\n';
      if (!outcome.result.converged) {
        std::cerr << "error: optimizer did not converge in " << config.max_iter << " iterations\n";
        return static_cast<int>(ExitCode::nonconvergence);
      }
    } else if (gen->parsed()) {
      const auto seed = resolve_seed(config);
      if (!config.seed) std::cerr << "note: using seed " << seed << '\n';
      const auto s = cmd_generate(affiliation_path, params_path, config, seed, out);
      write_summary(std::cout, s);
    } else if (stats->parsed()) {
      const auto seed = resolve_seed(config);
      for (const auto& e : cmd_stats(dataset_path, config, seed, out)) {
        std::cout << e.name << '\t' << (e.present ? "ok" : "absent") << '\n';
      }
    } else if (compare->parsed()) {
      const auto seed = resolve_seed(config);
      const auto r = cmd_compare(real_path, synth_path, config, seed, out);
      write_report_table(std::cout, r);
    } else if (bench->parsed()) {
      const auto dir = cmd_bench(config);
      std::cout << dir.string() << '\n';
    }
  } catch (const std::exception& e) {
    return report(e);
  }
  return 0;
}
