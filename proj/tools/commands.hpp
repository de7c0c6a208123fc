#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "agm/comparator.hpp"
#include "agm/fitter.hpp"
#include "agm/generator.hpp"
#include "agm/io.hpp"
#include "run_config.hpp"

namespace agm::cli {

enum class ExitCode : int {
  ok = 0,
  failure = 1,
  usage = 2,
  parse = 3,
  infeasible = 4,
  io = 5,
  nonconvergence = 6,
  invalid_argument = 7,
};

/// A command failure that already knows its exit code.
class CommandError : public std::runtime_error {
 public:
  CommandError(ExitCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

/// Exit code for an exception escaping a command.
ExitCode exit_code_for(const std::exception& e);

namespace fs = std::filesystem;

/// Parses and preprocesses raw files, writes the dataset directory and
/// summary.txt into `out_dir`.
DatasetSummary cmd_ingest(const fs::path& edges, const fs::path& communities, const fs::path& out_dir,
                          CommunityFormat format = CommunityFormat::automatic);

struct FitOutcome {
  FitResult result;
  bool fit_epsilon = false;
};

/// Fits community probabilities to a dataset directory and writes the fit
/// report to `report_path`. Infeasible instances raise CommandError with
/// ExitCode::infeasible naming the uncovered edge by its original labels.
FitOutcome cmd_fit(const fs::path& dataset_dir, const RunConfig& config, const fs::path& report_path);

void write_fit_report(std::ostream& out, const FitResult& result, bool fit_epsilon);

/// Community probabilities (and epsilon, when a background rate was
/// fitted) from a fit report.
AgmParams read_fit_params(const fs::path& report_path);

/// Generates a graph over an affiliation network given either as a dataset
/// directory or a community file. Probabilities come from `params_path` (a
/// fit report) when non-empty, else from the power-law rule with
/// config.beta and config.scale. Writes a dataset directory plus
/// generation.txt recording the seed and parameters.
DatasetSummary cmd_generate(const fs::path& affiliation, const fs::path& params_path,
                            const RunConfig& config, std::uint64_t seed, const fs::path& out_dir);

struct StatsEntry {
  std::string name;
  bool present = false;
  std::string file;
};

/// Names accepted by cmd_stats: the twelve comparison properties plus AB,
/// SizeCCDF and MemCCDF.
std::vector<std::string> all_stat_names();

/// Writes one TSV per selected statistic and index.tsv into `out_dir`.
std::vector<StatsEntry> cmd_stats(const fs::path& dataset_dir, const RunConfig& config, std::uint64_t seed,
                                  const fs::path& out_dir);

/// Writes the KS report (aligned tables, then key/value lines).
ComparisonReport cmd_compare(const fs::path& real_dir, const fs::path& synth_dir, const RunConfig& config,
                             std::uint64_t seed, const fs::path& out_path);

/// Full pipeline ingest -> fit -> generate -> stats -> compare in a fresh
/// run directory under config.out. Returns the run directory.
fs::path cmd_bench(const RunConfig& config);

std::vector<Property> selected_properties(const RunConfig& config);

/// Seed from the config, or a fresh random one.
std::uint64_t resolve_seed(const RunConfig& config);

}  // namespace agm::cli
