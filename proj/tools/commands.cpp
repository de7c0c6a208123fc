#include "commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "agm/community_metrics.hpp"
#include "agm/network_props.hpp"
#include "agm/parallel.hpp"

#ifndef AGM_VERSION
#define AGM_VERSION "0.0.0"
#endif

namespace agm::cli {

namespace {

constexpr const char* kModules[] = {"graph_core", "io_ingest", "agm_generator", "fitter",
                                    "community_metrics", "network_props", "comparator", "cli"};

std::string curve_text(const Curve& c) {
  std::ostringstream ss;
  write_curve_tsv(ss, c);
  return ss.str();
}

AffiliationNetwork read_affiliation_file(const fs::path& path, CommunityFormat format,
                                         std::vector<Label>& labels) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<Label>> raw;
  try {
    raw = parse_community_file(in, format);
  } catch (const ParseError& e) {
    throw e.with_source(path.string());
  }
  labels.clear();
  for (const auto& c : raw) labels.insert(labels.end(), c.begin(), c.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<std::vector<NodeId>> communities;
  communities.reserve(raw.size());
  for (const auto& c : raw) {
    std::vector<NodeId> members;
    for (Label l : c) {
      members.push_back(static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin()));
    }
    communities.push_back(std::move(members));
  }
  return AffiliationNetwork(labels.size(), std::move(communities));
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

}  // namespace

ExitCode exit_code_for(const std::exception& e) {
  if (auto* c = dynamic_cast<const CommandError*>(&e)) return c->code();
  if (dynamic_cast<const ConfigRangeError*>(&e)) return ExitCode::invalid_argument;
  if (dynamic_cast<const ConfigError*>(&e)) return ExitCode::usage;
  if (dynamic_cast<const ParseError*>(&e)) return ExitCode::parse;
  if (dynamic_cast<const InfeasibleError*>(&e)) return ExitCode::infeasible;
  if (dynamic_cast<const IoError*>(&e)) return ExitCode::io;
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return ExitCode::io;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return ExitCode::invalid_argument;
  return ExitCode::failure;
}

std::uint64_t resolve_seed(const RunConfig& config) {
  if (config.seed) return *config.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::vector<Property> selected_properties(const RunConfig& config) {
  std::vector<Property> out;
  if (config.properties.empty()) {
    out.assign(kCommunityProperties.begin(), kCommunityProperties.end());
    out.insert(out.end(), kNetworkProperties.begin(), kNetworkProperties.end());
    return out;
  }
  for (const auto& name : config.properties) {
    auto p = parse_property(name);
    if (!p) {
      // Stats-only names are accepted in configs shared with `stats`.
      if (name == "AB" || name == "SizeCCDF" || name == "MemCCDF") continue;
      throw ConfigError("properties", "unknown property '" + name + "'");
    }
    out.push_back(*p);
  }
  return out;
}

DatasetSummary cmd_ingest(const fs::path& edges, const fs::path& communities, const fs::path& out_dir,
                          CommunityFormat format) {
  std::istringstream edge_in(read_file(edges));
  std::istringstream comm_in(read_file(communities));
  std::vector<LabelEdge> edge_list;
  std::vector<std::vector<Label>> groups;
  try {
    edge_list = parse_edge_list(edge_in);
  } catch (const ParseError& e) {
    throw e.with_source(edges.string());
  }
  try {
    groups = parse_community_file(comm_in, format);
  } catch (const ParseError& e) {
    throw e.with_source(communities.string());
  }
  const auto ds = preprocess(edge_list, groups);
  save_dataset(out_dir, ds);
  const auto summary = summarize(ds);
  std::ostringstream ss;
  write_summary(ss, summary);
  write_file(out_dir / "summary.txt", ss.str());
  return summary;
}

void write_fit_report(std::ostream& out, const FitResult& r, bool fit_epsilon) {
  const std::size_t communities = r.p.size() - (fit_epsilon ? 1 : 0);
  std::size_t boundary = 0;
  for (bool b : r.at_boundary) boundary += b;
  out << "# agm fit report\n";
  out << "communities\t" << communities << '\n';
  out << "fit_epsilon\t" << (fit_epsilon ? 1 : 0) << '\n';
  out << "log_likelihood\t" << format_double(r.log_likelihood) << '\n';
  out << "iterations\t" << r.iterations << '\n';
  out << "converged\t" << (r.converged ? 1 : 0) << '\n';
  out << "grad_norm\t" << format_double(r.grad_norm) << '\n';
  out << "boundary_count\t" << boundary << '\n';
  const bool eps_boundary = fit_epsilon && r.at_boundary.back();
  out << "epsilon\t" << (fit_epsilon ? format_double(eps_boundary ? 1.0 : r.p.back()) : "0") << '\n';
  out << "# community\tp\tx\tboundary\n";
  for (std::size_t c = 0; c < communities; ++c) {
    // A capped rate means the likelihood still increases toward p = 1.
    out << c << '\t' << format_double(r.at_boundary[c] ? 1.0 : r.p[c]) << '\t' << format_double(r.x[c]) << '\t'
        << (r.at_boundary[c] ? 1 : 0) << '\n';
  }
}

FitOutcome cmd_fit(const fs::path& dataset_dir, const RunConfig& config, const fs::path& report_path) {
  const auto ds = load_dataset(dataset_dir);
  FitOutcome outcome;
  outcome.fit_epsilon = config.fit_epsilon;
  std::optional<FitProblem> problem;
  try {
    problem = FitProblem::build(ds.graph, ds.affiliations, config.fit_epsilon);
  } catch (const InfeasibleError& e) {
    throw CommandError(ExitCode::infeasible,
                       "infeasible instance: edge (" + std::to_string(ds.label(e.u())) + ", " +
                           std::to_string(ds.label(e.v())) +
                           ") shares no community; rerun with --fit-epsilon to fit a background rate");
  }
  FitConfig fc;
  fc.tol = config.tol;
  fc.max_iter = config.max_iter;
  outcome.result = fit(*problem, fc);
  std::ostringstream ss;
  write_fit_report(ss, outcome.result, config.fit_epsilon);
  write_file(report_path, ss.str());
  return outcome;
}

AgmParams read_fit_params(const fs::path& report_path) {
  std::istringstream in(read_file(report_path));
  AgmParams params;
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected = 0;
  bool have_count = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string first;
    fields >> first;
    if (first == "communities") {
      fields >> expected;
      have_count = true;
    } else if (first == "epsilon") {
      fields >> params.epsilon;
    } else if (!first.empty() && std::isdigit(static_cast<unsigned char>(first.front()))) {
      double p = 0;
      if (!(fields >> p) || std::stoull(first) != params.p.size()) {
        throw ParseError(line_no, "malformed community row", report_path.string());
      }
      params.p.push_back(p);
    }
    if (!fields && !fields.eof()) throw ParseError(line_no, "malformed value", report_path.string());
  }
  if (!have_count || expected != params.p.size()) {
    throw ParseError(line_no, "fit report lists " + std::to_string(params.p.size()) +
                                  " communities, header says " + std::to_string(expected),
                     report_path.string());
  }
  return params;
}

DatasetSummary cmd_generate(const fs::path& affiliation, const fs::path& params_path, const RunConfig& config,
                            std::uint64_t seed, const fs::path& out_dir) {
  Dataset ds;
  if (fs::is_directory(affiliation)) {
    auto src = load_dataset(affiliation);
    ds.affiliations = std::move(src.affiliations);
    ds.labels = std::move(src.labels);
  } else {
    ds.affiliations = read_affiliation_file(affiliation, config.community_format, ds.labels);
  }

  AgmParams params;
  std::string source;
  if (!params_path.empty()) {
    params = read_fit_params(params_path);
    if (config.epsilon > 0.0) params.epsilon = config.epsilon;
    // relative to the output directory, so bench reruns write identical files
    source = "fit_report " + fs::absolute(params_path).lexically_proximate(fs::absolute(out_dir)).string();
  } else {
    if (!config.beta) throw ConfigError("beta", "generation needs --params or --beta");
    std::size_t clipped = 0;
    params = assign_probs_power_law(ds.affiliations, *config.beta, config.scale, &clipped);
    if (clipped > 0) std::cerr << "warning: " << clipped << " community probabilities clipped to 1\n";
    params.epsilon = config.epsilon;
    source = "power_law";
  }
  GenerateOptions options;
  options.allow_quadratic = config.allow_quadratic;
  ds.graph = generate(ds.affiliations, params, seed, options);
  save_dataset(out_dir, ds);

  std::ostringstream ss;
  ss << "# agm generation\n";
  ss << "seed\t" << seed << '\n';
  ss << "source\t" << source << '\n';
  if (params_path.empty()) {
    ss << "beta\t" << format_double(*config.beta) << '\n';
    ss << "scale\t" << format_double(config.scale) << '\n';
  }
  ss << "epsilon\t" << format_double(params.epsilon) << '\n';
  write_file(out_dir / "generation.txt", ss.str());

  const auto summary = summarize(ds);
  std::ostringstream sum;
  write_summary(sum, summary);
  write_file(out_dir / "summary.txt", sum.str());
  return summary;
}

std::vector<std::string> all_stat_names() {
  std::vector<std::string> names;
  for (Property p : kCommunityProperties) names.emplace_back(property_name(p));
  names.emplace_back("AB");
  for (Property p : kNetworkProperties) names.emplace_back(property_name(p));
  names.emplace_back("SizeCCDF");
  names.emplace_back("MemCCDF");
  return names;
}

std::vector<StatsEntry> cmd_stats(const fs::path& dataset_dir, const RunConfig& config, std::uint64_t seed,
                                  const fs::path& out_dir) {
  const auto ds = load_dataset(dataset_dir);
  const auto options = config.suite_options(seed);

  std::vector<std::string> names = config.properties.empty() ? all_stat_names() : config.properties;
  for (auto& n : names) {
    if (auto p = parse_property(n)) {
      n = property_name(*p);
    } else if (n != "AB" && n != "SizeCCDF" && n != "MemCCDF") {
      throw ConfigError("properties", "unknown statistic '" + n + "'");
    }
  }

  std::optional<OverlapCurves> overlap;
  std::optional<SpectralSummary> spectrum;
  std::optional<double> slope;
  std::vector<StatsEntry> entries;
  for (const auto& name : names) {
    std::optional<Curve> curve;
    if (name == "OO" || name == "AABB" || name == "AB") {
      if (!overlap) overlap = overlap_clustering(ds, options.pair_sample, options.bins, options.seed);
      curve = name == "OO" ? overlap->oo : name == "AABB" ? overlap->aabb : overlap->ab;
    } else if (name == "EigVal" || name == "EigVec") {
      if (ds.graph.node_count() > 0) {
        if (!spectrum) spectrum = spectral_summary(ds.graph, options.spectral);
        curve = name == "EigVal" ? eigenvalue_curve(*spectrum) : eigenvector_curve(*spectrum);
      }
    } else if (name == "SizeCCDF") {
      if (ds.affiliations.community_count() > 0) curve = community_size_ccdf(ds);
    } else if (name == "MemCCDF") {
      if (ds.affiliations.membership_count() > 0) curve = membership_ccdf(ds);
    } else if (name == "Vol") {
      auto sc = edges_vs_size(ds, options.bins);
      curve = sc.curve;
      slope = sc.slope;
    } else if (name == "PC") {
      auto cc = connector_in_overlap(ds, options.connector_bins, options.bins.min_samples);
      curve = cc.curve;
      if (!cc.curve.empty()) write_file(out_dir / "PC_reference.tsv", curve_text(cc.reference));
    } else {
      curve = property_curve(ds, *parse_property(name), options);
    }

    StatsEntry entry{name, curve && !curve->empty(), {}};
    if (entry.present) {
      entry.file = name + ".tsv";
      write_file(out_dir / entry.file, curve_text(*curve));
    } else {
      std::cerr << "warning: " << name << " is not computable on this dataset; skipped\n";
    }
    entries.push_back(entry);
  }

  std::ostringstream index;
  index << "# statistic\tstatus\tfile\n";
  for (const auto& e : entries) {
    index << e.name << '\t' << (e.present ? "ok" : "absent") << '\t' << (e.present ? e.file : "-") << '\n';
  }
  index << "# seed\t" << seed << '\n';
  if (slope) index << "# densification_slope\t" << format_double(*slope) << '\n';
  write_file(out_dir / "index.tsv", index.str());
  return entries;
}

ComparisonReport cmd_compare(const fs::path& real_dir, const fs::path& synth_dir, const RunConfig& config,
                             std::uint64_t seed, const fs::path& out_path) {
  const auto real = load_dataset(real_dir);
  const auto synth = load_dataset(synth_dir);
  const auto props = selected_properties(config);
  auto report = compare_suite(real, synth, props, config.suite_options(seed), "synthetic");
  std::ostringstream ss;
  ss << "# agm comparison: reference " << real_dir.filename().string() << ", candidate "
     << synth_dir.filename().string() << ", seed " << seed << '\n';
  write_report_table(ss, report);
  ss << "# key\tvalue\n";
  write_report_kv(ss, report);
  write_file(out_path, ss.str());
  return report;
}

fs::path cmd_bench(const RunConfig& config) {
  config.validate();
  for (const char* key : {"edges", "communities", "out"}) {
    const std::string& v = std::string(key) == "edges" ? config.edges
                           : std::string(key) == "communities" ? config.communities
                                                               : config.out;
    if (v.empty()) throw ConfigError(key, "missing required key");
  }
  RunConfig run = config;
  run.seed = resolve_seed(config);
  const std::uint64_t seed = *run.seed;
  const std::string canonical = run.canonical();
  const std::string hash = fnv1a_hex(canonical);

  fs::path dir = fs::path(run.out) / ("run-" + timestamp() + "-" + hash.substr(0, 8));
  for (int n = 1; fs::exists(dir); ++n) {
    dir = fs::path(run.out) / ("run-" + timestamp() + "-" + hash.substr(0, 8) + "-" + std::to_string(n));
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CommandError(ExitCode::io, "cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::pair<std::string, std::string>> stage_log;
  auto stage = [&](const std::string& name, auto&& fn) {
    try {
      fn();
      stage_log.emplace_back(name, "ok");
    } catch (const std::exception& e) {
      throw CommandError(exit_code_for(e), "stage " + name + " failed: " + e.what());
    }
  };

  FitOutcome fit_outcome;
  stage("ingest", [&] { cmd_ingest(run.edges, run.communities, dir / "data", run.community_format); });
  stage("fit", [&] { fit_outcome = cmd_fit(dir / "data", run, dir / "fit.txt"); });
  stage("generate", [&] { cmd_generate(dir / "data", dir / "fit.txt", run, seed, dir / "synth"); });
  stage("stats", [&] {
    cmd_stats(dir / "data", run, seed, dir / "stats" / "real");
    cmd_stats(dir / "synth", run, seed, dir / "stats" / "synth");
  });
  stage("compare", [&] { cmd_compare(dir / "data", dir / "synth", run, seed, dir / "compare.txt"); });

  std::ostringstream manifest;
  manifest << "# agm bench manifest\n";
  manifest << "seed\t" << seed << '\n';
  manifest << "config_hash\t" << hash << '\n';
  for (const char* m : kModules) manifest << "version." << m << '\t' << AGM_VERSION << '\n';
  for (const auto& [name, status] : stage_log) manifest << "stage." << name << '\t' << status << '\n';
  manifest << "fit.converged\t" << (fit_outcome.result.converged ? 1 : 0) << '\n';
  manifest << "fit.iterations\t" << fit_outcome.result.iterations << '\n';
  manifest << "# config\n";
  std::istringstream lines(canonical);
  for (std::string line; std::getline(lines, line);) manifest << "config." << line << '\n';
  write_file(dir / "manifest.txt", manifest.str());
  if (!fit_outcome.result.converged) {
    std::cerr << "warning: fit did not converge in " << fit_outcome.result.iterations << " iterations\n";
  }
  return dir;
}

}  // namespace agm::cli
