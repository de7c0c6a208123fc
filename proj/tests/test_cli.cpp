#include <gtest/gtest.h>

#include <sys/wait.h>

#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "test_support.hpp"

using namespace agm;
using namespace agm::cli;
using namespace agm::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = AGM_FIXTURE_DIR;

int run_cli(const std::string& args, std::string* err = nullptr) {
  TempDir tmp("cli-stderr");
  const auto err_path = tmp / "stderr.txt";
  const std::string cmd = std::string(AGM_CLI_PATH) + " " + args + " >/dev/null 2>" + err_path.string();
  const int status = std::system(cmd.c_str());
  if (err) *err = read_file(err_path);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> index_of(const fs::path& dir) {
  std::map<std::string, std::string> out;
  std::istringstream in(read_file(dir / "index.tsv"));
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string name, status;
    ls >> name >> status;
    out[name] = status;
  }
  return out;
}

RunConfig seeded(std::uint64_t seed = 7) {
  RunConfig c;
  c.seed = seed;
  c.min_bin_samples = 1;
  c.eig_k = 5;
  return c;
}

}  // namespace

TEST(RunConfig, ParsesAndRejects) {
  auto c = parse_run_config("# comment\nseed = 5\ntol=1e-7\nproperties=Vol, Deg\n");
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.tol, 1e-7);
  EXPECT_EQ(c.properties, (std::vector<std::string>{"Vol", "Deg"}));
  try {
    parse_run_config("colour=blue\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "colour");
  }
  EXPECT_THROW(parse_run_config("beta=1.5\n"), ConfigError);
  EXPECT_THROW(parse_run_config("tol=abc\n"), ConfigError);
  EXPECT_THROW(parse_run_config("seed\n"), ConfigError);
  try {
    parse_run_config("seed=1\n", {"edges"});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "edges");
  }
}

TEST(RunConfig, CanonicalIsOrderIndependent) {
  auto a = parse_run_config("seed=1\nbeta=0.4\n");
  auto b = parse_run_config("beta=0.4\nseed=1\n");
  EXPECT_EQ(a.canonical(), b.canonical());
  EXPECT_EQ(fnv1a_hex(a.canonical()), fnv1a_hex(b.canonical()));
  EXPECT_NE(fnv1a_hex(a.canonical()), fnv1a_hex(parse_run_config("seed=2\n").canonical()));
}

TEST(Ingest, Triangle) {
  TempDir out("ingest-tri");
  auto s = cmd_ingest(kFixtures / "triangle_edges.txt", kFixtures / "triangle_communities.txt", out / "ds");
  EXPECT_EQ(s.nodes, 3u);
  EXPECT_EQ(s.edges, 3u);
  EXPECT_EQ(s.communities, 1u);
  EXPECT_EQ(s.mean_community_size, 3.0);
  EXPECT_EQ(s.memberships_per_node, 1.0);
  EXPECT_TRUE(fs::exists(out / "ds" / "edges.txt"));
  EXPECT_TRUE(fs::exists(out / "ds" / "idmap.tsv"));
  EXPECT_TRUE(fs::exists(out / "ds" / "summary.txt"));
}

TEST(Ingest, SplitsDisconnectedCommunity) {
  TempDir out("ingest-split");
  auto s = cmd_ingest(kFixtures / "split_edges.txt", kFixtures / "split_communities.txt", out / "ds");
  EXPECT_EQ(s.communities, 2u);
}

TEST(Ingest, MalformedLineCitesLineNumber) {
  TempDir out("ingest-bad");
  std::string err;
  const int rc = run_cli("ingest " + (kFixtures / "malformed_edges.txt").string() + " " +
                             (kFixtures / "triangle_communities.txt").string() + " --out " + (out / "ds").string(),
                         &err);
  EXPECT_EQ(rc, static_cast<int>(ExitCode::parse));
  EXPECT_NE(err.find("line 2"), std::string::npos) << err;
  EXPECT_NE(err.find("malformed_edges.txt"), std::string::npos) << err;
}

TEST(Fit, CliqueReportsBoundary) {
  TempDir out("fit-clique");
  cmd_ingest(kFixtures / "triangle_edges.txt", kFixtures / "triangle_communities.txt", out / "ds");
  auto r = cmd_fit(out / "ds", seeded(), out / "fit.txt");
  EXPECT_TRUE(r.result.converged);
  EXPECT_TRUE(r.result.at_boundary[0]);
  auto params = read_fit_params(out / "fit.txt");
  ASSERT_EQ(params.p.size(), 1u);
  EXPECT_EQ(params.p[0], 1.0);
  EXPECT_NE(read_file(out / "fit.txt").find("boundary_count\t1"), std::string::npos);
}

TEST(Fit, UncoveredEdgeIsInfeasible) {
  TempDir out("fit-uncovered");
  cmd_ingest(kFixtures / "uncovered_edges.txt", kFixtures / "uncovered_communities.txt", out / "ds");
  try {
    cmd_fit(out / "ds", seeded(), out / "fit.txt");
    FAIL();
  } catch (const CommandError& e) {
    EXPECT_EQ(e.code(), ExitCode::infeasible);
    // original labels of the uncovered edge
    EXPECT_NE(std::string(e.what()).find("(3, 4)"), std::string::npos) << e.what();
  }
  RunConfig c = seeded();
  c.fit_epsilon = true;
  EXPECT_NO_THROW(cmd_fit(out / "ds", c, out / "fit.txt"));
  EXPECT_EQ(run_cli("fit " + (out / "ds").string() + " --out " + (out / "f2.txt").string()),
            static_cast<int>(ExitCode::infeasible));
}

TEST(Fit, NonConvergenceExitCode) {
  TempDir out("fit-nonconv");
  cmd_ingest(kFixtures / "planted_edges.txt", kFixtures / "planted_communities.txt", out / "ds");
  EXPECT_EQ(run_cli("fit " + (out / "ds").string() + " --max-iter 1 --out " + (out / "f.txt").string()),
            static_cast<int>(ExitCode::nonconvergence));
  EXPECT_EQ(run_cli("fit " + (out / "ds").string() + " --out " + (out / "f.txt").string()), 0);
}

TEST(Generate, FullProbabilityGivesClique) {
  TempDir out("gen-clique");
  const auto comm = out / "c.txt";
  write_file(comm, "1 2 3 4 5\n");
  RunConfig c = seeded();
  c.beta = 0.5;
  c.scale = 10.0;  // clipped to p = 1
  auto s = cmd_generate(comm, {}, c, 3, out / "g");
  EXPECT_EQ(s.edges, 10u);
  EXPECT_TRUE(fs::exists(out / "g" / "generation.txt"));
  EXPECT_TRUE(fs::exists(out / "g" / "communities.txt"));
}

TEST(Generate, SameSeedSameBytes) {
  TempDir out("gen-seed");
  RunConfig c = seeded();
  c.beta = 0.4;
  cmd_generate(kFixtures / "planted_communities.txt", {}, c, 11, out / "a");
  cmd_generate(kFixtures / "planted_communities.txt", {}, c, 11, out / "b");
  cmd_generate(kFixtures / "planted_communities.txt", {}, c, 12, out / "c");
  EXPECT_EQ(read_file(out / "a" / "edges.txt"), read_file(out / "b" / "edges.txt"));
  EXPECT_NE(read_file(out / "a" / "edges.txt"), read_file(out / "c" / "edges.txt"));
}

TEST(Generate, InvalidParamsExitCode) {
  TempDir out("gen-bad");
  EXPECT_EQ(run_cli("generate " + (kFixtures / "planted_communities.txt").string() +
                    " --beta 0.4 --epsilon 1.5 --seed 1 --out " + (out / "g").string()),
            static_cast<int>(ExitCode::invalid_argument));
  // one probability for a 24-community affiliation network
  write_file(out / "p.txt", "communities\t1\nepsilon\t0\n# community\tp\tx\tboundary\n0\t0.5\t0.69\t0\n");
  EXPECT_EQ(run_cli("generate " + (kFixtures / "planted_communities.txt").string() + " --params " +
                    (out / "p.txt").string() + " --seed 1 --out " + (out / "g").string()),
            static_cast<int>(ExitCode::invalid_argument));
}

TEST(Stats, TriangleDegree) {
  TempDir out("stats-tri");
  cmd_ingest(kFixtures / "triangle_edges.txt", kFixtures / "triangle_communities.txt", out / "ds");
  RunConfig c = seeded();
  c.properties = {"Deg"};
  cmd_stats(out / "ds", c, 1, out / "st");
  const auto text = read_file(out / "st" / "Deg.tsv");
  EXPECT_NE(text.find("2\t3"), std::string::npos) << text;
  EXPECT_EQ(index_of(out / "st").at("Deg"), "ok");
}

TEST(Stats, OverlapFilesPresent) {
  TempDir out("stats-ov");
  cmd_ingest(kFixtures / "planted_edges.txt", kFixtures / "planted_communities.txt", out / "ds");
  cmd_stats(out / "ds", seeded(), 1, out / "st");
  auto idx = index_of(out / "st");
  for (auto name : {"OO", "AABB", "AB"}) {
    EXPECT_EQ(idx.at(name), "ok") << name;
    EXPECT_TRUE(fs::exists(out / "st" / (std::string(name) + ".tsv")));
  }
  EXPECT_EQ(idx.size(), all_stat_names().size());
}

TEST(Stats, NoOverlapMarkedAbsent) {
  TempDir out("stats-none");
  cmd_ingest(kFixtures / "triangle_edges.txt", kFixtures / "triangle_communities.txt", out / "ds");
  cmd_stats(out / "ds", seeded(), 1, out / "st");
  auto idx = index_of(out / "st");
  for (auto name : {"PC", "OO", "AB"}) EXPECT_EQ(idx.at(name), "absent") << name;
}

TEST(Compare, SelfIsZeroAndSelectionRespected) {
  TempDir out("cmp-self");
  cmd_ingest(kFixtures / "planted_edges.txt", kFixtures / "planted_communities.txt", out / "ds");
  RunConfig c = seeded();
  auto r = cmd_compare(out / "ds", out / "ds", c, 1, out / "cmp.txt");
  for (auto& [p, v] : r.rows[0].values) {
    ASSERT_TRUE(v.has_value()) << property_name(p);
    EXPECT_EQ(*v, 0.0) << property_name(p);
  }
  c.properties = {"Vol", "Deg"};
  r = cmd_compare(out / "ds", out / "ds", c, 1, out / "cmp2.txt");
  EXPECT_EQ(r.community_columns, std::vector<Property>{Property::Vol});
  EXPECT_EQ(r.network_columns, std::vector<Property>{Property::Deg});
  EXPECT_EQ(r.rows[0].values.size(), 2u);
  const auto text = read_file(out / "cmp2.txt");
  EXPECT_EQ(text.find("EigVal"), std::string::npos);
}

TEST(Bench, PipelineOutputsAndManifest) {
  TempDir out("bench-run");
  RunConfig c = seeded(99);
  c.edges = (kFixtures / "planted_edges.txt").string();
  c.communities = (kFixtures / "planted_communities.txt").string();
  c.out = (out / "runs").string();
  const auto dir = cmd_bench(c);
  for (auto f : {"manifest.txt", "fit.txt", "compare.txt", "data/edges.txt", "synth/edges.txt",
                 "stats/real/index.tsv", "stats/synth/index.tsv"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  const auto manifest = read_file(dir / "manifest.txt");
  EXPECT_NE(manifest.find("seed\t99"), std::string::npos);
  EXPECT_NE(manifest.find("config_hash\t"), std::string::npos);
  EXPECT_NE(manifest.find("version.fitter\t"), std::string::npos);
  EXPECT_NE(manifest.find("stage.compare\tok"), std::string::npos);
}

TEST(Bench, MissingKeyNamesIt) {
  TempDir out("bench-missing");
  write_file(out / "cfg.txt", "seed=1\nedges=" + (kFixtures / "planted_edges.txt").string() + "\nout=" +
                                  (out / "runs").string() + "\n");
  std::string err;
  EXPECT_EQ(run_cli("bench " + (out / "cfg.txt").string(), &err), static_cast<int>(ExitCode::usage));
  EXPECT_NE(err.find("communities"), std::string::npos) << err;
}

TEST(Bench, StageFailureNamesStage) {
  TempDir out("bench-stage");
  RunConfig c = seeded(1);
  c.edges = (kFixtures / "malformed_edges.txt").string();
  c.communities = (kFixtures / "triangle_communities.txt").string();
  c.out = (out / "runs").string();
  try {
    cmd_bench(c);
    FAIL();
  } catch (const CommandError& e) {
    EXPECT_EQ(e.code(), ExitCode::parse);
    EXPECT_NE(std::string(e.what()).find("stage ingest failed"), std::string::npos);
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli(""), static_cast<int>(ExitCode::usage));
  EXPECT_EQ(run_cli("frobnicate"), static_cast<int>(ExitCode::usage));
  EXPECT_EQ(run_cli("fit"), static_cast<int>(ExitCode::usage));
  EXPECT_EQ(run_cli("--help"), 0);
}

TEST(Cli, MissingInputIsIoError) {
  TempDir out("cli-io");
  EXPECT_EQ(run_cli("ingest /nonexistent/e.txt /nonexistent/c.txt --out " + (out / "x").string()),
            static_cast<int>(ExitCode::io));
}

TEST(Cli, DistinctExitCodes) {
  std::set<int> codes{static_cast<int>(ExitCode::usage), static_cast<int>(ExitCode::parse),
                      static_cast<int>(ExitCode::infeasible), static_cast<int>(ExitCode::io),
                      static_cast<int>(ExitCode::nonconvergence)};
  EXPECT_EQ(codes.size(), 5u);
  EXPECT_EQ(codes.count(0), 0u);
}
