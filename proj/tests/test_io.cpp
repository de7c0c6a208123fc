#include <gtest/gtest.h>

#include <sstream>

#include "agm/io.hpp"
#include "test_support.hpp"

using namespace agm;
using namespace agm::testing;

namespace {
std::vector<LabelEdge> edges_of(const std::string& s) {
  std::istringstream in(s);
  return parse_edge_list(in);
}
std::vector<std::vector<Label>> comms_of(const std::string& s, CommunityFormat f = CommunityFormat::automatic) {
  std::istringstream in(s);
  return parse_community_file(in, f);
}
}  // namespace

TEST(ParseEdgeList, Examples) {
  EXPECT_EQ(edges_of("# c\n1\t2\n2\t1\n"), (std::vector<LabelEdge>{{1, 2}, {2, 1}}));
  EXPECT_TRUE(edges_of("").empty());
  EXPECT_EQ(edges_of("1 2\n1 1\n"), (std::vector<LabelEdge>{{1, 2}, {1, 1}}));
}

TEST(ParseEdgeList, ErrorsCarryLineNumber) {
  try {
    edges_of("1 2\n# ok\n3 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(edges_of("1 2 3\n"), ParseError);
  EXPECT_THROW(edges_of("1\n"), ParseError);
}

TEST(ParseCommunities, Examples) {
  EXPECT_EQ(comms_of("1 2 3\n2 3 4\n"), (std::vector<std::vector<Label>>{{1, 2, 3}, {2, 3, 4}}));
  EXPECT_EQ(comms_of("7\n"), (std::vector<std::vector<Label>>{{7}}));
  EXPECT_EQ(comms_of("1 1 2\n"), (std::vector<std::vector<Label>>{{1, 2}}));
  EXPECT_THROW(comms_of("1 a\n"), ParseError);
}

TEST(ParseCommunities, NodePairFormat) {
  // node<TAB>community, community 10 repeats so auto picks pairs
  auto c = comms_of("1\t10\n2\t10\n3\t20\n2\t20\n");
  EXPECT_EQ(c, (std::vector<std::vector<Label>>{{1, 2}, {3, 2}}));
  // forced per-line reading of the same text
  EXPECT_EQ(comms_of("1\t10\n2\t10\n", CommunityFormat::per_line).size(), 2u);
  EXPECT_THROW(comms_of("1 2 3\n", CommunityFormat::node_pairs), ParseError);
}

TEST(Preprocess, Examples) {
  auto ds = preprocess(std::vector<LabelEdge>{{1, 2}}, {{1, 2, 3}});
  EXPECT_EQ(ds.graph.node_count(), 2u);
  ASSERT_EQ(ds.affiliations.community_count(), 1u);
  EXPECT_EQ(ds.affiliations.size(0), 2u);

  auto d2 = preprocess(std::vector<LabelEdge>{{1, 2}, {2, 1}, {1, 1}}, {});
  EXPECT_EQ(d2.graph.edge_count(), 1u);

  auto d3 = preprocess(std::vector<LabelEdge>{{1, 2}}, {{5, 6}});
  EXPECT_EQ(d3.affiliations.community_count(), 0u);
}

TEST(Preprocess, LabelsAscendingAndComponentsSplit) {
  // community {10,20,30,40} has two internal components {10,20} and {30,40}
  auto ds = preprocess(std::vector<LabelEdge>{{40, 30}, {20, 10}, {20, 30}}, {{10, 20, 40, 30}});
  EXPECT_EQ(ds.labels, (std::vector<Label>{10, 20, 30, 40}));
  ds = preprocess(std::vector<LabelEdge>{{40, 30}, {20, 10}}, {{10, 20, 40, 30}});
  EXPECT_EQ(ds.affiliations.community_count(), 2u);
}

TEST(Preprocess, Idempotent) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = random_instance(40, 5, seed);
    std::vector<LabelEdge> e;
    for (auto ed : inst.graph.edges()) e.emplace_back(ed.u * 3 + 7, ed.v * 3 + 7);
    std::vector<std::vector<Label>> c;
    for (auto& m : inst.net.community_lists()) {
      c.emplace_back();
      for (auto u : m) c.back().push_back(u * 3 + 7);
    }
    auto once = preprocess(e, c);
    std::vector<LabelEdge> e2;
    for (auto ed : once.graph.edges()) e2.emplace_back(once.label(ed.u), once.label(ed.v));
    std::vector<std::vector<Label>> c2;
    for (auto& m : once.affiliations.community_lists()) {
      c2.emplace_back();
      for (auto u : m) c2.back().push_back(once.label(u));
    }
    auto twice = preprocess(e2, c2);
    EXPECT_EQ(twice.labels, once.labels);
    EXPECT_TRUE(std::equal(twice.graph.edges().begin(), twice.graph.edges().end(), once.graph.edges().begin(),
                           once.graph.edges().end()));
    EXPECT_EQ(twice.affiliations.community_lists(), once.affiliations.community_lists());
  }
}

TEST(Summarize, Examples) {
  auto tri = preprocess(std::vector<LabelEdge>{{1, 2}, {2, 3}, {1, 3}}, {{1, 2, 3}});
  auto s = summarize(tri);
  EXPECT_EQ(s.nodes, 3u);
  EXPECT_EQ(s.edges, 3u);
  EXPECT_EQ(s.communities, 1u);
  EXPECT_DOUBLE_EQ(s.mean_community_size, 3.0);
  EXPECT_DOUBLE_EQ(s.memberships_per_node, 1.0);

  auto path = preprocess(std::vector<LabelEdge>{{1, 2}, {2, 3}}, {{1, 2}, {2, 3}});
  s = summarize(path);
  EXPECT_EQ(s.communities, 2u);
  EXPECT_DOUBLE_EQ(s.mean_community_size, 2.0);
  EXPECT_DOUBLE_EQ(s.memberships_per_node, 4.0 / 3.0);

  auto none = preprocess(std::vector<LabelEdge>{{1, 2}}, {});
  EXPECT_EQ(summarize(none).mean_community_size, 0.0);
}

TEST(DatasetDir, RoundTrip) {
  TempDir dir("io-roundtrip");
  auto ds = preprocess(std::vector<LabelEdge>{{5, 9}, {9, 12}, {12, 5}, {12, 40}}, {{5, 9, 12}, {12, 40}});
  save_dataset(dir.path(), ds);
  auto back = load_dataset(dir.path());
  EXPECT_EQ(back.labels, ds.labels);
  EXPECT_EQ(back.graph.edge_count(), ds.graph.edge_count());
  EXPECT_EQ(back.affiliations.community_lists(), ds.affiliations.community_lists());
}

TEST(DatasetDir, MissingFileIsIoError) {
  TempDir dir("io-missing");
  EXPECT_THROW(load_dataset(dir / "nope"), IoError);
  EXPECT_THROW(read_file(dir / "absent.txt"), IoError);
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678}) EXPECT_EQ(std::stod(format_double(v)), v);
}
