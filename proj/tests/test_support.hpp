#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "agm/fitter.hpp"
#include "agm/generator.hpp"
#include "agm/graph.hpp"
#include "agm/io.hpp"
#include "agm/rng.hpp"

namespace agm::testing {

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

inline Graph make_graph(std::size_t n, const EdgeList& edges) { return Graph(n, edges); }

inline Dataset make_dataset(std::size_t n, const EdgeList& edges, std::vector<std::vector<NodeId>> comms) {
  Dataset ds;
  ds.graph = Graph(n, edges);
  ds.affiliations = AffiliationNetwork(n, std::move(comms));
  ds.labels.resize(n);
  std::iota(ds.labels.begin(), ds.labels.end(), Label{0});
  return ds;
}

inline Graph complete_graph(std::size_t n) {
  EdgeList e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

inline Graph star_graph(std::size_t leaves) {
  EdgeList e;
  for (NodeId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph(leaves + 1, e);
}

inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  EdgeList e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.uniform() < p) e.emplace_back(u, v);
  return Graph(n, e);
}

/// Random affiliation network where every node belongs to at least one
/// community, and a graph drawn from it. Small enough for O(N^2) oracles.
struct RandomInstance {
  Graph graph;
  AffiliationNetwork net;
  AgmParams params;
};

inline RandomInstance random_instance(std::size_t n, std::size_t communities, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<NodeId>> comms(communities);
  for (NodeId u = 0; u < n; ++u) {
    comms[rng.below(communities)].push_back(u);
    for (std::size_t c = 0; c < communities; ++c)
      if (rng.uniform() < 0.15) comms[c].push_back(u);
  }
  RandomInstance inst;
  inst.net = AffiliationNetwork(n, comms);
  inst.params.p.resize(communities);
  for (auto& p : inst.params.p) p = 0.2 + 0.6 * rng.uniform();
  inst.graph = generate(inst.net, inst.params, seed + 1);
  return inst;
}

/// log L by direct enumeration of all node pairs.
inline double brute_force_log_likelihood(const Graph& g, const AffiliationNetwork& net,
                                         const std::vector<double>& p, double epsilon) {
  double total = 0.0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v = u + 1; v < g.node_count(); ++v) {
      double keep = 1.0 - epsilon;
      for (auto c : net.communities_of(u))
        if (std::binary_search(net.communities_of(v).begin(), net.communities_of(v).end(), c)) keep *= 1.0 - p[c];
      total += g.has_edge(u, v) ? std::log(1.0 - keep) : std::log(keep);
    }
  }
  return total;
}

/// Triangles through each node by enumerating all triples.
inline std::vector<std::uint64_t> brute_force_triangles(const Graph& g) {
  const auto n = static_cast<NodeId>(g.node_count());
  std::vector<std::uint64_t> t(n, 0);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      for (NodeId c = b + 1; c < n; ++c)
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
          ++t[a];
          ++t[b];
          ++t[c];
        }
  return t;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("agm-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

 private:
  static std::uint64_t& counter() {
    static std::uint64_t c = 0;
    return c;
  }
  std::filesystem::path path_;
};

}  // namespace agm::testing
