#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace agm {

using NodeId = std::uint32_t;
using CommunityId = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u;
  NodeId v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph over dense node ids [0, node_count).
///
/// Adjacency is held in CSR form with every neighbor list sorted, so edge
/// lookups are a binary search and neighbor-set intersections are linear
/// merges. The graph is immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds from an arbitrary edge list. Duplicate edges (in either
  /// orientation) are merged. Self-loops and ids >= node_count are rejected
  /// with std::invalid_argument.
  Graph(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> edges);
  Graph(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }

  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], degree(u)};
  }

  bool has_edge(NodeId u, NodeId v) const;

  /// Canonical edge list, u < v, sorted lexicographically.
  std::span<const Edge> edges() const { return edges_; }

  std::size_t max_degree() const;

 private:
  void build(std::size_t node_count, std::vector<Edge> edges);

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<Edge> edges_;
};

/// Bipartite affiliation network: communities on one side, nodes on the
/// other. Both directions of the membership relation are kept, sorted.
class AffiliationNetwork {
 public:
  AffiliationNetwork() = default;

  /// Member lists may be unsorted and contain duplicates; they are
  /// normalized. Member ids >= node_count raise std::invalid_argument.
  AffiliationNetwork(std::size_t node_count, std::vector<std::vector<NodeId>> communities);

  std::size_t node_count() const { return memberships_.size(); }
  std::size_t community_count() const { return communities_.size(); }

  std::span<const NodeId> members(CommunityId c) const { return communities_[c]; }
  std::size_t size(CommunityId c) const { return communities_[c].size(); }
  std::span<const CommunityId> communities_of(NodeId u) const { return memberships_[u]; }

  /// Total membership count, i.e. sum of community sizes.
  std::size_t membership_count() const;

  const std::vector<std::vector<NodeId>>& community_lists() const { return communities_; }

 private:
  std::vector<std::vector<NodeId>> communities_;
  std::vector<std::vector<CommunityId>> memberships_;
};

struct CommunityView {
  CommunityId community_id;
  std::span<const NodeId> members;
  std::size_t internal_edges;
};

/// Sorted ids of the communities shared by u and v.
std::vector<CommunityId> shared_communities(const AffiliationNetwork& net, NodeId u, NodeId v);

/// Number of members adjacent to u. `members` must be sorted and contain u.
std::size_t internal_degree(const Graph& g, NodeId u, std::span<const NodeId> members);

/// Number of edges with both endpoints in the sorted member list.
std::size_t count_internal_edges(const Graph& g, std::span<const NodeId> members);

CommunityView community_view(const Graph& g, const AffiliationNetwork& net, CommunityId c);

/// Connected components of the subgraph induced by `members`, each sorted,
/// ordered by smallest member id.
std::vector<std::vector<NodeId>> split_into_components(const Graph& g,
                                                       std::span<const NodeId> members);

/// Number of common elements of two sorted ranges.
std::size_t sorted_intersection_size(std::span<const NodeId> a, std::span<const NodeId> b);

}  // namespace agm
