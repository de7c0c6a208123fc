#include "agm/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace agm {

namespace {

std::string node_message(const char* what, std::size_t id) {
  return std::string(what) + " " + std::to_string(id);
}

}  // namespace

Graph::Graph(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> edges) {
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (auto [a, b] : edges) canon.push_back({a, b});
  build(node_count, std::move(canon));
}

Graph::Graph(std::size_t node_count, std::span<const Edge> edges) {
  build(node_count, std::vector<Edge>(edges.begin(), edges.end()));
}

void Graph::build(std::size_t node_count, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw std::invalid_argument(node_message("edge endpoint out of range:", std::max(e.u, e.v)));
    }
    if (e.u == e.v) throw std::invalid_argument(node_message("self-loop on node", e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  offsets_.assign(node_count + 1, 0);
  for (const auto& e : edges) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] += offsets_[i];

  targets_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v): filling in this order leaves every list sorted.
  for (const auto& e : edges) targets_[cursor[e.u]++] = e.v;
  for (const auto& e : edges) targets_[cursor[e.v]++] = e.u;
  for (std::size_t u = 0; u < node_count; ++u) {
    std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]),
              targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]));
  }
  edges_ = std::move(edges);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t u = 0; u < node_count(); ++u) best = std::max(best, degree(static_cast<NodeId>(u)));
  return best;
}

AffiliationNetwork::AffiliationNetwork(std::size_t node_count,
                                       std::vector<std::vector<NodeId>> communities)
    : communities_(std::move(communities)), memberships_(node_count) {
  for (std::size_t c = 0; c < communities_.size(); ++c) {
    auto& m = communities_[c];
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (!m.empty() && m.back() >= node_count) {
      throw std::invalid_argument(node_message("community member out of range:", m.back()));
    }
    for (NodeId u : m) memberships_[u].push_back(static_cast<CommunityId>(c));
  }
}

std::size_t AffiliationNetwork::membership_count() const {
  std::size_t total = 0;
  for (const auto& m : communities_) total += m.size();
  return total;
}

std::vector<CommunityId> shared_communities(const AffiliationNetwork& net, NodeId u, NodeId v) {
  if (u >= net.node_count()) throw std::invalid_argument(node_message("unknown node id", u));
  if (v >= net.node_count()) throw std::invalid_argument(node_message("unknown node id", v));
  auto a = net.communities_of(u);
  auto b = net.communities_of(v);
  std::vector<CommunityId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t sorted_intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t i = 0, j = 0, n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

std::size_t internal_degree(const Graph& g, NodeId u, std::span<const NodeId> members) {
  if (!std::binary_search(members.begin(), members.end(), u)) {
    throw std::invalid_argument(node_message("node is not a community member:", u));
  }
  if (u >= g.node_count()) throw std::invalid_argument(node_message("unknown node id", u));
  return sorted_intersection_size(g.neighbors(u), members);
}

std::size_t count_internal_edges(const Graph& g, std::span<const NodeId> members) {
  std::size_t twice = 0;
  for (NodeId u : members) twice += sorted_intersection_size(g.neighbors(u), members);
  return twice / 2;
}

CommunityView community_view(const Graph& g, const AffiliationNetwork& net, CommunityId c) {
  auto m = net.members(c);
  return {c, m, count_internal_edges(g, m)};
}

std::vector<std::vector<NodeId>> split_into_components(const Graph& g,
                                                       std::span<const NodeId> members) {
  std::vector<NodeId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  auto index_of = [&](NodeId u) -> std::ptrdiff_t {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), u);
    return (it != sorted.end() && *it == u) ? it - sorted.begin() : -1;
  };

  std::vector<bool> seen(sorted.size(), false);
  std::vector<std::vector<NodeId>> components;
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < sorted.size(); ++start) {
    if (seen[start]) continue;
    std::vector<NodeId> comp;
    seen[start] = true;
    queue.push_back(start);
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      comp.push_back(sorted[i]);
      if (sorted[i] >= g.node_count()) continue;
      for (NodeId w : g.neighbors(sorted[i])) {
        auto j = index_of(w);
        if (j >= 0 && !seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = true;
          queue.push_back(static_cast<std::size_t>(j));
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  // Starting points were visited in increasing id order, so components are
  // already ordered by their smallest member.
  return components;
}

}  // namespace agm
