#include "agm/community_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "agm/rng.hpp"

namespace agm {

namespace {

std::optional<double> least_squares_slope(std::span<const std::pair<double, double>> pts) {
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0)) return std::nullopt;
  return sxy / sxx;
}

// Number of linked pairs within one sorted node list.
std::size_t linked_pairs_within(const Graph& g, std::span<const NodeId> nodes) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) n += g.has_edge(nodes[i], nodes[j]);
  return n;
}

std::size_t linked_pairs_across(const Graph& g, std::span<const NodeId> xs,
                                std::span<const NodeId> ys) {
  std::size_t n = 0;
  for (NodeId x : xs)
    for (NodeId y : ys) n += g.has_edge(x, y);
  return n;
}

double choose2(std::size_t n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n - (n > 0)); }

}  // namespace

SizeCurve edges_vs_size(const Dataset& ds, const LogBins& bins) {
  const auto& net = ds.affiliations;
  std::vector<std::pair<double, double>> samples;
  std::vector<std::pair<double, double>> logs;
  for (std::size_t c = 0; c < net.community_count(); ++c) {
    auto members = net.members(static_cast<CommunityId>(c));
    const double size = static_cast<double>(members.size());
    const double edges = static_cast<double>(count_internal_edges(ds.graph, members));
    samples.emplace_back(size, edges);
    if (edges >= 1.0) logs.emplace_back(std::log(size), std::log(edges));
  }
  SizeCurve out;
  out.curve = binned_mean(samples, bins, "community size", "edges inside community");
  out.slope = least_squares_slope(logs);
  return out;
}

Curve max_icdf_vs_size(const Dataset& ds, const LogBins& bins) {
  const auto& net = ds.affiliations;
  std::vector<std::pair<double, double>> samples;
  for (std::size_t c = 0; c < net.community_count(); ++c) {
    auto members = net.members(static_cast<CommunityId>(c));
    std::size_t best = 0;
    for (NodeId u : members) best = std::max(best, internal_degree(ds.graph, u, members));
    if (best == 0) continue;
    const double size = static_cast<double>(members.size());
    samples.emplace_back(size, static_cast<double>(best) / size);
  }
  return binned_mean(samples, bins, "community size", "maximal internal degree fraction");
}

Curve edge_prob_vs_shared(const Dataset& ds, std::size_t k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  const auto& net = ds.affiliations;
  const std::size_t n = net.node_count();
  std::vector<std::uint64_t> pairs(k_max + 1, 0), linked(k_max + 1, 0);
  std::vector<std::uint32_t> count(n, 0);
  std::vector<NodeId> touched;
  for (NodeId u = 0; u < n; ++u) {
    touched.clear();
    for (CommunityId c : net.communities_of(u)) {
      auto members = net.members(c);
      // Only partners above u, so each unordered pair is seen from one side.
      for (auto it = std::upper_bound(members.begin(), members.end(), u); it != members.end(); ++it) {
        if (count[*it]++ == 0) touched.push_back(*it);
      }
    }
    for (NodeId v : touched) {
      const std::size_t k = count[v];
      count[v] = 0;
      if (k > k_max) continue;
      ++pairs[k];
      linked[k] += ds.graph.has_edge(u, v);
    }
  }
  Curve curve;
  curve.x_label = "shared communities";
  curve.y_label = "edge probability";
  curve.kind = CurveKind::raw;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (pairs[k] == 0) continue;
    curve.points.push_back({static_cast<double>(k),
                            static_cast<double>(linked[k]) / static_cast<double>(pairs[k]),
                            static_cast<std::size_t>(pairs[k])});
  }
  return curve;
}

NodeId connector(const Graph& g, std::span<const NodeId> members) {
  if (members.empty()) throw std::invalid_argument("connector of an empty community");
  NodeId best = members.front();
  std::size_t best_degree = 0;
  bool first = true;
  for (NodeId u : members) {
    const std::size_t d = sorted_intersection_size(g.neighbors(u), members);
    if (first || d > best_degree) {  // members are ascending, so ties keep the smaller id
      best = u;
      best_degree = d;
      first = false;
    }
  }
  return best;
}

std::vector<OverlapPair> overlapping_pairs(const AffiliationNetwork& net) {
  std::unordered_map<std::uint64_t, std::size_t> counts;
  for (NodeId u = 0; u < net.node_count(); ++u) {
    auto cs = net.communities_of(u);
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i + 1; j < cs.size(); ++j)
        ++counts[(static_cast<std::uint64_t>(cs[i]) << 32) | cs[j]];
  }
  std::vector<OverlapPair> out;
  out.reserve(counts.size());
  for (auto [key, n] : counts) {
    out.push_back({static_cast<CommunityId>(key >> 32), static_cast<CommunityId>(key & 0xffffffffu), n});
  }
  std::sort(out.begin(), out.end(), [](const OverlapPair& l, const OverlapPair& r) {
    return std::pair(l.a, l.b) < std::pair(r.a, r.b);
  });
  return out;
}

ConnectorCurve connector_in_overlap(const Dataset& ds, std::size_t bin_count, std::size_t min_samples) {
  const auto& net = ds.affiliations;
  std::vector<std::optional<NodeId>> connectors(net.community_count());
  auto connector_of = [&](CommunityId c) {
    if (!connectors[c]) connectors[c] = connector(ds.graph, net.members(c));
    return *connectors[c];
  };

  ConnectorCurve out;
  auto add = [&](CommunityId a, CommunityId b, std::size_t overlap) {
    const std::size_t size_a = net.size(a);
    if (overlap == size_a) return;  // A nested in B: ratio 1 carries no signal
    auto mb = net.members(b);
    const NodeId hub = connector_of(a);
    out.samples.push_back({a, b, static_cast<double>(overlap) / static_cast<double>(size_a),
                           std::binary_search(mb.begin(), mb.end(), hub)});
  };
  for (const auto& pair : overlapping_pairs(net)) {
    add(pair.a, pair.b, pair.overlap);
    add(pair.b, pair.a, pair.overlap);
  }

  std::vector<std::pair<double, double>> points;
  points.reserve(out.samples.size());
  for (const auto& s : out.samples) points.emplace_back(s.overlap_fraction, s.connector_in_overlap ? 1.0 : 0.0);
  out.curve = linear_binned_mean(points, bin_count, 0.0, 1.0, min_samples, "overlap fraction |O|/|A|",
                                 "probability connector in overlap");
  out.reference = out.curve;
  out.reference.y_label = "reference y = x";
  for (auto& p : out.reference.points) p.y = p.x;
  return out;
}

OverlapTriple overlap_triple(const Graph& g, std::span<const NodeId> a, std::span<const NodeId> b,
                             NodeId u) {
  auto in = [](std::span<const NodeId> s, NodeId v) { return std::binary_search(s.begin(), s.end(), v); };
  if (!in(a, u) || !in(b, u)) throw std::invalid_argument("node is not in the overlap");
  std::vector<NodeId> only_a, only_b, both;
  for (NodeId v : g.neighbors(u)) {
    const bool ia = in(a, v), ib = in(b, v);
    if (ia && ib) {
      both.push_back(v);
    } else if (ia) {
      only_a.push_back(v);
    } else if (ib) {
      only_b.push_back(v);
    }
  }
  OverlapTriple t;
  t.degree = g.degree(u);
  if (both.size() >= 2) t.oo = static_cast<double>(linked_pairs_within(g, both)) / choose2(both.size());
  const double same_pairs = choose2(only_a.size()) + choose2(only_b.size());
  if (same_pairs > 0) {
    t.aabb = static_cast<double>(linked_pairs_within(g, only_a) + linked_pairs_within(g, only_b)) /
             same_pairs;
  }
  if (!only_a.empty() && !only_b.empty()) {
    t.ab = static_cast<double>(linked_pairs_across(g, only_a, only_b)) /
           (static_cast<double>(only_a.size()) * static_cast<double>(only_b.size()));
  }
  return t;
}

OverlapCurves overlap_clustering(const Dataset& ds, std::size_t pair_sample, const LogBins& bins,
                                 std::uint64_t seed) {
  const auto& net = ds.affiliations;
  auto pairs = overlapping_pairs(net);
  if (pairs.size() > pair_sample) {
    // Partial Fisher-Yates, then restore id order so the scan is stable.
    Rng rng(seed, 0x6f766c70);
    for (std::size_t i = 0; i < pair_sample; ++i) {
      std::swap(pairs[i], pairs[i + rng.below(pairs.size() - i)]);
    }
    pairs.resize(pair_sample);
    std::sort(pairs.begin(), pairs.end(), [](const OverlapPair& l, const OverlapPair& r) {
      return std::pair(l.a, l.b) < std::pair(r.a, r.b);
    });
  }

  std::vector<std::pair<double, double>> oo, aabb, ab;
  for (const auto& pair : pairs) {
    auto ma = net.members(pair.a);
    auto mb = net.members(pair.b);
    std::vector<NodeId> overlap;
    std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(overlap));
    for (NodeId u : overlap) {
      const auto t = overlap_triple(ds.graph, ma, mb, u);
      const double d = static_cast<double>(t.degree);
      if (t.oo) oo.emplace_back(d, *t.oo);
      if (t.aabb) aabb.emplace_back(d, *t.aabb);
      if (t.ab) ab.emplace_back(d, *t.ab);
    }
  }
  OverlapCurves out;
  out.pairs_used = pairs.size();
  out.oo = binned_mean(oo, bins, "degree", "OO connected fraction");
  out.aabb = binned_mean(aabb, bins, "degree", "AABB connected fraction");
  out.ab = binned_mean(ab, bins, "degree", "AB connected fraction");
  return out;
}

Curve ccdf(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("ccdf of an empty list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  Curve curve;
  curve.kind = CurveKind::ccdf;
  curve.x_label = "value";
  curve.y_label = "fraction >= value";
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    curve.points.push_back({sorted[i], static_cast<double>(sorted.size() - i) / n, j - i});
    i = j;
  }
  return curve;
}

Curve community_size_ccdf(const Dataset& ds) {
  std::vector<double> sizes;
  for (const auto& m : ds.affiliations.community_lists()) sizes.push_back(static_cast<double>(m.size()));
  auto curve = ccdf(sizes);
  curve.x_label = "community size";
  return curve;
}

Curve membership_ccdf(const Dataset& ds) {
  std::vector<double> counts;
  for (NodeId u = 0; u < ds.affiliations.node_count(); ++u) {
    const auto k = ds.affiliations.communities_of(u).size();
    if (k > 0) counts.push_back(static_cast<double>(k));
  }
  auto curve = ccdf(counts);
  curve.x_label = "memberships per node";
  return curve;
}

}  // namespace agm
