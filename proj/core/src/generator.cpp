#include "agm/generator.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "agm/parallel.hpp"
#include "agm/rng.hpp"

namespace agm {

namespace {
constexpr std::uint64_t kBackgroundStream = std::numeric_limits<std::uint64_t>::max();
}

void AgmParams::validate(std::size_t community_count) const {
  if (p.size() != community_count) {
    throw std::invalid_argument("expected " + std::to_string(community_count) +
                                " community probabilities, got " + std::to_string(p.size()));
  }
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (!(p[c] >= 0.0 && p[c] <= 1.0)) {
      throw std::invalid_argument("probability of community " + std::to_string(c) +
                                  " outside [0, 1]");
    }
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon outside [0, 1)");
}

double edge_probability(const AffiliationNetwork& net, const AgmParams& params, NodeId u, NodeId v) {
  if (u == v) throw std::invalid_argument("edge probability undefined for u == v");
  double none = 1.0 - params.epsilon;
  for (CommunityId c : shared_communities(net, u, v)) none *= 1.0 - params.p.at(c);
  return 1.0 - none;
}

void sample_pairs(std::span<const NodeId> members, double p, std::uint64_t seed,
                  std::vector<Edge>& out) {
  const std::size_t n = members.size();
  if (n < 2 || p <= 0.0) return;
  auto emit = [&](std::size_t i, std::size_t j) {
    NodeId a = members[i], b = members[j];
    out.push_back(a < b ? Edge{a, b} : Edge{b, a});
  };
  if (p >= 1.0) {
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) emit(i, j);
    return;
  }
  // Pairs (w, v) with w < v enumerated row by row; w advances by 1 + skip and
  // wraps into later rows.
  Rng rng(seed);
  std::uint64_t v = 1;
  std::uint64_t w = 0;
  bool first = true;
  while (v < n) {
    std::uint64_t skip = rng.geometric_skip(p);
    if (skip >= std::numeric_limits<std::uint64_t>::max() / 2) break;
    w += first ? skip : skip + 1;
    first = false;
    while (v < n && w >= v) {
      w -= v;
      ++v;
    }
    if (v < n) emit(static_cast<std::size_t>(w), static_cast<std::size_t>(v));
  }
}

Graph generate(const AffiliationNetwork& net, const AgmParams& params, std::uint64_t seed,
               const GenerateOptions& options) {
  params.validate(net.community_count());
  const std::size_t n = net.node_count();
  if (params.epsilon > 0.0 && n > options.quadratic_guard_nodes && !options.allow_quadratic) {
    throw std::invalid_argument("background probability on " + std::to_string(n) +
                                " nodes exceeds the quadratic-cost guard of " +
                                std::to_string(options.quadratic_guard_nodes) +
                                " nodes; pass the explicit override to proceed");
  }

  constexpr std::size_t kChunk = 64;
  const std::size_t communities = net.community_count();
  std::vector<std::vector<Edge>> partial(chunk_count(communities, kChunk));
  parallel_chunks(communities, kChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto& local = partial[chunk];
    for (std::size_t c = begin; c < end; ++c) {
      sample_pairs(net.members(static_cast<CommunityId>(c)), params.p[c], stream_seed(seed, c), local);
    }
  });

  std::vector<Edge> edges;
  std::size_t total = 0;
  for (const auto& part : partial) total += part.size();
  edges.reserve(total);
  for (auto& part : partial) edges.insert(edges.end(), part.begin(), part.end());

  if (params.epsilon > 0.0) {
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), NodeId{0});
    sample_pairs(all, params.epsilon, stream_seed(seed, kBackgroundStream), edges);
  }
  return Graph(n, edges);
}

AgmParams assign_probs_power_law(const AffiliationNetwork& net, double beta, double scale,
                                 std::size_t* clipped) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("scale must be positive");
  AgmParams params;
  params.p.resize(net.community_count());
  std::size_t capped = 0;
  for (std::size_t c = 0; c < net.community_count(); ++c) {
    const std::size_t size = net.size(static_cast<CommunityId>(c));
    if (size == 0) throw std::invalid_argument("community " + std::to_string(c) + " is empty");
    double p = scale * std::pow(static_cast<double>(size), -beta);
    if (p > 1.0) {
      p = 1.0;
      ++capped;
    }
    params.p[c] = p;
  }
  if (capped > 0 && clipped == nullptr) {
    std::cerr << "warning: " << capped << " community probabilities clipped to 1\n";
  }
  if (clipped) *clipped = capped;
  return params;
}

}  // namespace agm
