#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "agm/graph.hpp"

namespace agm {

/// Per-community edge probabilities plus a background probability that
/// links any pair of nodes.
struct AgmParams {
  std::vector<double> p;
  double epsilon = 0.0;

  /// Throws std::invalid_argument unless p has one entry per community,
  /// every p_c is in [0, 1] and epsilon is in [0, 1).
  void validate(std::size_t community_count) const;
};

/// 1 - (1 - epsilon) * prod over shared communities of (1 - p_c).
double edge_probability(const AffiliationNetwork& net, const AgmParams& params, NodeId u, NodeId v);

struct GenerateOptions {
  /// Background sampling touches all N(N-1)/2 pairs in expectation
  /// epsilon * N^2 / 2; above this many nodes it needs allow_quadratic.
  std::size_t quadratic_guard_nodes = 100000;
  bool allow_quadratic = false;
};

/// Samples a graph: every community links each member pair independently
/// with probability p_c, the background links every node pair with
/// probability epsilon, and the union is taken. Each community draws from
/// its own stream derived from (seed, community id), so the result does not
/// depend on the number of worker threads.
Graph generate(const AffiliationNetwork& net, const AgmParams& params, std::uint64_t seed,
               const GenerateOptions& options = {});

/// p_c = min(1, scale * n_c^-beta), epsilon = 0. beta must lie in (0, 1).
/// Writes to *clipped (if given) how many communities hit the cap.
AgmParams assign_probs_power_law(const AffiliationNetwork& net, double beta, double scale,
                                 std::size_t* clipped = nullptr);

/// Appends to `out` the pairs of the complete graph over `members` that
/// survive independent Bernoulli(p) trials, walking the pairs (i, j), i < j,
/// ordered by j then i with geometric skips. Edges come out in that order.
void sample_pairs(std::span<const NodeId> members, double p, std::uint64_t stream_seed,
                  std::vector<Edge>& out);

}  // namespace agm
