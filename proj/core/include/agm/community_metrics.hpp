#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "agm/curve.hpp"
#include "agm/graph.hpp"
#include "agm/io.hpp"

namespace agm {

struct SizeCurve {
  Curve curve;
  /// Least-squares slope of log E_S on log |S| over communities with
  /// E_S >= 1; absent when fewer than two distinct sizes qualify.
  std::optional<double> slope;
};

/// Internal edge count against community size (log bins).
SizeCurve edges_vs_size(const Dataset& ds, const LogBins& bins = {});

/// max_u d_in(u, S) / |S| averaged per size bin. Communities without
/// internal edges are skipped.
Curve max_icdf_vs_size(const Dataset& ds, const LogBins& bins = {});

/// Fraction of node pairs sharing exactly k communities that are linked,
/// k = 1..k_max. Pairs are drawn from within-community pair sets, each
/// unordered pair counted once at its total shared count.
Curve edge_prob_vs_shared(const Dataset& ds, std::size_t k_max);

/// Member with the largest internal degree; ties go to the smallest id.
NodeId connector(const Graph& g, std::span<const NodeId> members);

struct ConnectorSample {
  CommunityId a;
  CommunityId b;
  double overlap_fraction;  // |O| / |A|
  bool connector_in_overlap;
};

struct ConnectorCurve {
  Curve curve;      // mean indicator per |O|/|A| bin
  Curve reference;  // y = x at the same bin positions
  std::vector<ConnectorSample> samples;
};

/// For every ordered community pair (A, B) whose overlap O is non-empty and
/// not all of A: is the connector of A inside O? Binned by |O|/|A| into
/// `bin_count` equal-width bins on [0, 1).
ConnectorCurve connector_in_overlap(const Dataset& ds, std::size_t bin_count = 10,
                                    std::size_t min_samples = 5);

/// Connected-pair fractions among the neighbors of an overlap node u,
/// classified as overlap-only (OO), same single community (AABB) and
/// across communities (AB). Classes without any pair are absent.
struct OverlapTriple {
  std::optional<double> oo;
  std::optional<double> aabb;
  std::optional<double> ab;
  std::size_t degree = 0;
};

/// `a` and `b` are sorted member lists and u must belong to both.
OverlapTriple overlap_triple(const Graph& g, std::span<const NodeId> a, std::span<const NodeId> b,
                             NodeId u);

struct OverlapCurves {
  Curve oo;
  Curve aabb;
  Curve ab;
  std::size_t pairs_used = 0;
};

/// Averages overlap_triple over the overlap nodes of up to `pair_sample`
/// overlapping community pairs (sampled uniformly with `seed` when there
/// are more), per degree bin.
OverlapCurves overlap_clustering(const Dataset& ds, std::size_t pair_sample, const LogBins& bins,
                                 std::uint64_t seed);

/// Unordered community pairs (a < b) with a non-empty overlap, and the
/// overlap size, sorted.
struct OverlapPair {
  CommunityId a;
  CommunityId b;
  std::size_t overlap;
};
std::vector<OverlapPair> overlapping_pairs(const AffiliationNetwork& net);

/// Fraction of values >= x at each distinct value.
Curve ccdf(std::span<const double> values);

Curve community_size_ccdf(const Dataset& ds);
Curve membership_ccdf(const Dataset& ds);

}  // namespace agm
