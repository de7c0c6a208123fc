#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "agm/curve.hpp"
#include "agm/graph.hpp"

namespace agm {

/// (degree, number of nodes) for every observed degree.
Curve degree_distribution(const Graph& g);

/// Triangles through each node, via sorted-adjacency intersection.
std::vector<std::uint64_t> triangle_counts(const Graph& g);

/// Mean local clustering coefficient per degree, degrees >= 2.
Curve clustering_distribution(const Graph& g);

/// Number of node pairs within distance x, x = 1..diameter. BFS runs from
/// `sources` distinct nodes drawn with `seed` and counts are scaled by
/// N / sources; with sources >= N every node is a source and counts are
/// exact.
Curve hop_plot(const Graph& g, std::size_t sources, std::uint64_t seed);

/// (t, number of nodes in exactly t triangles) for t >= 1.
Curve triad_participation(const Graph& g);

struct SpectralOptions {
  std::size_t k = 50;
  double tol = 1e-8;
  std::size_t max_iter = 1000;  // cap on the Krylov dimension
  std::uint64_t seed = 1;
};

struct SpectralSummary {
  std::vector<double> eigenvalues;     // largest first
  std::vector<double> residuals;       // ||A v - lambda v|| per eigenvalue
  std::vector<double> leading_vector;  // unit norm, largest-magnitude entry positive
  bool converged = false;
};

/// Top-k adjacency eigenvalues and the leading eigenvector by Lanczos with
/// full reorthogonalization. A pair counts as converged when its residual
/// is at most tol * max(|lambda|, |lambda_1|); the zero eigenvalues of
/// sparse graphs make the plain relative bound unreachable.
SpectralSummary spectral_summary(const Graph& g, const SpectralOptions& options = {});

/// (rank, |lambda_rank|), rank from 1.
Curve eigenvalue_curve(const SpectralSummary& s);

/// (rank, |v_rank|) with the leading-vector components sorted descending.
Curve eigenvector_curve(const SpectralSummary& s);

}  // namespace agm
