#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agm/graph.hpp"

namespace agm {

/// An edge whose endpoints share no community while no background
/// community is being fitted; its likelihood is identically zero.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(NodeId u, NodeId v);
  NodeId u() const { return u_; }
  NodeId v() const { return v_; }

 private:
  NodeId u_;
  NodeId v_;
};

/// The gradient of the transformed objective is unbounded at this point
/// (some edge has zero total rate).
class GradientUndefinedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Upper bound on the transformed variables; keeps p = 1 - e^-x below 1.
inline const double kMaxRate = -std::log(1e-10);

/// Everything the likelihood needs, precomputed from (graph, affiliations).
///
/// Variables are indexed by community id; with a background community the
/// extra variable sits at index community_count and covers every node pair.
class FitProblem {
 public:
  static FitProblem build(const Graph& g, const AffiliationNetwork& net, bool fit_epsilon = false);

  std::size_t node_count() const { return node_count_; }
  std::size_t community_count() const { return community_count_; }
  std::size_t variable_count() const { return pair_counts_.size(); }
  bool fit_epsilon() const { return fit_epsilon_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  /// Variables whose rates add up on edge e (its shared communities, plus
  /// the background variable when enabled).
  std::span<const std::uint32_t> edge_variables(std::size_t e) const {
    return {edge_vars_.data() + edge_offsets_[e], edge_offsets_[e + 1] - edge_offsets_[e]};
  }

  /// Member pairs of variable c (P_c).
  std::uint64_t pair_count(std::size_t c) const { return pair_counts_[c]; }
  /// Edges with c among their shared communities (E_c).
  std::uint64_t internal_edges(std::size_t c) const { return internal_edges_[c]; }
  /// Variables of communities with fewer than two members are pinned to 0.
  bool active(std::size_t c) const { return pair_counts_[c] > 0; }

 private:
  std::size_t node_count_ = 0;
  std::size_t community_count_ = 0;
  bool fit_epsilon_ = false;
  std::vector<Edge> edges_;
  std::vector<std::size_t> edge_offsets_;
  std::vector<std::uint32_t> edge_vars_;
  std::vector<std::uint64_t> pair_counts_;
  std::vector<std::uint64_t> internal_edges_;
};

struct FitConfig {
  double tol = 1e-6;
  std::size_t max_iter = 1000;
  std::optional<std::vector<double>> x_init;
};

struct FitResult {
  std::vector<double> x;
  std::vector<double> p;          // 1 - exp(-x)
  std::vector<bool> at_boundary;  // x reached kMaxRate; reported as p = 1
  double log_likelihood = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;         // norm of the projected gradient at exit
  std::vector<double> trace;      // objective after every accepted step, starting point first
};

/// log L for probabilities p (one per variable). -inf when an observed edge
/// has probability 0.
double log_likelihood_p(const FitProblem& problem, std::span<const double> p);

/// log L in the transformed variables x = -log(1 - p); the non-edge part is
/// the closed form -sum_c x_c (P_c - E_c).
double log_likelihood_x(const FitProblem& problem, std::span<const double> x);

/// Gradient of log_likelihood_x.
std::vector<double> gradient_x(const FitProblem& problem, std::span<const double> x);

/// Density-based starting point: x_c = -log(1 - min(0.9, E_c / P_c)).
std::vector<double> initial_rates(const FitProblem& problem);

/// Maximizes log_likelihood_x over 0 <= x <= kMaxRate by projected
/// gradient ascent with a diagonal curvature scaling and Armijo
/// backtracking.
FitResult fit(const FitProblem& problem, const FitConfig& config = {});

}  // namespace agm
