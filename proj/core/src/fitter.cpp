#include "agm/fitter.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "agm/parallel.hpp"

namespace agm {

namespace {

constexpr std::size_t kEdgeChunk = 8192;
constexpr double kArmijo = 1e-4;
constexpr std::size_t kMaxHalvings = 50;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(1 - e^-s) without cancellation at either end.
double log_one_minus_exp_neg(double s) {
  if (!(s > 0.0)) return kNegInf;
  return s < 0.6931471805599453 ? std::log(-std::expm1(-s)) : std::log1p(-std::exp(-s));
}

double edge_rate(const FitProblem& problem, std::span<const double> x, std::size_t e) {
  double s = 0.0;
  for (auto c : problem.edge_variables(e)) s += x[c];
  return s;
}

void check_size(const FitProblem& problem, std::size_t n) {
  if (n != problem.variable_count()) {
    throw std::invalid_argument("expected " + std::to_string(problem.variable_count()) +
                                " variables, got " + std::to_string(n));
  }
}

// Sum of fn(e) over all edges; partial sums per fixed chunk, added in order.
template <class Fn>
double sum_over_edges(const FitProblem& problem, Fn&& fn) {
  std::vector<double> partial(chunk_count(problem.edge_count(), kEdgeChunk), 0.0);
  parallel_chunks(problem.edge_count(), kEdgeChunk,
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                    double acc = 0.0;
                    for (std::size_t e = begin; e < end; ++e) acc += fn(e);
                    partial[chunk] = acc;
                  });
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

// Per-edge values of fn(e), computed in parallel.
template <class Fn>
std::vector<double> per_edge(const FitProblem& problem, Fn&& fn) {
  std::vector<double> out(problem.edge_count());
  parallel_chunks(problem.edge_count(), kEdgeChunk,
                  [&](std::size_t, std::size_t begin, std::size_t end) {
                    for (std::size_t e = begin; e < end; ++e) out[e] = fn(e);
                  });
  return out;
}

struct Derivatives {
  std::vector<double> gradient;
  std::vector<double> curvature;  // minus the Hessian diagonal, >= 0
};

Derivatives derivatives(const FitProblem& problem, std::span<const double> x) {
  // w(s) = e^-s / (1 - e^-s); d2/ds2 log(1 - e^-s) = -w (1 + w).
  auto w = per_edge(problem, [&](std::size_t e) {
    const double s = edge_rate(problem, x, e);
    if (!(s > 0.0)) {
      const auto edge = problem.edges()[e];
      throw GradientUndefinedError("gradient undefined: edge (" + std::to_string(edge.u) + ", " +
                                   std::to_string(edge.v) + ") has zero total rate");
    }
    return 1.0 / std::expm1(s);
  });
  Derivatives d;
  d.gradient.assign(problem.variable_count(), 0.0);
  d.curvature.assign(problem.variable_count(), 0.0);
  for (std::size_t e = 0; e < problem.edge_count(); ++e) {
    for (auto c : problem.edge_variables(e)) {
      d.gradient[c] += w[e];
      d.curvature[c] += w[e] * (1.0 + w[e]);
    }
  }
  for (std::size_t c = 0; c < problem.variable_count(); ++c) {
    d.gradient[c] -= static_cast<double>(problem.pair_count(c) - problem.internal_edges(c));
    if (!problem.active(c)) d.gradient[c] = 0.0;
  }
  return d;
}

double projected_gradient_norm(const FitProblem& problem, std::span<const double> x,
                               std::span<const double> g) {
  double sq = 0.0;
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (!problem.active(c)) continue;
    if (x[c] <= 0.0 && g[c] < 0.0) continue;
    if (x[c] >= kMaxRate && g[c] > 0.0) continue;
    sq += g[c] * g[c];
  }
  return std::sqrt(sq);
}

}  // namespace

InfeasibleError::InfeasibleError(NodeId u, NodeId v)
    : std::runtime_error("infeasible instance: edge (" + std::to_string(u) + ", " +
                         std::to_string(v) +
                         ") shares no community; enable the background community to fit it"),
      u_(u),
      v_(v) {}

FitProblem FitProblem::build(const Graph& g, const AffiliationNetwork& net, bool fit_epsilon) {
  if (g.node_count() != net.node_count()) {
    throw std::invalid_argument("graph and affiliation network disagree on node count");
  }
  FitProblem problem;
  problem.node_count_ = g.node_count();
  problem.community_count_ = net.community_count();
  problem.fit_epsilon_ = fit_epsilon;
  const std::size_t vars = net.community_count() + (fit_epsilon ? 1 : 0);
  problem.pair_counts_.assign(vars, 0);
  problem.internal_edges_.assign(vars, 0);
  for (std::size_t c = 0; c < net.community_count(); ++c) {
    const std::uint64_t n = net.size(static_cast<CommunityId>(c));
    problem.pair_counts_[c] = n * (n - (n > 0 ? 1 : 0)) / 2;
  }
  if (fit_epsilon) {
    const std::uint64_t n = g.node_count();
    problem.pair_counts_.back() = n < 2 ? 0 : n * (n - 1) / 2;
  }

  problem.edges_.assign(g.edges().begin(), g.edges().end());
  problem.edge_offsets_.reserve(problem.edges_.size() + 1);
  problem.edge_offsets_.push_back(0);
  for (const auto& e : problem.edges_) {
    auto a = net.communities_of(e.u);
    auto b = net.communities_of(e.v);
    const std::size_t before = problem.edge_vars_.size();
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(problem.edge_vars_));
    if (fit_epsilon) problem.edge_vars_.push_back(static_cast<std::uint32_t>(vars - 1));
    if (problem.edge_vars_.size() == before) throw InfeasibleError(e.u, e.v);
    for (std::size_t i = before; i < problem.edge_vars_.size(); ++i) {
      ++problem.internal_edges_[problem.edge_vars_[i]];
    }
    problem.edge_offsets_.push_back(problem.edge_vars_.size());
  }
  return problem;
}

double log_likelihood_p(const FitProblem& problem, std::span<const double> p) {
  check_size(problem, p.size());
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
  }
  const double edge_term = sum_over_edges(problem, [&](std::size_t e) {
    double none = 1.0;
    for (auto c : problem.edge_variables(e)) none *= 1.0 - p[c];
    return none >= 1.0 ? kNegInf : std::log1p(-none);
  });
  double non_edge_term = 0.0;
  for (std::size_t c = 0; c < problem.variable_count(); ++c) {
    const auto absent = problem.pair_count(c) - problem.internal_edges(c);
    if (absent == 0) continue;
    non_edge_term += static_cast<double>(absent) * std::log1p(-p[c]);
  }
  return edge_term + non_edge_term;
}

double log_likelihood_x(const FitProblem& problem, std::span<const double> x) {
  check_size(problem, x.size());
  for (double v : x) {
    if (!(v >= 0.0)) throw std::invalid_argument("transformed variable must be non-negative");
  }
  const double edge_term = sum_over_edges(
      problem, [&](std::size_t e) { return log_one_minus_exp_neg(edge_rate(problem, x, e)); });
  double non_edge_term = 0.0;
  for (std::size_t c = 0; c < problem.variable_count(); ++c) {
    non_edge_term += x[c] * static_cast<double>(problem.pair_count(c) - problem.internal_edges(c));
  }
  return edge_term - non_edge_term;
}

std::vector<double> gradient_x(const FitProblem& problem, std::span<const double> x) {
  check_size(problem, x.size());
  for (double v : x) {
    if (!(v >= 0.0)) throw std::invalid_argument("transformed variable must be non-negative");
  }
  return derivatives(problem, x).gradient;
}

std::vector<double> initial_rates(const FitProblem& problem) {
  std::vector<double> x(problem.variable_count(), 0.0);
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (!problem.active(c)) continue;
    const double density = static_cast<double>(problem.internal_edges(c)) /
                           static_cast<double>(problem.pair_count(c));
    x[c] = -std::log1p(-std::min(0.9, density));
  }
  return x;
}

FitResult fit(const FitProblem& problem, const FitConfig& config) {
  const std::size_t vars = problem.variable_count();
  std::vector<double> x = config.x_init ? *config.x_init : initial_rates(problem);
  check_size(problem, x.size());
  for (std::size_t c = 0; c < vars; ++c) {
    x[c] = problem.active(c) ? std::clamp(x[c], 0.0, kMaxRate) : 0.0;
    if (!std::isfinite(x[c])) throw std::invalid_argument("non-finite initial value");
    // Every member pair linked: log L only grows with x_c, so the optimum is
    // the cap whatever the other variables do.
    if (problem.active(c) && problem.internal_edges(c) == problem.pair_count(c)) x[c] = kMaxRate;
  }

  double f = log_likelihood_x(problem, x);
  if (!std::isfinite(f)) {
    // Some edge has zero rate; lift the communities that carry edges.
    const auto fallback = initial_rates(problem);
    for (std::size_t c = 0; c < vars; ++c) {
      if (x[c] <= 0.0 && problem.internal_edges(c) > 0) x[c] = fallback[c];
    }
    f = log_likelihood_x(problem, x);
  }

  FitResult result;
  result.trace.push_back(f);
  std::vector<double> trial(vars);
  std::vector<double> direction(vars);

  for (std::size_t iter = 1; iter <= config.max_iter; ++iter) {
    const auto d = derivatives(problem, x);
    result.grad_norm = projected_gradient_norm(problem, x, d.gradient);
    if (result.grad_norm < config.tol) {
      result.converged = true;
      break;
    }
    for (std::size_t c = 0; c < vars; ++c) {
      direction[c] = problem.active(c) ? d.gradient[c] / std::max(d.curvature[c], 1e-12) : 0.0;
    }

    bool accepted = false;
    double predicted = 0.0;
    double f_trial = kNegInf;
    double step = 1.0;
    for (std::size_t h = 0; h <= kMaxHalvings; ++h, step *= 0.5) {
      predicted = 0.0;
      for (std::size_t c = 0; c < vars; ++c) {
        trial[c] = std::clamp(x[c] + step * direction[c], 0.0, kMaxRate);
        predicted += d.gradient[c] * (trial[c] - x[c]);
      }
      f_trial = log_likelihood_x(problem, trial);
      if (std::isfinite(f_trial) && f_trial >= f + kArmijo * predicted) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No step gains anything measurable: we sit at the optimum up to
      // rounding, unless the predicted gain is still large.
      result.converged = predicted <= 1e-12 * std::max(1.0, std::abs(f));
      break;
    }

    const double improvement = (f_trial - f) / std::max(std::abs(f), 1e-300);
    x.swap(trial);
    f = f_trial;
    result.trace.push_back(f);
    result.iterations = iter;
    if (improvement < config.tol) {
      result.converged = true;
      result.grad_norm = projected_gradient_norm(problem, x, derivatives(problem, x).gradient);
      break;
    }
  }

  result.log_likelihood = f;
  result.x = x;
  result.p.resize(vars);
  result.at_boundary.resize(vars);
  for (std::size_t c = 0; c < vars; ++c) {
    result.p[c] = -std::expm1(-x[c]);
    result.at_boundary[c] = x[c] >= kMaxRate;
  }
  return result;
}

}  // namespace agm
