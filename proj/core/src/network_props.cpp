#include "agm/network_props.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "agm/parallel.hpp"
#include "agm/rng.hpp"

namespace agm {

Curve degree_distribution(const Graph& g) {
  std::map<std::size_t, std::size_t> hist;
  for (NodeId u = 0; u < g.node_count(); ++u) ++hist[g.degree(u)];
  Curve curve;
  curve.x_label = "degree";
  curve.y_label = "nodes";
  for (auto [d, n] : hist) {
    curve.points.push_back({static_cast<double>(d), static_cast<double>(n), n});
  }
  return curve;
}

std::vector<std::uint64_t> triangle_counts(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> count(n, 0);
  // Each triangle u < v < w is found once from its lowest edge (u, v).
  for (const auto& e : g.edges()) {
    auto a = g.neighbors(e.u);
    auto b = g.neighbors(e.v);
    auto ia = std::upper_bound(a.begin(), a.end(), e.v);
    auto ib = std::upper_bound(b.begin(), b.end(), e.v);
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        ++count[e.u];
        ++count[e.v];
        ++count[*ia];
        ++ia;
        ++ib;
      }
    }
  }
  return count;
}

Curve clustering_distribution(const Graph& g) {
  const auto tri = triangle_counts(g);
  std::map<std::size_t, std::pair<double, std::size_t>> acc;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::size_t d = g.degree(u);
    if (d < 2) continue;
    const double possible = 0.5 * static_cast<double>(d) * static_cast<double>(d - 1);
    auto& [sum, n] = acc[d];
    sum += static_cast<double>(tri[u]) / possible;
    ++n;
  }
  Curve curve;
  curve.x_label = "degree";
  curve.y_label = "mean clustering coefficient";
  curve.kind = CurveKind::binned_mean;
  for (auto [d, a] : acc) {
    curve.points.push_back({static_cast<double>(d), a.first / static_cast<double>(a.second), a.second});
  }
  return curve;
}

Curve hop_plot(const Graph& g, std::size_t sources, std::uint64_t seed) {
  if (sources < 1) throw std::invalid_argument("hop plot needs at least one source");
  const std::size_t n = g.node_count();
  std::vector<NodeId> roots(n);
  std::iota(roots.begin(), roots.end(), NodeId{0});
  if (sources < n) {
    Rng rng(seed, 0x686f70);
    for (std::size_t i = 0; i < sources; ++i) std::swap(roots[i], roots[i + rng.below(n - i)]);
    roots.resize(sources);
    std::sort(roots.begin(), roots.end());
  }

  // reached[chunk][d] = nodes at distance exactly d from the chunk's sources.
  constexpr std::size_t kChunk = 16;
  std::vector<std::vector<std::uint64_t>> reached(chunk_count(roots.size(), kChunk));
  parallel_chunks(roots.size(), kChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> dist(n, -1);
    std::vector<NodeId> frontier, next, visited;
    auto& local = reached[chunk];
    for (std::size_t r = begin; r < end; ++r) {
      for (NodeId v : visited) dist[v] = -1;
      visited.assign(1, roots[r]);
      dist[roots[r]] = 0;
      frontier.assign(1, roots[r]);
      std::size_t depth = 0;
      while (!frontier.empty()) {
        ++depth;
        next.clear();
        for (NodeId u : frontier) {
          for (NodeId w : g.neighbors(u)) {
            if (dist[w] >= 0) continue;
            dist[w] = static_cast<std::int64_t>(depth);
            visited.push_back(w);
            next.push_back(w);
          }
        }
        if (next.empty()) break;
        if (local.size() <= depth) local.resize(depth + 1, 0);
        local[depth] += next.size();
        frontier.swap(next);
      }
    }
  });

  std::vector<std::uint64_t> at_distance;
  for (const auto& local : reached) {
    if (at_distance.size() < local.size()) at_distance.resize(local.size(), 0);
    for (std::size_t d = 0; d < local.size(); ++d) at_distance[d] += local[d];
  }

  Curve curve;
  curve.x_label = "hops";
  curve.y_label = "reachable pairs";
  const double scale = static_cast<double>(n) / static_cast<double>(roots.size());
  std::uint64_t cumulative = 0;
  for (std::size_t d = 1; d < at_distance.size(); ++d) {
    cumulative += at_distance[d];
    // Ordered (source, target) counts; each unordered pair appears twice.
    curve.points.push_back({static_cast<double>(d), 0.5 * scale * static_cast<double>(cumulative),
                            static_cast<std::size_t>(at_distance[d])});
  }
  return curve;
}

Curve triad_participation(const Graph& g) {
  std::map<std::uint64_t, std::size_t> hist;
  for (auto t : triangle_counts(g))
    if (t > 0) ++hist[t];
  Curve curve;
  curve.x_label = "triangles";
  curve.y_label = "nodes";
  for (auto [t, n] : hist) curve.points.push_back({static_cast<double>(t), static_cast<double>(n), n});
  return curve;
}

namespace {

void multiply(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
  y.assign(g.node_count(), 0.0);
  parallel_chunks(g.node_count(), 4096, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      double s = 0.0;
      for (NodeId v : g.neighbors(static_cast<NodeId>(u))) s += x[v];
      y[u] = s;
    }
  });
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Gram-Schmidt against the basis, twice.
void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      const double c = dot(w, q);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * q[i];
    }
  }
}

std::vector<double> random_unit(Rng& rng, std::size_t n, const std::vector<std::vector<double>>& basis) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform() - 0.5;
    orthogonalize(v, basis);
    const double len = norm(v);
    if (len > 1e-8) {
      for (auto& x : v) x /= len;
      return v;
    }
  }
  return {};
}

}  // namespace

SpectralSummary spectral_summary(const Graph& g, const SpectralOptions& options) {
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("spectrum of an empty graph");
  if (options.k < 1) throw std::invalid_argument("k must be at least 1");
  const std::size_t k = std::min(options.k, n);
  const std::size_t max_dim = std::min(n, std::max(options.max_iter, k));
  const double bound = std::max(1.0, static_cast<double>(g.max_degree()));

  Rng rng(options.seed, 0x6c616e);
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;  // beta[j] couples basis j and j + 1
  basis.push_back(random_unit(rng, n, basis));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  Eigen::VectorXd ritz_values;
  Eigen::MatrixXd ritz_vectors;
  std::vector<double> w;
  bool done = false;

  auto solve_tridiagonal = [&] {
    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
    for (Eigen::Index i = 0; i + 1 < m; ++i) sub[i] = beta[static_cast<std::size_t>(i)];
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    ritz_values = solver.eigenvalues();  // ascending
    ritz_vectors = solver.eigenvectors();
  };

  while (!done) {
    const std::size_t j = alpha.size();
    multiply(g, basis[j], w);
    alpha.push_back(dot(w, basis[j]));
    orthogonalize(w, basis);
    double b = norm(w);

    const bool full = basis.size() >= max_dim;
    bool restart = false;
    if (!full && b <= 1e-10 * bound) {
      // Invariant subspace: continue from a fresh direction with no coupling.
      restart = true;
    }

    const std::size_t m = alpha.size();
    // After a breakdown the captured subspace is exact but may still miss
    // repeated eigenvalues, so only a full basis ends the run there.
    const bool check = full || (!restart && m >= k && (m - k) % 5 == 0);
    if (check) {
      solve_tridiagonal();
      const double top = std::abs(ritz_values[static_cast<Eigen::Index>(m) - 1]);
      bool ok = m >= k;
      for (std::size_t i = 0; ok && i < k; ++i) {
        const auto col = static_cast<Eigen::Index>(m - 1 - i);
        const double residual = std::abs(b * ritz_vectors(static_cast<Eigen::Index>(m) - 1, col));
        const double lambda = std::abs(ritz_values[col]);
        ok = residual <= 0.1 * options.tol * std::max(lambda, top);
      }
      if (ok || full) done = true;
    }
    if (done) break;

    std::vector<double> next;
    if (restart) {
      next = random_unit(rng, n, basis);
      if (next.empty()) {
        solve_tridiagonal();
        break;
      }
      beta.push_back(0.0);
    } else {
      next = w;
      for (auto& x : next) x /= b;
      beta.push_back(b);
    }
    basis.push_back(std::move(next));
  }

  const std::size_t m = alpha.size();
  const std::size_t found = std::min(k, m);
  SpectralSummary out;
  out.eigenvalues.reserve(found);
  std::vector<double> v(n), av;
  const double top = std::abs(ritz_values[static_cast<Eigen::Index>(m) - 1]);
  out.converged = found == k;
  for (std::size_t i = 0; i < found; ++i) {
    const auto col = static_cast<Eigen::Index>(m - 1 - i);
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      const double coef = ritz_vectors(static_cast<Eigen::Index>(r), col);
      const auto& q = basis[r];
      for (std::size_t t = 0; t < n; ++t) v[t] += coef * q[t];
    }
    const double len = norm(v);
    for (auto& x : v) x /= len;
    const double lambda = ritz_values[col];
    multiply(g, v, av);
    double sq = 0.0;
    for (std::size_t t = 0; t < n; ++t) sq += (av[t] - lambda * v[t]) * (av[t] - lambda * v[t]);
    const double residual = std::sqrt(sq);
    out.eigenvalues.push_back(lambda);
    out.residuals.push_back(residual);
    if (residual > options.tol * std::max(std::abs(lambda), top)) out.converged = false;
    if (i == 0) {
      std::size_t arg = 0;
      for (std::size_t t = 1; t < n; ++t)
        if (std::abs(v[t]) > std::abs(v[arg]) * (1.0 + 1e-12)) arg = t;
      if (v[arg] < 0) {
        for (auto& x : v) x = -x;
      }
      out.leading_vector = v;
    }
  }
  return out;
}

Curve eigenvalue_curve(const SpectralSummary& s) {
  Curve curve;
  curve.x_label = "rank";
  curve.y_label = "eigenvalue magnitude";
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    curve.points.push_back({static_cast<double>(i + 1), std::abs(s.eigenvalues[i])});
  }
  return curve;
}

Curve eigenvector_curve(const SpectralSummary& s) {
  std::vector<double> values;
  values.reserve(s.leading_vector.size());
  for (double x : s.leading_vector) values.push_back(std::abs(x));
  std::sort(values.begin(), values.end(), std::greater<>());
  Curve curve;
  curve.x_label = "rank";
  curve.y_label = "leading eigenvector component";
  for (std::size_t i = 0; i < values.size(); ++i) {
    curve.points.push_back({static_cast<double>(i + 1), values[i]});
  }
  return curve;
}

}  // namespace agm
