#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "fidelity/config.hpp"
#include "fidelity/embedding.hpp"
#include "fidelity/errors.hpp"
#include "fidelity/sampling.hpp"

namespace fidelity {

using NeighborSets = std::vector<std::vector<std::size_t>>;

/// Directed k nearest neighbors of every row under Euclidean distance. Each
/// list is ordered by (distance, index); a row is never its own neighbor.
inline NeighborSets knn_neighbors(const Eigen::MatrixXd& points, std::size_t k) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (n < k + 1) throw MetricError("kNN needs at least k + 1 points");
  NeighborSets out(n);
  std::vector<std::pair<double, std::size_t>> cand;
  cand.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    cand.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double d2 = 0.0;
      for (Eigen::Index c = 0; c < points.cols(); ++c) {
        const double diff = points(static_cast<Eigen::Index>(i), c) - points(static_cast<Eigen::Index>(j), c);
        d2 += diff * diff;
      }
      cand.emplace_back(d2, j);
    }
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
    out[i].reserve(k);
    for (std::size_t t = 0; t < k; ++t) out[i].push_back(cand[t].second);
  }
  return out;
}

/// Undirected simple graph as sorted adjacency lists.
struct Graph {
  std::vector<std::vector<std::size_t>> adj;

  std::size_t size() const noexcept { return adj.size(); }
  std::size_t degree(std::size_t v) const { return adj.at(v).size(); }

  /// Symmetrized kNN graph: i ~ j when either lists the other.
  static Graph from_neighbors(const NeighborSets& nb) {
    Graph g;
    g.adj.resize(nb.size());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (auto j : nb[i]) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
      }
    }
    for (auto& a : g.adj) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return g;
  }

  static Graph from_dense(const Eigen::MatrixXd& a) {
    Graph g;
    g.adj.resize(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        if (i != j && a(i, j) != 0.0) g.adj[static_cast<std::size_t>(i)].push_back(static_cast<std::size_t>(j));
      }
    }
    return g;
  }

  Eigen::MatrixXd dense() const {
    const auto n = static_cast<Eigen::Index>(adj.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      for (auto j : adj[i]) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    }
    return a;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < adj.size(); ++i) {
      for (auto j : adj[i]) {
        if (i < j) e.emplace_back(i, j);
      }
    }
    return e;
  }
};

/// L = I - D^{-1/2} A D^{-1/2} for a symmetric 0/1 adjacency matrix. Isolated
/// nodes keep an identity row.
inline Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = a.row(i).sum();
    inv_sqrt(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (a(i, j) != 0.0) l(i, j) -= a(i, j) * inv_sqrt(i) * inv_sqrt(j);
    }
  }
  return l;
}

/// Ascending eigenvalues of the normalized Laplacian.
inline Eigen::VectorXd normalized_laplacian_spectrum(const Eigen::MatrixXd& adjacency) {
  if (adjacency.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized_laplacian(adjacency), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw MetricError("Laplacian eigendecomposition failed");
  return es.eigenvalues();
}

inline Eigen::VectorXd normalized_laplacian_spectrum(const Graph& g) { return normalized_laplacian_spectrum(g.dense()); }

/// kNN graphs of both embeddings over the same number of nodes. Node i on
/// each side is the i-th row of that side's subsample.
struct KnnGraphPair {
  std::size_t n_nodes = 0;
  std::size_t k = 0;
  std::vector<std::size_t> rows_real, rows_synth;  // subsampled source rows, ascending
  NeighborSets neighbors_real, neighbors_synth;
  Graph graph_real, graph_synth;
  Eigen::VectorXd laplacian_eigs_real, laplacian_eigs_synth;
};

/// Node count used for the graph pair: min(n, m, cap).
inline std::size_t graph_node_count(std::size_t n, std::size_t m, std::size_t cap) {
  return std::min({n, m, cap});
}

inline Eigen::MatrixXd take_rows(const Eigen::MatrixXd& z, const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), z.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = z.row(static_cast<Eigen::Index>(rows[i]));
  return out;
}

/// Subsample both sides (seeded, without replacement) to min(n, m, cap) rows
/// when their sizes differ or exceed the cap, then build and symmetrize the
/// kNN graphs and compute their Laplacian spectra.
inline KnnGraphPair build_knn_pair(const EmbeddingPair& emb, const RunConfig& cfg) {
  const auto n = static_cast<std::size_t>(emb.z_real.rows());
  const auto m = static_cast<std::size_t>(emb.z_synth.rows());
  const auto s = graph_node_count(n, m, cfg.graph_sample_cap);
  if (s < cfg.knn_k + 1) throw MetricError("too few rows for a kNN graph");

  KnnGraphPair g;
  g.n_nodes = s;
  g.k = cfg.knn_k;
  g.rows_real = seeded_subsample(n, s, cfg.seed);
  g.rows_synth = seeded_subsample(m, s, cfg.seed);
  g.neighbors_real = knn_neighbors(take_rows(emb.z_real, g.rows_real), cfg.knn_k);
  g.neighbors_synth = knn_neighbors(take_rows(emb.z_synth, g.rows_synth), cfg.knn_k);
  g.graph_real = Graph::from_neighbors(g.neighbors_real);
  g.graph_synth = Graph::from_neighbors(g.neighbors_synth);
  g.laplacian_eigs_real = normalized_laplacian_spectrum(g.graph_real);
  g.laplacian_eigs_synth = normalized_laplacian_spectrum(g.graph_synth);
  return g;
}

/// Mean Jaccard index of index-paired neighbor sets.
inline double neighborhood_overlap(const NeighborSets& nx, const NeighborSets& ny) {
  if (nx.size() != ny.size()) throw MetricError("neighborhood_overlap: node counts differ");
  if (nx.empty()) throw MetricError("neighborhood_overlap: empty graphs");
  double total = 0.0;
  std::vector<std::size_t> a, b, inter;
  for (std::size_t i = 0; i < nx.size(); ++i) {
    a = nx[i];
    b = ny[i];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    inter.clear();
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    const double uni = static_cast<double>(a.size() + b.size() - inter.size());
    total += uni == 0.0 ? 1.0 : static_cast<double>(inter.size()) / uni;
  }
  return total / static_cast<double>(nx.size());
}

inline double neighborhood_overlap(const KnnGraphPair& g) {
  return neighborhood_overlap(g.neighbors_real, g.neighbors_synth);
}

/// ||lambda_X - lambda_Y||_2 over ascending spectra (shorter one zero-padded).
inline double spectral_distance(const Eigen::VectorXd& lx, const Eigen::VectorXd& ly) {
  const auto n = std::max(lx.size(), ly.size());
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = i < lx.size() ? lx(i) : 0.0;
    const double b = i < ly.size() ? ly(i) : 0.0;
    s += (a - b) * (a - b);
  }
  return std::sqrt(s);
}

inline double spectral_distance(const KnnGraphPair& g) {
  return spectral_distance(g.laplacian_eigs_real, g.laplacian_eigs_synth);
}

/// Sorted structural statistics of one graph.
struct GraphStats {
  std::vector<double> degrees;     // descending
  std::vector<double> clustering;  // descending
  std::vector<double> paths;       // ascending finite BFS distances
};

/// Local clustering coefficient; 0 below degree 2.
inline std::vector<double> clustering_coefficients(const Graph& g) {
  const auto n = g.size();
  std::vector<char> mark(n, 0);
  std::vector<double> c(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nb = g.adj[v];
    const auto d = nb.size();
    if (d < 2) continue;
    for (auto u : nb) mark[u] = 1;
    std::size_t links = 0;
    for (auto u : nb) {
      for (auto w : g.adj[u]) links += mark[w];
    }
    for (auto u : nb) mark[u] = 0;
    // each neighbor-neighbor edge was counted from both ends
    c[v] = static_cast<double>(links) / static_cast<double>(d * (d - 1));
  }
  return c;
}

/// Maximum number of BFS sources used for the shortest-path sample.
inline constexpr std::size_t kPathSources = 200;

/// Finite hop distances (>= 1) from the given sources, ascending.
inline std::vector<double> path_lengths(const Graph& g, std::span<const std::size_t> sources) {
  std::vector<double> out;
  std::vector<long> dist(g.size());
  std::deque<std::size_t> queue;
  for (auto src : sources) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    queue.assign(1, src);
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto u : g.adj[v]) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
          out.push_back(static_cast<double>(dist[u]));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// BFS sources: the first min(n, 200) entries of a seeded permutation.
inline std::vector<std::size_t> path_sources(std::size_t n, std::uint64_t seed) {
  auto perm = seeded_permutation(n, seed);
  perm.resize(std::min(n, kPathSources));
  return perm;
}

inline GraphStats graph_stats(const Graph& g, std::span<const std::size_t> sources) {
  GraphStats s;
  s.degrees.reserve(g.size());
  for (const auto& a : g.adj) s.degrees.push_back(static_cast<double>(a.size()));
  std::sort(s.degrees.begin(), s.degrees.end(), std::greater<>());
  s.clustering = clustering_coefficients(g);
  std::sort(s.clustering.begin(), s.clustering.end(), std::greater<>());
  s.paths = path_lengths(g, sources);
  return s;
}

/// 1 - ||v_X - v_Y|| / ||v_X|| clamped to [0, 1]; the shorter vector is
/// zero-padded. A zero reference scores 1 only against another zero vector.
inline double stat_similarity(std::span<const double> vx, std::span<const double> vy) {
  const auto n = std::max(vx.size(), vy.size());
  double diff = 0.0, ref = 0.0, other = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < vx.size() ? vx[i] : 0.0;
    const double b = i < vy.size() ? vy[i] : 0.0;
    diff += (a - b) * (a - b);
    ref += a * a;
    other += b * b;
  }
  if (ref == 0.0) return other == 0.0 ? 1.0 : 0.0;
  return std::clamp(1.0 - std::sqrt(diff) / std::sqrt(ref), 0.0, 1.0);
}

struct GsfsComponents {
  double degree = 0.0, clustering = 0.0, paths = 0.0;
  double score() const noexcept { return (degree + clustering + paths) / 3.0; }
};

/// Equal-weight blend of degree, clustering and path-length similarities. The
/// path samples are truncated to a common length first.
inline GsfsComponents gsfs_components(const GraphStats& x, const GraphStats& y) {
  GsfsComponents c;
  c.degree = stat_similarity(x.degrees, y.degrees);
  c.clustering = stat_similarity(x.clustering, y.clustering);
  const auto len = std::min(x.paths.size(), y.paths.size());
  c.paths = stat_similarity(std::span(x.paths).first(len), std::span(y.paths).first(len));
  return c;
}

inline double gsfs(const GraphStats& x, const GraphStats& y) { return gsfs_components(x, y).score(); }

inline double gsfs(const KnnGraphPair& g, const RunConfig& cfg) {
  const auto sources = path_sources(g.n_nodes, cfg.seed);
  return gsfs(graph_stats(g.graph_real, sources), graph_stats(g.graph_synth, sources));
}

}  // namespace fidelity
