#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "fidelity/dependency.hpp"
#include "fidelity/distribution.hpp"
#include "fidelity/embedding.hpp"
#include "fidelity/graph.hpp"
#include "fidelity/sampling.hpp"
#include "fidelity/schema.hpp"

namespace fidelity {

// Plot-data files consumed by the renderer. Each is a standalone JSON object;
// manifest.json lists the ones produced for a run.

struct Sidecar {
  std::string kind;  // histograms, categorical_bars, corr_matrices, embedding_pca, knn_graph
  std::string file;  // relative to plots_dir/<run_id>/
  nlohmann::ordered_json body;
};

namespace sidecar_detail {

inline nlohmann::ordered_json matrix_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::ordered_json xy_points(const Eigen::MatrixXd& scores, const std::vector<std::size_t>* rows = nullptr) {
  auto pts = nlohmann::ordered_json::array();
  const auto n = rows ? rows->size() : static_cast<std::size_t>(scores.rows());
  for (std::size_t t = 0; t < n; ++t) {
    const auto i = static_cast<Eigen::Index>(rows ? (*rows)[t] : t);
    const double x = scores.cols() > 0 ? scores(i, 0) : 0.0;
    const double y = scores.cols() > 1 ? scores(i, 1) : 0.0;
    pts.push_back({x, y});
  }
  return pts;
}

inline nlohmann::ordered_json graph_side(const Graph& g, const Eigen::MatrixXd& scores,
                                         const std::vector<std::size_t>& rows) {
  nlohmann::ordered_json side;
  side["source_rows"] = rows;
  side["nodes"] = xy_points(scores, &rows);
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  side["edges"] = std::move(edges);
  return side;
}

}  // namespace sidecar_detail

/// Values kept per side for density curves.
inline constexpr std::size_t kKdeSampleCap = 5000;

inline Sidecar histogram_sidecar(const AlignedPair& pair, std::size_t bins, std::uint64_t seed) {
  auto sample = [seed](const std::vector<double>& v) {
    std::vector<double> out;
    for (auto i : seeded_subsample(v.size(), kKdeSampleCap, seed)) out.push_back(v[i]);
    return out;
  };
  auto features = nlohmann::ordered_json::array();
  for (const auto& f : pair.schema.features) {
    if (!is_numeric(f.kind)) continue;
    const auto x = pair.real.numeric_values(*pair.real.index_of(f.name));
    const auto y = pair.synthetic.numeric_values(*pair.synthetic.index_of(f.name));
    if (x.empty() || y.empty()) continue;
    const auto pmf = build_numeric_pmf(x, y, bins);
    nlohmann::ordered_json e;
    e["feature"] = f.name;
    e["bin_edges"] = pmf.bin_edges;
    e["counts_real"] = pmf.count_real;
    e["counts_synthetic"] = pmf.count_synth;
    e["kde_sample_real"] = sample(x);
    e["kde_sample_synthetic"] = sample(y);
    features.push_back(std::move(e));
  }
  return {"histograms", "histograms.json", {{"features", std::move(features)}}};
}

inline Sidecar categorical_sidecar(const AlignedPair& pair) {
  auto features = nlohmann::ordered_json::array();
  for (const auto& f : pair.schema.features) {
    if (!is_categorical(f.kind)) continue;
    const auto x = pair.real.labels(*pair.real.index_of(f.name));
    const auto y = pair.synthetic.labels(*pair.synthetic.index_of(f.name));
    if (x.empty() || y.empty()) continue;
    const auto pmf = build_categorical_pmf(x, y);
    nlohmann::ordered_json e;
    e["feature"] = f.name;
    e["categories"] = pmf.support;
    e["counts_real"] = pmf.count_real;
    e["counts_synthetic"] = pmf.count_synth;
    features.push_back(std::move(e));
  }
  return {"categorical_bars", "categorical_bars.json", {{"features", std::move(features)}}};
}

inline Sidecar correlation_sidecar(const MatrixStats& s) {
  using sidecar_detail::matrix_json;
  nlohmann::ordered_json body;
  body["features"] = s.feature_order;
  body["pearson_real"] = matrix_json(s.corr_pearson_real);
  body["pearson_synthetic"] = matrix_json(s.corr_pearson_synth);
  body["spearman_real"] = matrix_json(s.corr_spearman_real);
  body["spearman_synthetic"] = matrix_json(s.corr_spearman_synth);
  return {"corr_matrices", "corr_matrices.json", std::move(body)};
}

inline Sidecar embedding_sidecar(const EmbeddingPair& emb) {
  nlohmann::ordered_json body;
  body["input_features"] = emb.input_features;
  std::vector<double> ev(emb.explained_variance.data(), emb.explained_variance.data() + emb.explained_variance.size());
  body["explained_variance"] = ev;
  body["real"] = sidecar_detail::xy_points(emb.scores_real);
  body["synthetic"] = sidecar_detail::xy_points(emb.scores_synth);
  return {"embedding_pca", "embedding_pca.json", std::move(body)};
}

inline Sidecar knn_graph_sidecar(const EmbeddingPair& emb, const KnnGraphPair& g) {
  nlohmann::ordered_json body;
  body["k"] = g.k;
  body["n_nodes"] = g.n_nodes;
  body["real"] = sidecar_detail::graph_side(g.graph_real, emb.scores_real, g.rows_real);
  body["synthetic"] = sidecar_detail::graph_side(g.graph_synth, emb.scores_synth, g.rows_synth);
  return {"knn_graph", "knn_graph.json", std::move(body)};
}

inline nlohmann::ordered_json manifest_json(const std::string& run_id, const std::vector<Sidecar>& sidecars) {
  nlohmann::ordered_json m;
  m["run_id"] = run_id;
  auto list = nlohmann::ordered_json::array();
  for (const auto& s : sidecars) list.push_back({{"kind", s.kind}, {"path", s.file}});
  m["sidecars"] = std::move(list);
  return m;
}

}  // namespace fidelity
