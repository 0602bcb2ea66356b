#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "fidelity/config.hpp"
#include "fidelity/dependency.hpp"
#include "fidelity/distribution.hpp"
#include "fidelity/embedding.hpp"
#include "fidelity/errors.hpp"
#include "fidelity/graph.hpp"
#include "fidelity/quality.hpp"
#include "fidelity/report.hpp"
#include "fidelity/run_id.hpp"
#include "fidelity/schema.hpp"
#include "fidelity/sidecars.hpp"
#include "fidelity/table.hpp"

namespace fidelity {

/// Everything one evaluation produces, before anything touches the disk.
struct Evaluation {
  FidelityReport report;
  std::vector<Sidecar> sidecars;
};

/// Per-feature metric set for every non-text feature of the aligned pair.
inline std::vector<FeatureMetrics> local_metrics(const AlignedPair& pair, std::size_t bins) {
  std::vector<FeatureMetrics> out;
  for (const auto& f : pair.schema.features) {
    const auto jr = *pair.real.index_of(f.name);
    const auto js = *pair.synthetic.index_of(f.name);
    FeatureMetrics fm{f.name, f.kind, {}};
    if (is_numeric(f.kind)) {
      fm.metrics = numeric_local_metrics(pair.real.numeric_values(jr), pair.synthetic.numeric_values(js), bins);
    } else if (is_categorical(f.kind)) {
      fm.metrics = categorical_local_metrics(pair.real.labels(jr), pair.synthetic.labels(js));
    } else {
      continue;
    }
    out.push_back(std::move(fm));
  }
  return out;
}

/// Why the embedding/graph block will not run, or nullopt when it will.
inline std::optional<std::string> structural_skip_reason(const RunConfig& cfg, std::size_t n, std::size_t m) {
  if (!cfg.enable_structural) return "structural metrics disabled by configuration";
  if (std::max(n, m) > cfg.graph_sample_cap && !cfg.force_structural) {
    return "structural metrics skipped: a table exceeds graph_sample_cap (" + std::to_string(cfg.graph_sample_cap) +
           " rows)";
  }
  if (graph_node_count(n, m, cfg.graph_sample_cap) < cfg.knn_k + 1) {
    return "structural metrics skipped: fewer than knn_k + 1 rows";
  }
  return std::nullopt;
}

struct StructuralResult {
  StructuralMetrics metrics;
  EmbeddingPair embedding;
  KnnGraphPair graphs;
};

/// CKA runs on the same row pairing as the graphs; AWED on all rows.
inline StructuralResult structural_metrics(const AlignedPair& pair, const RunConfig& cfg) {
  StructuralResult r;
  r.embedding = build_embeddings(pair, cfg);
  r.graphs = build_knn_pair(r.embedding, cfg);
  r.metrics.cka = cka(take_rows(r.embedding.z_real, r.graphs.rows_real), take_rows(r.embedding.z_synth, r.graphs.rows_synth));
  r.metrics.awed = awed(r.embedding.z_real, r.embedding.z_synth);
  r.metrics.neighborhood_overlap = neighborhood_overlap(r.graphs);
  r.metrics.spectral_distance = spectral_distance(r.graphs);
  r.metrics.gsfs = gsfs(r.graphs, cfg);
  return r;
}

/// Run every module over two in-memory tables. `real_digest` and
/// `synthetic_digest` pin the run id.
inline Evaluation evaluate_tables(const DataTable& real, const DataTable& synthetic, const RunConfig& cfg,
                                  const std::string& run_id, std::string timestamp) {
  cfg.validate();
  const auto pair = align(real, synthetic, cfg);

  auto quality = completeness(real);
  profile_outliers(quality, pair.real, pair.schema.names_where(is_numeric));

  auto meta = ReportMetadata::from_pair(pair);
  meta.real_dataset_path = cfg.real_path.string();
  meta.synthetic_dataset_path = cfg.synthetic_path.string();
  for (const auto& f : pair.schema.features) {
    if (f.all_missing) meta.warnings.push_back("feature '" + f.name + "' has no values; treated as text");
    else if (f.kind == FeatureKind::Text) meta.warnings.push_back("feature '" + f.name + "' detected as text; skipped");
  }
  for (const auto& f : quality.outlier_flags) {
    meta.warnings.push_back("feature '" + f + "' has fewer than 4 values; outlier share set to 0");
  }

  auto locals = local_metrics(pair, cfg.bins);
  const auto stats = compute_matrix_stats(pair);
  GlobalMetrics globals;
  globals.dependency = dependency_metrics(pair, stats);

  std::vector<Sidecar> sidecars;
  sidecars.push_back(histogram_sidecar(pair, cfg.bins, cfg.seed));
  sidecars.push_back(categorical_sidecar(pair));
  sidecars.push_back(correlation_sidecar(stats));

  if (auto reason = structural_skip_reason(cfg, pair.real.n_rows(), pair.synthetic.n_rows())) {
    meta.warnings.push_back(*reason);
  } else {
    try {
      auto s = structural_metrics(pair, cfg);
      globals.structural = s.metrics;
      sidecars.push_back(embedding_sidecar(s.embedding));
      sidecars.push_back(knn_graph_sidecar(s.embedding, s.graphs));
      for (const auto& f : s.embedding.excluded_features) {
        meta.warnings.push_back("feature '" + f + "' has zero variance; excluded from the embedding");
      }
      if (s.embedding.zero_rows_real + s.embedding.zero_rows_synth > 0) {
        meta.warnings.push_back("embedding has " + std::to_string(s.embedding.zero_rows_real) + " real and " +
                                std::to_string(s.embedding.zero_rows_synth) + " synthetic all-zero rows");
      }
    } catch (const MetricError& e) {
      meta.warnings.push_back(std::string("structural metrics skipped: ") + e.what());
    }
  }

  Evaluation ev;
  ev.report = assemble(std::move(meta), std::move(quality), std::move(locals), globals, run_id, std::move(timestamp));
  ev.sidecars = std::move(sidecars);
  return ev;
}

/// Load both files named by the config and evaluate them.
inline Evaluation evaluate(const RunConfig& cfg, std::optional<std::string> timestamp = std::nullopt) {
  cfg.validate();
  cfg.validate_inputs();
  const auto real_bytes = read_file_bytes(cfg.real_path);
  const auto synth_bytes = read_file_bytes(cfg.synthetic_path);
  const auto real = parse_csv(real_bytes);
  const auto synth = parse_csv(synth_bytes);
  const auto run_id = content_run_id(sha256(real_bytes), sha256(synth_bytes), cfg.seed);
  return evaluate_tables(real, synth, cfg, run_id.str(), timestamp ? *timestamp : now_timestamp());
}

/// Write `bytes` to a sibling temp file and rename it over `path`.
inline void write_atomically(const std::filesystem::path& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + tmp.string());
    out << bytes;
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot move report into place: " + path.string() + ": " + ec.message());
  }
}

/// Directory holding the run's sidecars: plots_dir/<run_id>/.
inline std::filesystem::path run_plots_dir(const RunConfig& cfg, const std::string& run_id) {
  return cfg.plots_dir / run_id;
}

/// Write sidecars plus manifest, then the report, each atomically.
inline void write_outputs(const RunConfig& cfg, const Evaluation& ev) {
  const auto dir = run_plots_dir(cfg, ev.report.run_id);
  for (const auto& s : ev.sidecars) write_atomically(dir / s.file, s.body.dump(2) + "\n");
  write_atomically(dir / "manifest.json", manifest_json(ev.report.run_id, ev.sidecars).dump(2) + "\n");
  write_atomically(cfg.report_path, serialize(ev.report));
}

/// Evaluate and persist: report at cfg.report_path, sidecars under
/// plots_dir/<run_id>/.
inline FidelityReport run_pipeline(const RunConfig& cfg, std::optional<std::string> timestamp = std::nullopt) {
  auto ev = evaluate(cfg, std::move(timestamp));
  write_outputs(cfg, ev);
  return std::move(ev.report);
}

}  // namespace fidelity
