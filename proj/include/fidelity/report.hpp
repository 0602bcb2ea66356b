#pragma once

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fidelity/dependency.hpp"
#include "fidelity/distribution.hpp"
#include "fidelity/errors.hpp"
#include "fidelity/quality.hpp"
#include "fidelity/schema.hpp"

namespace fidelity {

using ordered_json = nlohmann::ordered_json;

namespace keys {
inline constexpr std::string_view kKs = "KS_Statistic";
inline constexpr std::string_view kJsd = "JS_Divergence";
inline constexpr std::string_view kKld = "KL_Divergence";
inline constexpr std::string_view kWd = "Wasserstein_Distance";
inline constexpr std::string_view kHd = "Hellinger_Distance";
inline constexpr std::string_view kTvd = "Total_Variation_Distance";
inline constexpr std::string_view kRc = "Range_Coverage";
inline constexpr std::string_view kCss = "Chi_Square_Statistic";
inline constexpr std::string_view kCv = "Contingency_CramerV";
inline constexpr std::string_view kCc = "Category_Coverage";

inline constexpr std::string_view kCms = "Covariance_Matrix_Similarity_Frobenius";
inline constexpr std::string_view kCmd = "Correlation_Matrix_Distance";
inline constexpr std::string_view kCdp = "Correlation_Difference_Pearson";
inline constexpr std::string_view kCds = "Correlation_Difference_Spearman";
inline constexpr std::string_view kMid = "Mutual_Information_Difference";
inline constexpr std::string_view kCka = "CKA";
inline constexpr std::string_view kNo = "Neighborhood_Overlap";
inline constexpr std::string_view kSd = "Spectral_Distance";
inline constexpr std::string_view kAwed = "Avg_Wasserstein_Embedding";
inline constexpr std::string_view kGsfs = "GSFS";
}  // namespace keys

/// Report-format metric catalog (display name -> description), in report order.
inline const std::array<std::pair<std::string_view, std::string_view>, 20>& metric_definitions() {
  static const std::array<std::pair<std::string_view, std::string_view>, 20> kDefs{{
      {"Kolmogorov–Smirnov (KS) Statistic",
       "Measures the maximum distance between the empirical cumulative distributions of real and synthetic data for a "
       "numeric feature."},
      {"Kullback-Leibler Divergence (KLD)",
       "Quantifies how much information is lost when approximating the real data distribution with the synthetic one. "
       "Asymmetric measure."},
      {"Jensen–Shannon (JS) Divergence (JSD)",
       "Symmetric measure of similarity between two probability distributions derived from real and synthetic data. "
       "Lower values indicate higher similarity."},
      {"Wasserstein Distance (WD)",
       "Quantifies the minimum 'work' required to transform one probability distribution into another, reflecting "
       "both shape and distance differences."},
      {"Hellinger Distance (HD)",
       "Measures the distance between two probability distributions; bounded between 0 (identical) and 1 (completely "
       "dissimilar)."},
      {"Total Variation Distance (TVD)",
       "Measures the maximum absolute difference between two probability distributions. Values range from 0 "
       "(identical) to 1 (completely disjoint). Supports both numeric and categorical data."},
      {"Range Coverage (RC)",
       "Fraction of the real data's numeric range that is covered by the synthetic data. Values close to 1 indicate "
       "the synthetic data spans the same domain as the real data."},
      {"Chi-Square Statistic (CSS)",
       "Tests whether the observed category frequencies in the synthetic data differ significantly from those in the "
       "real data."},
      {"Category Coverage (CC)",
       "Proportion of unique categories in the real data that also appear in the synthetic data; detects missing or "
       "underrepresented categories."},
      {"Contingency Table Similarity (CV)",
       "Measures the strength of association between two categorical variables in real vs. synthetic datasets; used "
       "to compare inter-feature dependencies."},
      {"Covariance Matrix Similarity (CMS)",
       "Quantifies deviation between real and synthetic covariance matrices; smaller Frobenius norm indicates closer "
       "similarity."},
      {"Correlation Matrix Distance (CMD)",
       "Computes normalized Frobenius norm of the difference between correlation matrices; used as an overall "
       "measure of structural fidelity."},
      {"Correlation Difference (Pearson) (CDP)",
       "Measures how much the linear (Pearson) correlations between features differ between real and synthetic "
       "datasets."},
      {"Correlation Difference (Spearman) (CDS)",
       "Measures how much the rank (Spearman) correlations between features differ between real and synthetic "
       "datasets."},
      {"Mutual Information Difference (MID)",
       "Captures how well nonlinear dependencies between variables are preserved; compares mutual information "
       "matrices between real and synthetic data."},
      {"Centered Kernel Alignment (CKA)",
       "Measures similarity between real and synthetic feature representations in embedding space. Values range from "
       "0 (no similarity) to 1 (identical representation)."},
      {"Average Wasserstein Embedding Distance (AWED)",
       "Average Wasserstein distance between real and synthetic points in embedding space. Lower values indicate "
       "better alignment of sample distributions."},
      {"Neighbor Overlap (Jaccard Similarity)",
       "Measures how similar each sample's nearest-neighbor set is between real and synthetic data. Calculated using "
       "Jaccard index between the kNN lists of real and synthetic embeddings."},
      {"Spectral Distance (SD)",
       "Distance between the eigenvalue spectra of real and synthetic kNN graphs. Lower values indicate better "
       "preservation of global graph structure."},
      {"Graph Structural Fidelity Score (GSFS)",
       "Measures global structural preservation of the kNN graph by comparing degree distributions, clustering "
       "coefficients, and shortest-path distances. Values range from 0 to 1, with higher values indicating better "
       "global topology preservation."},
  }};
  return kDefs;
}

struct StructuralMetrics {
  double cka = 0.0;
  double neighborhood_overlap = 0.0;
  double spectral_distance = 0.0;
  double awed = 0.0;
  double gsfs = 0.0;
};

struct GlobalMetrics {
  DependencyMetrics dependency;
  std::optional<StructuralMetrics> structural;  // absent when the block was skipped
};

struct FeatureMetrics {
  std::string name;
  FeatureKind kind = FeatureKind::Continuous;
  LocalMetrics metrics;
};

struct ReportMetadata {
  std::string real_dataset_path;
  std::string synthetic_dataset_path;
  std::size_t samples_real = 0;
  std::size_t samples_synthetic = 0;
  std::size_t numerical_features = 0;
  std::size_t binary_features = 0;
  std::size_t multi_features = 0;
  std::size_t text_features = 0;
  std::vector<DroppedFeature> dropped_features;
  std::vector<std::string> synthetic_only_features;
  std::vector<std::string> warnings;

  std::size_t total_features() const noexcept {
    return numerical_features + binary_features + multi_features + text_features;
  }

  /// Feature counts from the shared schema; ordinal counts as numerical.
  static ReportMetadata from_pair(const AlignedPair& pair) {
    ReportMetadata m;
    m.samples_real = pair.real.n_rows();
    m.samples_synthetic = pair.synthetic.n_rows();
    m.numerical_features = pair.schema.count(FeatureKind::Continuous) + pair.schema.count(FeatureKind::Ordinal);
    m.binary_features = pair.schema.count(FeatureKind::BinaryCategorical);
    m.multi_features = pair.schema.count(FeatureKind::MultiCategorical);
    m.text_features = pair.schema.count(FeatureKind::Text);
    m.dropped_features = pair.dropped;
    m.synthetic_only_features = pair.synthetic_only;
    return m;
  }
};

struct FidelityReport {
  std::string run_id;
  std::string timestamp;
  ReportMetadata metadata;
  QualityProfile quality;
  GlobalMetrics globals;
  std::vector<FeatureMetrics> locals;  // real column order
};

/// Bundle one run's results. Feature names must be unique.
inline FidelityReport assemble(ReportMetadata meta, QualityProfile quality, std::vector<FeatureMetrics> locals,
                               GlobalMetrics globals, std::string run_id, std::string timestamp) {
  std::set<std::string> seen;
  for (const auto& f : locals) {
    if (!seen.insert(f.name).second) throw ReportError("duplicate feature name in report: " + f.name);
  }
  seen.clear();
  for (const auto& [name, pct] : quality.outlier_pct) {
    if (!seen.insert(name).second) throw ReportError("duplicate feature name in outlier profile: " + name);
  }
  FidelityReport r;
  r.run_id = std::move(run_id);
  r.timestamp = std::move(timestamp);
  r.metadata = std::move(meta);
  r.quality = std::move(quality);
  r.locals = std::move(locals);
  r.globals = std::move(globals);
  return r;
}

/// Decimal places of metric values in the report.
inline constexpr int kMetricDecimals = 5;
/// Decimal places of percentages in the report.
inline constexpr int kPercentDecimals = 2;

namespace report_detail {

inline ordered_json metric_value(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return round_to(*v, kMetricDecimals);
}

inline ordered_json local_block(const FeatureMetrics& f) {
  const auto& m = f.metrics;
  ordered_json j = ordered_json::object();
  auto put = [&](std::string_view key, const std::optional<double>& v) { j[std::string(key)] = metric_value(v); };
  put(keys::kKs, m.ks);
  put(keys::kJsd, m.jsd);
  put(keys::kKld, m.kld);
  if (is_categorical(f.kind)) {
    put(keys::kHd, m.hd);
    put(keys::kTvd, m.tvd);
    put(keys::kWd, m.wd);
    put(keys::kCss, m.css);
    put(keys::kCv, m.cv);
    put(keys::kCc, m.cc);
    put(keys::kRc, m.rc);
  } else {
    put(keys::kWd, m.wd);
    put(keys::kHd, m.hd);
    put(keys::kTvd, m.tvd);
    put(keys::kRc, m.rc);
    put(keys::kCss, m.css);
    put(keys::kCv, m.cv);
    put(keys::kCc, m.cc);
  }
  return j;
}

}  // namespace report_detail

/// JSON document with the top-level blocks metadata, metric_definitions,
/// global_metrics and local_metrics, in that order.
inline ordered_json to_json(const FidelityReport& r) {
  using report_detail::metric_value;
  ordered_json meta = ordered_json::object();
  meta["run_id"] = r.run_id;
  meta["timestamp"] = r.timestamp;
  meta["real_dataset_path"] = r.metadata.real_dataset_path;
  meta["synthetic_dataset_path"] = r.metadata.synthetic_dataset_path;
  meta["number_of_samples_real"] = r.metadata.samples_real;
  meta["number_of_samples_synthetic"] = r.metadata.samples_synthetic;
  meta["total_features"] = r.metadata.total_features();
  meta["numerical_features"] = r.metadata.numerical_features;
  meta["binary_categorical_features"] = r.metadata.binary_features;
  meta["multi_categorical_features"] = r.metadata.multi_features;
  meta["total_missing_values"] = r.quality.total_missing;
  meta["data_completeness (%)"] = round_to(r.quality.completeness_pct, kPercentDecimals);
  ordered_json outliers = ordered_json::object();
  for (const auto& [name, pct] : r.quality.outlier_pct) outliers[name] = round_to(pct, kPercentDecimals);
  meta["outliers (%)"] = std::move(outliers);
  meta["text_features"] = r.metadata.text_features;
  ordered_json dropped = ordered_json::array();
  for (const auto& d : r.metadata.dropped_features) dropped.push_back({{"feature", d.name}, {"reason", d.reason}});
  meta["dropped_features"] = std::move(dropped);
  meta["synthetic_only_features"] = r.metadata.synthetic_only_features;
  meta["structural_metrics_computed"] = r.globals.structural.has_value();
  meta["warnings"] = r.metadata.warnings;

  ordered_json defs = ordered_json::object();
  for (const auto& [name, text] : metric_definitions()) defs[std::string(name)] = std::string(text);

  ordered_json globals = ordered_json::object();
  const auto& dep = r.globals.dependency;
  globals[std::string(keys::kCms)] = metric_value(dep.cms);
  globals[std::string(keys::kCmd)] = metric_value(dep.cmd);
  globals[std::string(keys::kCdp)] = metric_value(dep.cdp);
  globals[std::string(keys::kCds)] = metric_value(dep.cds);
  globals[std::string(keys::kMid)] = metric_value(dep.mid);
  if (const auto& s = r.globals.structural) {
    globals[std::string(keys::kCka)] = metric_value(s->cka);
    globals[std::string(keys::kNo)] = metric_value(s->neighborhood_overlap);
    globals[std::string(keys::kSd)] = metric_value(s->spectral_distance);
    globals[std::string(keys::kAwed)] = metric_value(s->awed);
    globals[std::string(keys::kGsfs)] = metric_value(s->gsfs);
  }

  ordered_json locals = ordered_json::object();
  for (const auto& f : r.locals) locals[f.name] = report_detail::local_block(f);

  ordered_json doc = ordered_json::object();
  doc["metadata"] = std::move(meta);
  doc["metric_definitions"] = std::move(defs);
  doc["global_metrics"] = std::move(globals);
  doc["local_metrics"] = std::move(locals);
  return doc;
}

/// UTF-8 JSON, 2-space indent, trailing newline.
inline std::string serialize(const FidelityReport& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace fidelity
