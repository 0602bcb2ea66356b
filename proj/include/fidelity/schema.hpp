#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fidelity/config.hpp"
#include "fidelity/errors.hpp"
#include "fidelity/table.hpp"

namespace fidelity {

enum class FeatureKind { Continuous, Ordinal, BinaryCategorical, MultiCategorical, Text };

constexpr std::string_view to_string(FeatureKind k) noexcept {
  switch (k) {
    case FeatureKind::Continuous: return "continuous";
    case FeatureKind::Ordinal: return "ordinal";
    case FeatureKind::BinaryCategorical: return "binary_categorical";
    case FeatureKind::MultiCategorical: return "multi_categorical";
    case FeatureKind::Text: return "text";
  }
  return "unknown";
}

/// Continuous and Ordinal features get the numeric metric set.
constexpr bool is_numeric(FeatureKind k) noexcept {
  return k == FeatureKind::Continuous || k == FeatureKind::Ordinal;
}

constexpr bool is_categorical(FeatureKind k) noexcept {
  return k == FeatureKind::BinaryCategorical || k == FeatureKind::MultiCategorical;
}

struct FeatureInfo {
  std::string name;
  FeatureKind kind = FeatureKind::Text;
  std::size_t unique_count = 0;
  std::optional<std::pair<double, double>> numeric_range;
  std::optional<std::vector<std::string>> categories;
  bool has_text_values = false;
  bool all_missing = false;

  friend bool operator==(const FeatureInfo&, const FeatureInfo&) = default;
};

struct FeatureSchema {
  std::vector<FeatureInfo> features;

  const FeatureInfo* find(std::string_view name) const {
    for (const auto& f : features) {
      if (f.name == name) return &f;
    }
    return nullptr;
  }

  std::size_t count(FeatureKind k) const {
    return static_cast<std::size_t>(std::count_if(features.begin(), features.end(),
                                                  [k](const FeatureInfo& f) { return f.kind == k; }));
  }

  std::vector<std::string> names_where(bool (*pred)(FeatureKind)) const {
    std::vector<std::string> out;
    for (const auto& f : features) {
      if (pred(f.kind)) out.push_back(f.name);
    }
    return out;
  }

  friend bool operator==(const FeatureSchema&, const FeatureSchema&) = default;
};

/// Classify one column. Rule ladder, first match wins:
///   1. any text cell: binary with 2 uniques, text when uniques > n_rows/2,
///      multi-categorical otherwise;
///   2. numeric with exactly 2 uniques: binary;
///   3. all integers, uniques <= categorical_unique_max: multi-categorical;
///   4. all integers, uniques <= ordinal_unique_max: ordinal;
///   5. continuous.
/// An all-missing column is Text with `all_missing` set.
inline FeatureInfo detect_column(const Column& column, std::size_t n_rows, const RunConfig& cfg) {
  FeatureInfo info;
  info.name = column.name;

  std::set<double> numbers;
  std::set<std::string> texts;
  bool any_value = false;
  bool all_integers = true;
  for (const auto& c : column.cells) {
    if (c.missing()) continue;
    any_value = true;
    if (c.is_text()) {
      info.has_text_values = true;
      texts.insert(c.text());
    } else {
      const double v = c.number();
      numbers.insert(v);
      if (v != std::floor(v)) all_integers = false;
    }
  }
  if (!any_value) {
    info.kind = FeatureKind::Text;
    info.all_missing = true;
    return info;
  }
  if (!numbers.empty()) info.numeric_range = std::make_pair(*numbers.begin(), *numbers.rbegin());

  if (info.has_text_values) {
    // Numbers in a text column are categories by their label.
    for (double v : numbers) texts.insert(Cell(v).label());
    info.unique_count = texts.size();
    if (info.unique_count == 2) {
      info.kind = FeatureKind::BinaryCategorical;
    } else if (2 * info.unique_count > n_rows) {
      info.kind = FeatureKind::Text;
    } else {
      info.kind = FeatureKind::MultiCategorical;
    }
    if (is_categorical(info.kind)) info.categories = std::vector<std::string>(texts.begin(), texts.end());
    return info;
  }

  info.unique_count = numbers.size();
  if (info.unique_count == 2) {
    info.kind = FeatureKind::BinaryCategorical;
  } else if (all_integers && info.unique_count <= cfg.categorical_unique_max) {
    info.kind = FeatureKind::MultiCategorical;
  } else if (all_integers && info.unique_count <= cfg.ordinal_unique_max) {
    info.kind = FeatureKind::Ordinal;
  } else {
    info.kind = FeatureKind::Continuous;
  }
  if (is_categorical(info.kind)) {
    std::vector<std::string> cats;
    for (double v : numbers) cats.push_back(Cell(v).label());  // numeric order
    info.categories = std::move(cats);
  }
  return info;
}

inline FeatureSchema detect_types(const DataTable& table, const RunConfig& cfg) {
  if (table.n_cols() == 0) throw SchemaError("cannot detect types of a table without columns");
  FeatureSchema schema;
  schema.features.reserve(table.n_cols());
  for (const auto& col : table.columns()) schema.features.push_back(detect_column(col, table.n_rows(), cfg));
  return schema;
}

struct DroppedFeature {
  std::string name;
  std::string reason;  // "missing-in-synthetic" or "kind-mismatch"

  friend bool operator==(const DroppedFeature&, const DroppedFeature&) = default;
};

/// Real and synthetic tables restricted to their common, kind-compatible
/// features, in the real table's column order.
struct AlignedPair {
  DataTable real;
  DataTable synthetic;
  FeatureSchema schema;
  std::vector<DroppedFeature> dropped;
  std::vector<std::string> synthetic_only;

  friend bool operator==(const AlignedPair&, const AlignedPair&) = default;
};

namespace schema_detail {
enum class Family { Numeric, Categorical, Text };

constexpr Family family(FeatureKind k) noexcept {
  if (is_numeric(k)) return Family::Numeric;
  if (is_categorical(k)) return Family::Categorical;
  return Family::Text;
}
}  // namespace schema_detail

/// Harmonize the two schemas. A common feature survives when both sides fall
/// into the same kind family (numeric / categorical / text) and agree on the
/// value type; the shared kind is the real side's kind.
inline AlignedPair align(const DataTable& real, const DataTable& synthetic, const RunConfig& cfg) {
  const auto real_schema = detect_types(real, cfg);
  const auto synth_schema = detect_types(synthetic, cfg);

  AlignedPair out;
  std::vector<std::string> keep;
  for (const auto& rf : real_schema.features) {
    const auto* sf = synth_schema.find(rf.name);
    if (sf == nullptr) {
      out.dropped.push_back({rf.name, "missing-in-synthetic"});
      continue;
    }
    const bool same_family = schema_detail::family(rf.kind) == schema_detail::family(sf->kind);
    const bool same_value_type = rf.has_text_values == sf->has_text_values;
    if (!same_family || !same_value_type) {
      out.dropped.push_back({rf.name, "kind-mismatch"});
      continue;
    }
    keep.push_back(rf.name);
    out.schema.features.push_back(rf);
  }
  for (const auto& sf : synth_schema.features) {
    if (real_schema.find(sf.name) == nullptr) out.synthetic_only.push_back(sf.name);
  }
  if (keep.empty()) throw SchemaError("real and synthetic tables share no compatible features");

  out.real = real.select(keep);
  out.synthetic = synthetic.select(keep);
  return out;
}

}  // namespace fidelity
