#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fidelity/errors.hpp"
#include "fidelity/table.hpp"

namespace fidelity {

/// Quantile of ascending-sorted data by linear interpolation between order
/// statistics (position (n-1)p).
inline double sorted_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw MetricError("quantile of an empty sample");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  if (!std::isfinite(v) || std::abs(v) * scale > 9.0e15) return v;
  const double r = std::round(v * scale) / scale;
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

struct OutlierStat {
  double percent = 0.0;
  bool too_few_values = false;  // fewer than 4 values; percent forced to 0
};

/// Share of values outside the Tukey fences [Q1 - 1.5 IQR, Q3 + 1.5 IQR], in
/// percent rounded to 2 decimals.
inline OutlierStat iqr_outlier_pct(std::span<const double> values) {
  if (values.size() < 4) return {0.0, true};
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double q1 = sorted_quantile(sorted, 0.25);
  const double q3 = sorted_quantile(sorted, 0.75);
  const double iqr = q3 - q1;
  const double lo = q1 - 1.5 * iqr;
  const double hi = q3 + 1.5 * iqr;
  const auto outside = std::count_if(sorted.begin(), sorted.end(), [&](double v) { return v < lo || v > hi; });
  return {round_to(100.0 * static_cast<double>(outside) / static_cast<double>(sorted.size()), 2), false};
}

struct QualityProfile {
  std::size_t total_missing = 0;
  double completeness_pct = 100.0;
  std::vector<std::pair<std::string, double>> outlier_pct;  // numeric features, table order
  std::vector<std::string> outlier_flags;                   // features with too few values
};

/// Global missing-cell count and completeness over the whole table.
inline QualityProfile completeness(const DataTable& table) {
  QualityProfile q;
  for (const auto& col : table.columns()) {
    for (const auto& c : col.cells) q.total_missing += c.missing() ? 1 : 0;
  }
  const double cells = static_cast<double>(table.n_rows()) * static_cast<double>(table.n_cols());
  q.completeness_pct = cells == 0.0 ? 0.0 : 100.0 * (cells - static_cast<double>(q.total_missing)) / cells;
  return q;
}

/// Add IQR outlier percentages for the named numeric columns.
inline void profile_outliers(QualityProfile& q, const DataTable& table, const std::vector<std::string>& numeric) {
  for (const auto& name : numeric) {
    const auto j = table.index_of(name);
    if (!j) continue;
    const auto stat = iqr_outlier_pct(table.numeric_values(*j));
    q.outlier_pct.emplace_back(name, stat.percent);
    if (stat.too_few_values) q.outlier_flags.push_back(name);
  }
}

}  // namespace fidelity
