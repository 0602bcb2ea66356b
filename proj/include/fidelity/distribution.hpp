#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fidelity/errors.hpp"

namespace fidelity {

/// Empirical CDF: evaluate(t) is the fraction of samples <= t.
class Ecdf {
 public:
  explicit Ecdf(std::span<const double> samples) : sorted_(samples.begin(), samples.end()) {
    if (sorted_.empty()) throw MetricError("ECDF of an empty sample");
    std::sort(sorted_.begin(), sorted_.end());
  }

  double evaluate(double t) const {
    const auto k = std::upper_bound(sorted_.begin(), sorted_.end(), t) - sorted_.begin();
    return static_cast<double>(k) / static_cast<double>(sorted_.size());
  }

  const std::vector<double>& sorted_values() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
};

namespace dist_detail {

inline std::vector<double> sorted_copy(std::span<const double> v, const char* what) {
  if (v.empty()) throw MetricError(std::string(what) + ": empty sample");
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

/// Walk the pooled sorted points of two sorted samples. For each distinct
/// point t (ascending) calls f(t, F_x(t), F_y(t), next_t), with next_t equal
/// to t for the last point.
template <typename F>
void walk_pooled(const std::vector<double>& xs, const std::vector<double>& ys, F&& f) {
  const double n = static_cast<double>(xs.size());
  const double m = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < xs.size() || j < ys.size()) {
    double t;
    if (j >= ys.size() || (i < xs.size() && xs[i] <= ys[j])) {
      t = xs[i];
    } else {
      t = ys[j];
    }
    while (i < xs.size() && xs[i] <= t) ++i;
    while (j < ys.size() && ys[j] <= t) ++j;
    double next = t;
    if (i < xs.size() && j < ys.size()) {
      next = std::min(xs[i], ys[j]);
    } else if (i < xs.size()) {
      next = xs[i];
    } else if (j < ys.size()) {
      next = ys[j];
    }
    f(t, static_cast<double>(i) / n, static_cast<double>(j) / m, next);
  }
}

}  // namespace dist_detail

/// Two-sample Kolmogorov-Smirnov statistic: sup_t |F_x(t) - F_y(t)|.
inline double ks_statistic(std::span<const double> x, std::span<const double> y) {
  const auto xs = dist_detail::sorted_copy(x, "ks_statistic");
  const auto ys = dist_detail::sorted_copy(y, "ks_statistic");
  double d = 0.0;
  dist_detail::walk_pooled(xs, ys, [&](double, double fx, double fy, double) { d = std::max(d, std::abs(fx - fy)); });
  return d;
}

/// 1-D Wasserstein-1 distance as the exact area between the two step ECDFs.
inline double wasserstein_1d(std::span<const double> x, std::span<const double> y) {
  const auto xs = dist_detail::sorted_copy(x, "wasserstein_1d");
  const auto ys = dist_detail::sorted_copy(y, "wasserstein_1d");
  double area = 0.0;
  dist_detail::walk_pooled(xs, ys, [&](double t, double fx, double fy, double next) {
    area += std::abs(fx - fy) * (next - t);
  });
  return area;
}

/// Fraction of the real span [min x, max x] overlapped by the synthetic span.
/// A constant real feature scores 1 when the synthetic span contains it.
inline double range_coverage(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw MetricError("range_coverage: empty sample");
  const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
  const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
  const double xmin = *xmin_it, xmax = *xmax_it, ymin = *ymin_it, ymax = *ymax_it;
  if (xmax == xmin) return (ymin <= xmin && xmin <= ymax) ? 1.0 : 0.0;
  const double overlap = std::max(0.0, std::min(xmax, ymax) - std::max(xmin, ymin));
  return std::clamp(overlap / (xmax - xmin), 0.0, 1.0);
}

enum class PmfSource { BinnedNumeric, Categorical };

/// Aligned empirical PMFs of the real (p) and synthetic (q) samples over a
/// shared support, with the raw counts they came from.
struct PmfPair {
  PmfSource source = PmfSource::Categorical;
  std::vector<std::string> support;   // category labels or "[lo, hi)" bin labels
  std::vector<double> bin_edges;      // size K+1 for binned numeric, empty otherwise
  std::vector<double> count_real;
  std::vector<double> count_synth;
  std::vector<double> p;
  std::vector<double> q;

  std::size_t size() const noexcept { return p.size(); }
};

namespace dist_detail {

inline std::vector<double> normalize(const std::vector<double>& counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  std::vector<double> out(counts.size(), 0.0);
  if (total > 0.0) {
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] = counts[i] / total;
  }
  return out;
}

inline std::string bin_label(double lo, double hi, bool last) {
  char buf[96];
  std::snprintf(buf, sizeof buf, last ? "[%.6g, %.6g]" : "[%.6g, %.6g)", lo, hi);
  return buf;
}

}  // namespace dist_detail

/// `bins` equal-width edges over [lo, hi]; the last edge is exactly hi.
inline std::vector<double> equal_width_edges(double lo, double hi, std::size_t bins) {
  std::vector<double> edges(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) {
    edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
  }
  edges[bins] = hi;
  return edges;
}

/// Bin index of v for edges e: e[b] <= v < e[b+1], last bin closed on the right.
inline std::size_t bin_index(const std::vector<double>& edges, double v) {
  const auto bins = edges.size() - 1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  const auto k = static_cast<std::size_t>(it - edges.begin());
  if (k == 0) return 0;
  return std::min(k - 1, bins - 1);
}

/// Numeric PMF pair over `bins` equal-width bins spanning min/max of x and y
/// combined. A constant pooled sample collapses to a single bin.
inline PmfPair build_numeric_pmf(std::span<const double> x, std::span<const double> y, std::size_t bins) {
  if (x.empty() || y.empty()) throw MetricError("build_numeric_pmf: no non-missing values");
  if (bins < 1) throw MetricError("build_numeric_pmf: bins must be positive");
  double lo = x.front(), hi = x.front();
  for (double v : x) lo = std::min(lo, v), hi = std::max(hi, v);
  for (double v : y) lo = std::min(lo, v), hi = std::max(hi, v);
  if (hi == lo) bins = 1;

  PmfPair pair;
  pair.source = PmfSource::BinnedNumeric;
  pair.bin_edges = equal_width_edges(lo, hi, bins);
  pair.count_real.assign(bins, 0.0);
  pair.count_synth.assign(bins, 0.0);
  for (double v : x) pair.count_real[bin_index(pair.bin_edges, v)] += 1.0;
  for (double v : y) pair.count_synth[bin_index(pair.bin_edges, v)] += 1.0;
  for (std::size_t b = 0; b < bins; ++b) {
    pair.support.push_back(dist_detail::bin_label(pair.bin_edges[b], pair.bin_edges[b + 1], b + 1 == bins));
  }
  pair.p = dist_detail::normalize(pair.count_real);
  pair.q = dist_detail::normalize(pair.count_synth);
  return pair;
}

/// Categorical PMF pair. Support is the union of categories, ordered by real
/// frequency (descending) and then lexicographically.
inline PmfPair build_categorical_pmf(std::span<const std::string> x, std::span<const std::string> y) {
  if (x.empty() || y.empty()) throw MetricError("build_categorical_pmf: no non-missing values");
  std::map<std::string, std::pair<double, double>> counts;
  for (const auto& v : x) counts[v].first += 1.0;
  for (const auto& v : y) counts[v].second += 1.0;

  std::vector<std::pair<std::string, std::pair<double, double>>> ordered(counts.begin(), counts.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.second.first > b.second.first; });

  PmfPair pair;
  pair.source = PmfSource::Categorical;
  for (const auto& [label, c] : ordered) {
    pair.support.push_back(label);
    pair.count_real.push_back(c.first);
    pair.count_synth.push_back(c.second);
  }
  pair.p = dist_detail::normalize(pair.count_real);
  pair.q = dist_detail::normalize(pair.count_synth);
  return pair;
}

/// Additive mass given to synthetic probabilities when KL would otherwise be
/// infinite (some q_i = 0 < p_i).
inline constexpr double kKlSmoothing = 1e-10;

/// KL(P || Q) in nats. Q is smoothed, q~ = (q + eps) / (1 + K eps), only when
/// some p_i > 0 meets q_i = 0.
inline double kl_divergence(const PmfPair& pair) {
  const auto& p = pair.p;
  const auto& q = pair.q;
  bool needs_smoothing = false;
  for (std::size_t i = 0; i < p.size(); ++i) needs_smoothing |= (p[i] > 0.0 && q[i] == 0.0);
  const double k = static_cast<double>(p.size());
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    const double qi = needs_smoothing ? (q[i] + kKlSmoothing) / (1.0 + k * kKlSmoothing) : q[i];
    kl += p[i] * std::log(p[i] / qi);
  }
  return kl < 0.0 ? 0.0 : kl;
}

/// Jensen-Shannon divergence in nats, bounded by ln 2.
inline double js_divergence(const PmfPair& pair) {
  double js = 0.0;
  for (std::size_t i = 0; i < pair.p.size(); ++i) {
    const double p = pair.p[i];
    const double q = pair.q[i];
    const double m = 0.5 * (p + q);
    if (p > 0.0) js += 0.5 * p * std::log(p / m);
    if (q > 0.0) js += 0.5 * q * std::log(q / m);
  }
  return std::clamp(js, 0.0, std::numbers::ln2);
}

inline double hellinger(const PmfPair& pair) {
  double s = 0.0;
  for (std::size_t i = 0; i < pair.p.size(); ++i) {
    const double d = std::sqrt(pair.p[i]) - std::sqrt(pair.q[i]);
    s += d * d;
  }
  return std::min(1.0, std::sqrt(s) / std::numbers::sqrt2);
}

inline double total_variation(const PmfPair& pair) {
  double s = 0.0;
  for (std::size_t i = 0; i < pair.p.size(); ++i) s += std::abs(pair.p[i] - pair.q[i]);
  return std::min(1.0, 0.5 * s);
}

struct ChiSquare {
  double statistic = 0.0;
  std::size_t categories_used = 0;             // categories with expected count > 0
  std::vector<std::string> excluded_categories;  // expected count == 0
};

/// Pearson chi-square of synthetic (observed) against real (expected) counts.
/// Observed counts are rescaled by n_real / n_synth first.
inline ChiSquare chi_square(const PmfPair& pair) {
  double n = 0.0, m = 0.0;
  for (double c : pair.count_real) n += c;
  for (double c : pair.count_synth) m += c;
  if (n == 0.0) throw MetricError("chi_square: all expected counts are zero");
  if (m == 0.0) throw MetricError("chi_square: no observed counts");
  const double scale = n / m;
  ChiSquare out;
  for (std::size_t i = 0; i < pair.count_real.size(); ++i) {
    const double e = pair.count_real[i];
    if (e == 0.0) {
      out.excluded_categories.push_back(i < pair.support.size() ? pair.support[i] : std::to_string(i));
      continue;
    }
    const double o = pair.count_synth[i] * scale;
    out.statistic += (o - e) * (o - e) / e;
    ++out.categories_used;
  }
  return out;
}

/// Raw-count chi-square for callers holding counts only.
inline double chi_square_counts(std::span<const double> expected, std::span<const double> observed) {
  PmfPair pair;
  pair.count_real.assign(expected.begin(), expected.end());
  pair.count_synth.assign(observed.begin(), observed.end());
  return chi_square(pair).statistic;
}

/// |real ∩ synth| / |real|.
inline double category_coverage(const std::set<std::string>& real_cats, const std::set<std::string>& synth_cats) {
  if (real_cats.empty()) throw MetricError("category_coverage: no real categories");
  std::size_t hit = 0;
  for (const auto& c : real_cats) hit += synth_cats.count(c);
  return static_cast<double>(hit) / static_cast<double>(real_cats.size());
}

/// sqrt(chi2 / (n (K - 1))); undefined (nullopt) for K < 2.
inline std::optional<double> cramers_v(double chi2, std::size_t n, std::size_t k) {
  if (k < 2 || n == 0) return std::nullopt;
  return std::sqrt(chi2 / (static_cast<double>(n) * static_cast<double>(k - 1)));
}

/// Per-feature metric set. Absent entries do not apply to the feature kind.
struct LocalMetrics {
  std::optional<double> ks, jsd, kld, wd, hd, tvd, rc, css, cv, cc;
};

inline LocalMetrics numeric_local_metrics(std::span<const double> x, std::span<const double> y, std::size_t bins) {
  const auto pmf = build_numeric_pmf(x, y, bins);
  LocalMetrics m;
  m.ks = ks_statistic(x, y);
  m.jsd = js_divergence(pmf);
  m.kld = kl_divergence(pmf);
  m.wd = wasserstein_1d(x, y);
  m.hd = hellinger(pmf);
  m.tvd = total_variation(pmf);
  m.rc = range_coverage(x, y);
  return m;
}

inline LocalMetrics categorical_local_metrics(std::span<const std::string> x, std::span<const std::string> y) {
  const auto pmf = build_categorical_pmf(x, y);
  LocalMetrics m;
  m.jsd = js_divergence(pmf);
  m.kld = kl_divergence(pmf);
  m.hd = hellinger(pmf);
  m.tvd = total_variation(pmf);
  const auto chi = chi_square(pmf);
  m.css = chi.statistic;
  m.cv = cramers_v(chi.statistic, x.size(), chi.categories_used);
  m.cc = category_coverage(std::set<std::string>(x.begin(), x.end()), std::set<std::string>(y.begin(), y.end()));
  return m;
}

}  // namespace fidelity
