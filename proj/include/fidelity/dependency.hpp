#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fidelity/errors.hpp"
#include "fidelity/schema.hpp"
#include "fidelity/table.hpp"

namespace fidelity {

/// Average ranks (1-based), ties share the mean of their positions.
inline std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

namespace dep_detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Numeric columns with missing cells as NaN.
inline std::vector<std::vector<double>> numeric_columns(const DataTable& t, const std::vector<std::string>& names) {
  std::vector<std::vector<double>> cols;
  cols.reserve(names.size());
  for (const auto& n : names) {
    const auto& col = t.column(n);
    std::vector<double> v(col.cells.size(), kNaN);
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (col.cells[r].is_number()) v[r] = col.cells[r].number();
    }
    cols.push_back(std::move(v));
  }
  return cols;
}

inline bool complete(const std::vector<double>& v) {
  return std::none_of(v.begin(), v.end(), [](double x) { return std::isnan(x); });
}

struct PairMoments {
  double cov = 0.0;
  double corr = 0.0;
};

/// Sample covariance (n-1) and Pearson correlation of two equal-length series.
/// Correlation is 0 when either series is constant.
inline PairMoments moments(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  if (n < 2) return {};
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) ma += a[i], mb += b[i];
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  PairMoments m;
  m.cov = sab / static_cast<double>(n - 1);
  m.corr = (saa > 0.0 && sbb > 0.0) ? std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0) : 0.0;
  return m;
}

/// Rows where both series are present.
inline std::pair<std::vector<double>, std::vector<double>> pairwise_complete(const std::vector<double>& a,
                                                                             const std::vector<double>& b) {
  std::pair<std::vector<double>, std::vector<double>> out;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (!std::isnan(a[r]) && !std::isnan(b[r])) {
      out.first.push_back(a[r]);
      out.second.push_back(b[r]);
    }
  }
  return out;
}

struct Matrices {
  Eigen::MatrixXd cov, pearson, spearman;
};

inline Matrices matrices_for(const DataTable& t, const std::vector<std::string>& names) {
  const auto cols = numeric_columns(t, names);
  const auto d = static_cast<Eigen::Index>(cols.size());
  Matrices m{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Identity(d, d), Eigen::MatrixXd::Identity(d, d)};

  std::vector<bool> full(cols.size());
  std::vector<std::vector<double>> ranks(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) {
    full[i] = complete(cols[i]);
    if (full[i]) ranks[i] = average_ranks(cols[i]);
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      PairMoments pm, rm;
      if (full[ui] && full[uj]) {
        pm = moments(cols[ui], cols[uj]);
        rm = moments(ranks[ui], ranks[uj]);
      } else {
        auto [a, b] = pairwise_complete(cols[ui], cols[uj]);
        pm = moments(a, b);
        rm = moments(average_ranks(a), average_ranks(b));
      }
      m.cov(i, j) = m.cov(j, i) = pm.cov;
      if (i != j) {
        m.pearson(i, j) = m.pearson(j, i) = pm.corr;
        m.spearman(i, j) = m.spearman(j, i) = rm.corr;
      }
    }
  }
  return m;
}

}  // namespace dep_detail

/// Covariance and correlation matrices of both tables over the numeric
/// (continuous + ordinal) features. Missing cells are dropped pairwise.
struct MatrixStats {
  std::vector<std::string> feature_order;
  Eigen::MatrixXd cov_real, cov_synth;
  Eigen::MatrixXd corr_pearson_real, corr_pearson_synth;
  Eigen::MatrixXd corr_spearman_real, corr_spearman_synth;

  std::size_t dim() const noexcept { return feature_order.size(); }
};

inline MatrixStats compute_matrix_stats(const AlignedPair& pair) {
  MatrixStats s;
  s.feature_order = pair.schema.names_where(is_numeric);
  auto r = dep_detail::matrices_for(pair.real, s.feature_order);
  auto y = dep_detail::matrices_for(pair.synthetic, s.feature_order);
  s.cov_real = std::move(r.cov);
  s.cov_synth = std::move(y.cov);
  s.corr_pearson_real = std::move(r.pearson);
  s.corr_pearson_synth = std::move(y.pearson);
  s.corr_spearman_real = std::move(r.spearman);
  s.corr_spearman_synth = std::move(y.spearman);
  return s;
}

/// ||A - B||_F.
inline double cov_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw MetricError("cov_frobenius: shape mismatch");
  return (a - b).norm();
}

/// ||R_X - R_Y||_F / ||R_X||_F.
inline double corr_matrix_distance(const Eigen::MatrixXd& rx, const Eigen::MatrixXd& ry) {
  if (rx.rows() != ry.rows() || rx.cols() != ry.cols()) throw MetricError("corr_matrix_distance: shape mismatch");
  const double denom = rx.norm();
  if (denom == 0.0) throw MetricError("corr_matrix_distance: zero reference matrix");
  return (rx - ry).norm() / denom;
}

/// Mean |rho_X(i,j) - rho_Y(i,j)| over the strict upper triangle; nullopt
/// below two features.
inline std::optional<double> correlation_difference(const Eigen::MatrixXd& rx, const Eigen::MatrixXd& ry) {
  if (rx.rows() != ry.rows() || rx.cols() != ry.cols()) throw MetricError("correlation_difference: shape mismatch");
  const auto d = rx.rows();
  if (d < 2) return std::nullopt;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) sum += std::abs(rx(i, j) - ry(i, j));
  }
  return sum / (0.5 * static_cast<double>(d) * static_cast<double>(d - 1));
}

enum class CorrelationKind { Pearson, Spearman };

inline std::optional<double> correlation_difference(CorrelationKind kind, const MatrixStats& s) {
  return kind == CorrelationKind::Pearson ? correlation_difference(s.corr_pearson_real, s.corr_pearson_synth)
                                          : correlation_difference(s.corr_spearman_real, s.corr_spearman_synth);
}

/// Plug-in mutual information (nats) between two label sequences of equal
/// length, estimated from joint counts. Empty input gives 0.
inline double mutual_information(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() != b.size()) throw MetricError("mutual_information: length mismatch");
  if (a.empty()) return 0.0;
  std::map<std::string, double> ca, cb;
  std::map<std::pair<std::string, std::string>, double> cab;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca[a[i]] += 1.0;
    cb[b[i]] += 1.0;
    cab[{a[i], b[i]}] += 1.0;
  }
  const double n = static_cast<double>(a.size());
  double mi = 0.0;
  for (const auto& [key, c] : cab) {
    mi += (c / n) * std::log(c * n / (ca[key.first] * cb[key.second]));
  }
  return std::max(0.0, mi);
}

/// Pairwise MI matrices over the discrete (binary/multi-categorical) features.
/// The diagonal holds each feature's entropy.
struct MiMatrices {
  std::vector<std::string> feature_order;
  Eigen::MatrixXd mi_real, mi_synth;
};

namespace dep_detail {

inline Eigen::MatrixXd mi_matrix(const DataTable& t, const std::vector<std::string>& names) {
  const auto d = static_cast<Eigen::Index>(names.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  std::vector<const Column*> cols;
  for (const auto& n : names) cols.push_back(&t.column(n));
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      std::vector<std::string> a, b;
      const auto& ci = cols[static_cast<std::size_t>(i)]->cells;
      const auto& cj = cols[static_cast<std::size_t>(j)]->cells;
      for (std::size_t r = 0; r < ci.size(); ++r) {
        if (ci[r].missing() || cj[r].missing()) continue;
        a.push_back(ci[r].label());
        b.push_back(cj[r].label());
      }
      m(i, j) = m(j, i) = mutual_information(a, b);
    }
  }
  return m;
}

}  // namespace dep_detail

inline MiMatrices compute_mi_matrices(const AlignedPair& pair) {
  MiMatrices out;
  out.feature_order = pair.schema.names_where(is_categorical);
  out.mi_real = dep_detail::mi_matrix(pair.real, out.feature_order);
  out.mi_synth = dep_detail::mi_matrix(pair.synthetic, out.feature_order);
  return out;
}

/// Mean |I_X(i,j) - I_Y(i,j)| over discrete feature pairs i < j; nullopt with
/// fewer than two discrete features.
inline std::optional<double> mutual_information_difference(const MiMatrices& mi) {
  const auto d = mi.mi_real.rows();
  if (d < 2) return std::nullopt;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) sum += std::abs(mi.mi_real(i, j) - mi.mi_synth(i, j));
  }
  return sum / (0.5 * static_cast<double>(d) * static_cast<double>(d - 1));
}

inline std::optional<double> mutual_information_difference(const AlignedPair& pair) {
  return mutual_information_difference(compute_mi_matrices(pair));
}

/// The five dependency entries of the global metric block. Matrix metrics are
/// absent without numeric features.
struct DependencyMetrics {
  std::optional<double> cms, cmd, cdp, cds, mid;
};

inline DependencyMetrics dependency_metrics(const AlignedPair& pair, const MatrixStats& stats) {
  DependencyMetrics out;
  if (stats.dim() >= 1) {
    out.cms = cov_frobenius(stats.cov_real, stats.cov_synth);
    out.cmd = corr_matrix_distance(stats.corr_pearson_real, stats.corr_pearson_synth);
    out.cdp = correlation_difference(CorrelationKind::Pearson, stats);
    out.cds = correlation_difference(CorrelationKind::Spearman, stats);
  }
  out.mid = mutual_information_difference(pair);
  return out;
}

}  // namespace fidelity
