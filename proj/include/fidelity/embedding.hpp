#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "fidelity/config.hpp"
#include "fidelity/distribution.hpp"
#include "fidelity/errors.hpp"
#include "fidelity/schema.hpp"

namespace fidelity {

/// Row-normalized latent matrices for both tables in the real data's PCA frame.
struct EmbeddingPair {
  Eigen::MatrixXd z_real;        // n x k, unit rows
  Eigen::MatrixXd z_synth;       // m x k, unit rows
  Eigen::MatrixXd scores_real;   // n x k, PCA coordinates before normalization
  Eigen::MatrixXd scores_synth;  // m x k
  Eigen::MatrixXd pca_basis;     // d x k principal directions, fitted on real rows
  Eigen::VectorXd explained_variance;  // k leading eigenvalues
  std::vector<std::string> input_features;  // the d columns fed to PCA
  std::vector<std::string> excluded_features;  // zero-variance inputs
  std::size_t zero_rows_real = 0;
  std::size_t zero_rows_synth = 0;

  Eigen::Index k() const noexcept { return z_real.cols(); }
};

namespace emb_detail {

struct Encoded {
  Eigen::MatrixXd real, synth;
  std::vector<std::string> used, excluded;
};

// Numeric columns z-scored with real mean/std (missing -> 0); categorical
// columns mapped to real category frequency (unseen or missing -> 0).
inline Encoded encode(const AlignedPair& pair) {
  const auto n = static_cast<Eigen::Index>(pair.real.n_rows());
  const auto m = static_cast<Eigen::Index>(pair.synthetic.n_rows());
  std::vector<Eigen::VectorXd> rcols, scols;
  Encoded out;

  for (const auto& f : pair.schema.features) {
    const auto& rc = pair.real.column(f.name).cells;
    const auto& sc = pair.synthetic.column(f.name).cells;
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
    if (is_numeric(f.kind)) {
      double sum = 0.0, cnt = 0.0;
      for (const auto& c : rc) {
        if (c.is_number()) sum += c.number(), cnt += 1.0;
      }
      if (cnt < 2.0) {
        out.excluded.push_back(f.name);
        continue;
      }
      const double mean = sum / cnt;
      double ss = 0.0;
      for (const auto& c : rc) {
        if (c.is_number()) ss += (c.number() - mean) * (c.number() - mean);
      }
      const double sd = std::sqrt(ss / (cnt - 1.0));
      if (!(sd > 0.0)) {
        out.excluded.push_back(f.name);
        continue;
      }
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto& c = rc[static_cast<std::size_t>(i)];
        if (c.is_number()) r(i) = (c.number() - mean) / sd;
      }
      for (Eigen::Index i = 0; i < m; ++i) {
        const auto& c = sc[static_cast<std::size_t>(i)];
        if (c.is_number()) s(i) = (c.number() - mean) / sd;
      }
    } else if (is_categorical(f.kind)) {
      std::map<std::string, double> freq;
      double cnt = 0.0;
      for (const auto& c : rc) {
        if (!c.missing()) freq[c.label()] += 1.0, cnt += 1.0;
      }
      if (freq.size() < 2) {
        out.excluded.push_back(f.name);
        continue;
      }
      for (auto& [label, v] : freq) v /= cnt;
      auto lookup = [&](const Cell& c) {
        if (c.missing()) return 0.0;
        const auto it = freq.find(c.label());
        return it == freq.end() ? 0.0 : it->second;
      };
      for (Eigen::Index i = 0; i < n; ++i) r(i) = lookup(rc[static_cast<std::size_t>(i)]);
      for (Eigen::Index i = 0; i < m; ++i) s(i) = lookup(sc[static_cast<std::size_t>(i)]);
      if (r.maxCoeff() == r.minCoeff()) {
        out.excluded.push_back(f.name);
        continue;
      }
    } else {
      continue;  // text features are not embedded
    }
    out.used.push_back(f.name);
    rcols.push_back(std::move(r));
    scols.push_back(std::move(s));
  }

  const auto d = static_cast<Eigen::Index>(rcols.size());
  out.real.resize(n, d);
  out.synth.resize(m, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    out.real.col(j) = rcols[static_cast<std::size_t>(j)];
    out.synth.col(j) = scols[static_cast<std::size_t>(j)];
  }
  return out;
}

// Scores of each row against the basis, summed in a fixed order so that equal
// input rows always give bit-identical output rows.
inline Eigen::MatrixXd project(const Eigen::MatrixXd& x, const Eigen::RowVectorXd& mean, const Eigen::MatrixXd& basis) {
  Eigen::MatrixXd out(x.rows(), basis.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
      double acc = 0.0;
      for (Eigen::Index j = 0; j < x.cols(); ++j) acc += (x(i, j) - mean(j)) * basis(j, c);
      out(i, c) = acc;
    }
  }
  return out;
}

inline std::size_t normalize_rows(Eigen::MatrixXd& z) {
  std::size_t zero = 0;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index c = 0; c < z.cols(); ++c) s += z(i, c) * z(i, c);
    if (s == 0.0) {
      ++zero;
      continue;
    }
    const double norm = std::sqrt(s);
    for (Eigen::Index c = 0; c < z.cols(); ++c) z(i, c) /= norm;
  }
  return zero;
}

}  // namespace emb_detail

/// Eigenvalues below this fraction of the largest count as zero when
/// determining the rank of the real block.
inline constexpr double kPcaRankTolerance = 1e-10;

/// Principal directions of `x` (columns, descending variance) from the
/// eigendecomposition of its sample covariance. Each direction's
/// largest-magnitude component is made positive.
struct PcaFit {
  Eigen::RowVectorXd mean;
  Eigen::MatrixXd basis;
  Eigen::VectorXd eigenvalues;  // all d, descending
  Eigen::Index rank = 0;
};

inline PcaFit fit_pca(const Eigen::MatrixXd& x) {
  if (x.rows() < 2 || x.cols() < 1) throw MetricError("PCA needs at least 2 rows and 1 column");
  PcaFit fit;
  fit.mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - fit.mean;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(x.rows() - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() != Eigen::Success) throw MetricError("PCA eigendecomposition failed");
  const auto d = cov.rows();
  fit.eigenvalues = es.eigenvalues().reverse();
  fit.basis = es.eigenvectors().rowwise().reverse();
  const double top = std::max(fit.eigenvalues(0), 0.0);
  for (Eigen::Index c = 0; c < d; ++c) {
    if (top > 0.0 && fit.eigenvalues(c) > kPcaRankTolerance * top) ++fit.rank;
    Eigen::Index arg = 0;
    for (Eigen::Index j = 1; j < d; ++j) {
      if (std::abs(fit.basis(j, c)) > std::abs(fit.basis(arg, c))) arg = j;
    }
    if (fit.basis(arg, c) < 0.0) fit.basis.col(c) *= -1.0;
  }
  return fit;
}

/// Standardize / frequency-encode the aligned features, fit PCA on the real
/// rows, project both tables and L2-normalize every row.
inline EmbeddingPair build_embeddings(const AlignedPair& pair, const RunConfig& cfg) {
  auto enc = emb_detail::encode(pair);
  if (enc.used.empty()) throw MetricError("no usable features for the embedding");
  const auto fit = fit_pca(enc.real);
  const auto k = std::min<Eigen::Index>(static_cast<Eigen::Index>(cfg.pca_dims), fit.rank);
  if (k < 1) throw MetricError("real feature block has rank 0");

  EmbeddingPair out;
  out.pca_basis = fit.basis.leftCols(k);
  out.explained_variance = fit.eigenvalues.head(k);
  out.scores_real = emb_detail::project(enc.real, fit.mean, out.pca_basis);
  out.scores_synth = emb_detail::project(enc.synth, fit.mean, out.pca_basis);
  out.z_real = out.scores_real;
  out.z_synth = out.scores_synth;
  out.zero_rows_real = emb_detail::normalize_rows(out.z_real);
  out.zero_rows_synth = emb_detail::normalize_rows(out.z_synth);
  out.input_features = std::move(enc.used);
  out.excluded_features = std::move(enc.excluded);
  return out;
}

/// Linear CKA: ||X^T Y||_F^2 / (||X^T X||_F ||Y^T Y||_F) for row-paired X, Y.
inline double cka(const Eigen::MatrixXd& zx, const Eigen::MatrixXd& zy) {
  if (zx.cols() != zy.cols()) throw MetricError("cka: embedding dimensions differ");
  if (zx.rows() != zy.rows()) throw MetricError("cka: row counts differ; pair rows first");
  const double nx = (zx.transpose() * zx).norm();
  const double ny = (zy.transpose() * zy).norm();
  if (nx == 0.0 || ny == 0.0) throw MetricError("cka: all-zero embedding matrix");
  const double num = (zx.transpose() * zy).squaredNorm();
  return std::clamp(num / (nx * ny), 0.0, 1.0);
}

/// Mean over embedding dimensions of the 1-D Wasserstein distance.
inline double awed(const Eigen::MatrixXd& zx, const Eigen::MatrixXd& zy) {
  if (zx.cols() != zy.cols()) throw MetricError("awed: embedding dimensions differ");
  if (zx.cols() == 0) throw MetricError("awed: zero-dimensional embedding");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < zx.cols(); ++j) {
    const Eigen::VectorXd a = zx.col(j);
    const Eigen::VectorXd b = zy.col(j);
    sum += wasserstein_1d(std::span<const double>(a.data(), static_cast<std::size_t>(a.size())),
                          std::span<const double>(b.data(), static_cast<std::size_t>(b.size())));
  }
  return sum / static_cast<double>(zx.cols());
}

}  // namespace fidelity
