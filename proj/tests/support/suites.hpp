#pragma once

// Criterion-level checks shared by the acceptance binary and the unit tests.
// Each returns a list of failure descriptions; empty means the check passed.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fidelity/fidelity.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace suites {

using Failures = std::vector<std::string>;

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

class Collector {
 public:
  explicit Collector(Failures& out) : out_(out) {}

  void near(const std::string& what, double got, double want, double tol) {
    if (!(std::abs(got - want) <= tol)) {
      add(what + ": got " + fmt(got) + ", want " + fmt(want) + " (tol " + fmt(tol) + ")");
    }
  }
  void check(bool ok, const std::string& what) {
    if (!ok) add(what);
  }
  void add(std::string s) {
    if (out_.size() < kMaxReported) out_.push_back(std::move(s));
    else if (out_.size() == kMaxReported) out_.push_back("...");
  }

 private:
  static constexpr std::size_t kMaxReported = 20;
  Failures& out_;
};

inline oracle::Mat to_mat(const Eigen::MatrixXd& m) {
  oracle::Mat out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return out;
}

inline Eigen::MatrixXd random_matrix(gen::Rng& rng, Eigen::Index n, Eigen::Index k) {
  Eigen::MatrixXd m(n, k);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = rng.normal();
  return m;
}

inline Eigen::MatrixXd random_orthogonal(gen::Rng& rng, Eigen::Index k) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(rng, k, k));
  return qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
}

inline std::optional<double> oracle_mid(const fidelity::DataTable& x, const fidelity::DataTable& y,
                                        const std::vector<std::string>& names) {
  if (names.size() < 2) return std::nullopt;
  double s = 0, c = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      const double ix = oracle::mutual_information(x.labels(*x.index_of(names[i])), x.labels(*x.index_of(names[j])));
      const double iy = oracle::mutual_information(y.labels(*y.index_of(names[i])), y.labels(*y.index_of(names[j])));
      s += std::abs(ix - iy);
      c += 1;
    }
  }
  return s / c;
}

struct OracleMatrices {
  oracle::Mat cov, pearson, spearman;
};

inline OracleMatrices oracle_matrices(const fidelity::DataTable& t, const std::vector<std::string>& names) {
  const auto d = names.size();
  std::vector<std::vector<double>> cols, ranks;
  for (const auto& n : names) {
    cols.push_back(t.numeric_values(*t.index_of(n)));
    ranks.push_back(oracle::ranks(cols.back()));
  }
  OracleMatrices m{oracle::Mat(d, std::vector<double>(d)), oracle::Mat(d, std::vector<double>(d)),
                   oracle::Mat(d, std::vector<double>(d))};
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m.cov[i][j] = oracle::cov(cols[i], cols[j]);
      m.pearson[i][j] = i == j ? 1.0 : oracle::pearson(cols[i], cols[j]);
      m.spearman[i][j] = i == j ? 1.0 : oracle::pearson(ranks[i], ranks[j]);
    }
  }
  return m;
}

}  // namespace detail

/// Every distribution and dependency metric on `tables` seeded random table
/// pairs against the brute-force references.
inline Failures oracle_equivalence(std::uint64_t seed, int tables, double tol) {
  using namespace fidelity;
  Failures out;
  detail::Collector c(out);
  gen::Rng rng(seed);
  const RunConfig cfg;
  for (int t = 0; t < tables; ++t) {
    const auto tp = gen::mixed_tables(rng);
    const auto pair = align(tp.real, tp.synth, cfg);
    const std::string tag = "table " + std::to_string(t) + " ";
    for (const auto& f : pair.schema.features) {
      const auto jr = *pair.real.index_of(f.name);
      const auto js = *pair.synthetic.index_of(f.name);
      const std::string ft = tag + f.name + " ";
      if (is_numeric(f.kind)) {
        const auto x = pair.real.numeric_values(jr), y = pair.synthetic.numeric_values(js);
        const auto m = numeric_local_metrics(x, y, cfg.bins);
        const auto pmf = oracle::binned(x, y, cfg.bins);
        c.near(ft + "KS", *m.ks, oracle::ks(x, y), tol);
        c.near(ft + "WD", *m.wd, oracle::wasserstein(x, y), tol);
        c.near(ft + "JSD", *m.jsd, oracle::js(pmf.p, pmf.q), tol);
        c.near(ft + "KLD", *m.kld, oracle::kl(pmf.p, pmf.q), tol);
        c.near(ft + "HD", *m.hd, oracle::hellinger(pmf.p, pmf.q), tol);
        c.near(ft + "TVD", *m.tvd, oracle::tvd(pmf.p, pmf.q), tol);
        c.near(ft + "RC", *m.rc, oracle::range_coverage(x, y), tol);
      } else if (is_categorical(f.kind)) {
        const auto x = pair.real.labels(jr), y = pair.synthetic.labels(js);
        const auto m = categorical_local_metrics(x, y);
        const auto pmf = oracle::categorical(x, y);
        const auto chi = oracle::chi_square(pmf.cp, pmf.cq);
        c.near(ft + "JSD", *m.jsd, oracle::js(pmf.p, pmf.q), tol);
        c.near(ft + "KLD", *m.kld, oracle::kl(pmf.p, pmf.q), tol);
        c.near(ft + "HD", *m.hd, oracle::hellinger(pmf.p, pmf.q), tol);
        c.near(ft + "TVD", *m.tvd, oracle::tvd(pmf.p, pmf.q), tol);
        c.near(ft + "CSS", *m.css, chi.stat, tol * std::max(1.0, chi.stat));
        c.near(ft + "CC", *m.cc, oracle::category_coverage(x, y), tol);
        if (chi.used >= 2) {
          c.check(m.cv.has_value(), ft + "CV missing");
          if (m.cv) c.near(ft + "CV", *m.cv, std::sqrt(chi.stat / (double(x.size()) * double(chi.used - 1))), tol);
        } else {
          c.check(!m.cv.has_value(), ft + "CV should be null");
        }
      }
    }

    const auto stats = compute_matrix_stats(pair);
    const auto dep = dependency_metrics(pair, stats);
    const auto numeric = pair.schema.names_where(is_numeric);
    if (!numeric.empty()) {
      const auto ox = detail::oracle_matrices(pair.real, numeric), oy = detail::oracle_matrices(pair.synthetic, numeric);
      const double cms = oracle::frobenius_diff(ox.cov, oy.cov);
      c.near(tag + "CMS", *dep.cms, cms, tol * std::max(1.0, cms));
      c.near(tag + "CMD", *dep.cmd, oracle::frobenius_diff(ox.pearson, oy.pearson) / oracle::frobenius(ox.pearson), tol);
      if (numeric.size() >= 2) {
        c.near(tag + "CDP", *dep.cdp, oracle::upper_mean_abs_diff(ox.pearson, oy.pearson), tol);
        c.near(tag + "CDS", *dep.cds, oracle::upper_mean_abs_diff(ox.spearman, oy.spearman), tol);
      } else {
        c.check(!dep.cdp && !dep.cds, tag + "CDP/CDS should be null below two numeric features");
      }
    }
    const auto mid = detail::oracle_mid(pair.real, pair.synthetic, pair.schema.names_where(is_categorical));
    c.check(mid.has_value() == dep.mid.has_value(), tag + "MID presence differs");
    if (mid && dep.mid) c.near(tag + "MID", *dep.mid, *mid, tol);
  }
  return out;
}

/// Dense brute-force eigensolve against the library spectrum on random
/// symmetrized kNN graphs of 12 nodes.
inline Failures spectral_oracle(std::uint64_t seed, int graphs, double tol) {
  using namespace fidelity;
  Failures out;
  detail::Collector c(out);
  gen::Rng rng(seed);
  for (int t = 0; t < graphs; ++t) {
    const auto pts = detail::random_matrix(rng, 12, 1 + static_cast<Eigen::Index>(rng.index(3)));
    const auto g = Graph::from_neighbors(knn_neighbors(pts, 1 + rng.index(4)));
    const auto want = oracle::jacobi_eigenvalues(oracle::normalized_laplacian(detail::to_mat(g.dense())));
    const auto got = normalized_laplacian_spectrum(g);
    for (int i = 0; i < 12; ++i) c.near("graph " + std::to_string(t) + " eig " + std::to_string(i), got(i), want[i], tol);
  }
  return out;
}

inline Failures closed_form_spectra(double tol) {
  using namespace fidelity;
  Failures out;
  detail::Collector c(out);
  Eigen::MatrixXd k3 = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd p3 = Eigen::MatrixXd::Zero(3, 3);
  p3(0, 1) = p3(1, 0) = p3(1, 2) = p3(2, 1) = 1;
  const auto lk = normalized_laplacian_spectrum(k3), lp = normalized_laplacian_spectrum(p3);
  const double want_k[] = {0, 1.5, 1.5}, want_p[] = {0, 1, 2};
  for (int i = 0; i < 3; ++i) {
    c.near("K3 eig " + std::to_string(i), lk(i), want_k[i], tol);
    c.near("P3 eig " + std::to_string(i), lp(i), want_p[i], tol);
  }
  c.near("SD(K3, P3)", spectral_distance(lk, lp), std::sqrt(0.5), tol);
  return out;
}

/// Bounds, symmetry and invariance properties on `n` fuzzed inputs.
inline Failures property_suite(std::uint64_t seed, int n) {
  using namespace fidelity;
  Failures out;
  detail::Collector c(out);
  gen::Rng rng(seed);
  constexpr double ln2 = std::numbers::ln2;
  for (int it = 0; it < n; ++it) {
    const std::string tag = "input " + std::to_string(it) + " ";

    // PMF-based divergences.
    const std::size_t k = 2 + rng.index(9);
    PmfPair a;
    a.p = gen::probability_vector(rng, k);
    a.q = gen::probability_vector(rng, k);
    PmfPair b;
    b.p = a.q;
    b.q = a.p;
    const double jsd = js_divergence(a), hd = hellinger(a), tvd = total_variation(a), kld = kl_divergence(a);
    c.check(jsd >= 0 && jsd <= ln2 + 1e-12, tag + "JSD out of [0, ln 2]");
    c.check(hd >= 0 && hd <= 1, tag + "HD out of [0, 1]");
    c.check(tvd >= 0 && tvd <= 1, tag + "TVD out of [0, 1]");
    c.check(kld >= 0, tag + "KLD negative");
    c.near(tag + "JSD symmetry", jsd, js_divergence(b), 1e-12);
    c.near(tag + "HD symmetry", hd, hellinger(b), 1e-12);
    c.near(tag + "TVD symmetry", tvd, total_variation(b), 1e-12);
    c.check(hd * hd <= tvd + 1e-12, tag + "HD^2 > TVD");
    c.check(tvd <= std::numbers::sqrt2 * hd + 1e-12, tag + "TVD > sqrt2 HD");

    // Sample-based metrics.
    const auto x = gen::normal_sample(rng, 5 + rng.index(80), 0, 1 + rng.uniform(0, 3));
    const auto y = gen::normal_sample(rng, 5 + rng.index(80), rng.uniform(-1, 1), 1 + rng.uniform(0, 3));
    const double ks = ks_statistic(x, y), wd = wasserstein_1d(x, y), rc = range_coverage(x, y);
    c.check(ks >= 0 && ks <= 1, tag + "KS out of [0, 1]");
    c.check(rc >= 0 && rc <= 1, tag + "RC out of [0, 1]");
    c.check(wd >= 0, tag + "WD negative");
    c.near(tag + "KS symmetry", ks, ks_statistic(y, x), 1e-12);
    const double shift = rng.uniform(-10, 10);
    auto xs = x, ys = y;
    for (auto& v : xs) v += shift;
    for (auto& v : ys) v += shift;
    c.near(tag + "WD translation", wasserstein_1d(xs, ys), wd, 1e-12);
    const auto pmf = build_numeric_pmf(x, y, 2 + rng.index(30));
    c.check(js_divergence(pmf) <= ln2 + 1e-12, tag + "binned JSD above ln 2");

    const auto cx = gen::category_sample(rng, 10 + rng.index(50), 1 + rng.index(6));
    const auto cy = gen::category_sample(rng, 10 + rng.index(50), 1 + rng.index(6));
    const auto cm = categorical_local_metrics(cx, cy);
    c.check(*cm.cc >= 0 && *cm.cc <= 1, tag + "CC out of [0, 1]");
    c.check(*cm.css >= 0, tag + "CSS negative");
    const auto paired = gen::category_sample(rng, cx.size(), 1 + rng.index(6));
    const double mi = mutual_information(cx, paired);
    c.near(tag + "MI symmetry", mi, mutual_information(paired, cx), 1e-12);
    c.check(mi >= 0, tag + "MI negative");

    // Spearman invariance under a strictly increasing transform of one feature in both tables.
    {
      const std::size_t nr = 20 + rng.index(60), ns = 20 + rng.index(60);
      auto u = gen::normal_sample(rng, nr), v = gen::normal_sample(rng, nr);
      auto us = gen::normal_sample(rng, ns), vs = gen::normal_sample(rng, ns);
      for (std::size_t i = 0; i < nr; ++i) v[i] += 0.7 * u[i];
      for (std::size_t i = 0; i < ns; ++i) vs[i] += 0.2 * us[i];
      auto table = [](const std::vector<double>& p, const std::vector<double>& q) {
        return DataTable({gen::numeric_column("u", p), gen::numeric_column("v", q)}, p.size());
      };
      auto mono = [](std::vector<double> w) {
        for (auto& t : w) t = std::exp(t) + t * t * t;
        return w;
      };
      const auto base = compute_matrix_stats(align(table(u, v), table(us, vs), RunConfig{}));
      const auto moved = compute_matrix_stats(align(table(mono(u), v), table(mono(us), vs), RunConfig{}));
      c.near(tag + "CDS monotone invariance", *correlation_difference(CorrelationKind::Spearman, moved),
             *correlation_difference(CorrelationKind::Spearman, base), 1e-12);
    }

    // CKA orthogonal invariance and AWED symmetry.
    {
      const auto kk = 1 + static_cast<Eigen::Index>(rng.index(5));
      const auto rows = 10 + static_cast<Eigen::Index>(rng.index(40));
      const auto zx = detail::random_matrix(rng, rows, kk), zy = detail::random_matrix(rng, rows, kk);
      const auto q = detail::random_orthogonal(rng, kk);
      const double v = cka(zx, zy);
      c.check(v >= 0 && v <= 1, tag + "CKA out of [0, 1]");
      c.near(tag + "CKA orthogonal invariance", cka(zx * q, zy * q), v, 1e-9);
      c.near(tag + "CKA self", cka(zx, zx), 1.0, 1e-9);
      c.near(tag + "AWED symmetry", awed(zx, zy), awed(zy, zx), 1e-12);
      c.near(tag + "AWED self", awed(zx, zx), 0.0, 0.0);
    }

    // Graph invariants.
    {
      const auto nodes = 12 + static_cast<Eigen::Index>(rng.index(30));
      const auto kn = 1 + rng.index(4);
      const auto px = detail::random_matrix(rng, nodes, 2), py = detail::random_matrix(rng, nodes, 2);
      const auto nx = knn_neighbors(px, kn), ny = knn_neighbors(py, kn);
      const auto gx = Graph::from_neighbors(nx), gy = Graph::from_neighbors(ny);
      const auto lx = normalized_laplacian_spectrum(gx), ly = normalized_laplacian_spectrum(gy);
      c.check(lx.minCoeff() >= -1e-9 && lx.maxCoeff() <= 2 + 1e-9, tag + "Laplacian eigenvalues out of [0, 2]");
      c.near(tag + "smallest Laplacian eigenvalue", lx(0), 0.0, 1e-9);
      c.check(spectral_distance(lx, ly) >= 0, tag + "SD negative");
      const double no = neighborhood_overlap(nx, ny);
      c.check(no >= 0 && no <= 1, tag + "NO out of [0, 1]");
      c.near(tag + "NO symmetry", no, neighborhood_overlap(ny, nx), 1e-15);
      const auto src = path_sources(static_cast<std::size_t>(nodes), seed + static_cast<std::uint64_t>(it));
      const double gs = gsfs(graph_stats(gx, src), graph_stats(gy, src));
      c.check(gs >= 0 && gs <= 1, tag + "GSFS out of [0, 1]");
      for (double cc : clustering_coefficients(gx)) c.check(cc >= 0 && cc <= 1, tag + "clustering out of [0, 1]");
      for (const auto& a : gx.adj) c.check(a.size() >= kn, tag + "degree below k");
    }
  }
  return out;
}

/// A 1000 x 20 mixed table: 14 continuous, 3 ordinal, 2 binary, 1 multi-categorical.
inline fidelity::DataTable identity_table(std::uint64_t seed) {
  gen::Rng rng(seed);
  const std::size_t n = 1000;
  std::vector<fidelity::Column> cols;
  std::vector<double> base = gen::normal_sample(rng, n);
  for (int j = 0; j < 14; ++j) {
    auto v = gen::normal_sample(rng, n, 10.0 * j, 1.0 + j);
    for (std::size_t i = 0; i < n; ++i) v[i] += 0.5 * (j % 3) * base[i];
    cols.push_back(gen::numeric_column("num" + std::to_string(j), v));
  }
  for (int j = 0; j < 3; ++j) {
    std::vector<double> v(n);
    for (auto& x : v) x = static_cast<double>(rng.index(20));
    cols.push_back(gen::numeric_column("ord" + std::to_string(j), v));
  }
  for (int j = 0; j < 2; ++j) cols.push_back(gen::text_column("bin" + std::to_string(j), gen::category_sample(rng, n, 2)));
  cols.push_back(gen::text_column("cat", gen::category_sample(rng, n, 5)));
  return fidelity::DataTable(std::move(cols), n);
}

struct IdentityResult {
  Failures failures;
  double seconds = 0;
};

/// Evaluate a table against an identical copy; every metric must be at its
/// identity value.
inline IdentityResult identity_suite(const fidelity::DataTable& table, const fidelity::RunConfig& cfg) {
  using namespace fidelity;
  IdentityResult r;
  detail::Collector c(r.failures);
  const auto copy = table;
  const auto start = std::chrono::steady_clock::now();
  const auto ev = evaluate_tables(table, copy, cfg, "sdb_000000000000", "1970-01-01T00:00:00.000000");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto& rep = ev.report;
  for (const auto& f : rep.locals) {
    const auto& m = f.metrics;
    const std::string t = f.name + " ";
    for (auto [name, v] : {std::pair{"KS", m.ks}, {"JSD", m.jsd}, {"KLD", m.kld}, {"WD", m.wd}, {"HD", m.hd},
                           {"TVD", m.tvd}, {"CSS", m.css}}) {
      if (v) c.check(*v == 0.0, t + name + " = " + detail::fmt(*v) + ", want exactly 0");
    }
    for (auto [name, v] : {std::pair{"RC", m.rc}, {"CC", m.cc}}) {
      if (v) c.check(*v == 1.0, t + name + " = " + detail::fmt(*v) + ", want exactly 1");
    }
    if (is_numeric(f.kind)) c.check(m.ks && m.wd && m.rc, t + "numeric metric missing");
    if (is_categorical(f.kind)) c.check(m.css && m.cc, t + "categorical metric missing");
  }
  const auto& d = rep.globals.dependency;
  for (auto [name, v] : {std::pair{"CMS", d.cms}, {"CMD", d.cmd}, {"CDP", d.cdp}, {"CDS", d.cds}}) {
    c.check(v.has_value(), std::string(name) + " missing");
    if (v) c.near(name, *v, 0.0, 1e-9);
  }
  const auto n_cat = rep.metadata.binary_features + rep.metadata.multi_features;
  if (n_cat >= 2) {
    c.check(d.mid.has_value(), "MID missing with >= 2 categorical features");
    if (d.mid) c.near("MID", *d.mid, 0.0, 1e-9);
  } else {
    c.check(!d.mid.has_value(), "MID should be null");
  }
  c.check(rep.globals.structural.has_value(), "structural block missing");
  if (const auto& s = rep.globals.structural) {
    c.near("CKA", s->cka, 1.0, 1e-9);
    c.near("AWED", s->awed, 0.0, 1e-12);
    c.check(s->neighborhood_overlap == 1.0, "NO = " + detail::fmt(s->neighborhood_overlap) + ", want 1");
    c.check(s->spectral_distance <= 1e-8, "SD = " + detail::fmt(s->spectral_distance) + ", want <= 1e-8");
    c.near("GSFS", s->gsfs, 1.0, 1e-9);
  }
  return r;
}

}  // namespace suites
