#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fidelity/dependency.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fidelity;

namespace {

using V = std::vector<double>;
using S = std::vector<std::string>;

Eigen::MatrixXd corr2(double r) {
  Eigen::MatrixXd m(2, 2);
  m << 1, r, r, 1;
  return m;
}

AlignedPair pair_of(const DataTable& real, const DataTable& synth) { return align(real, synth, RunConfig{}); }

}  // namespace

TEST(Ranks, AverageTies) {
  EXPECT_EQ(average_ranks(V{10, 20, 20, 5}), (V{2, 3.5, 3.5, 1}));
  EXPECT_EQ(average_ranks(V{1, 1, 1}), (V{2, 2, 2}));
}

TEST(CovFrobenius, Examples) {
  const Eigen::MatrixXd i2 = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_DOUBLE_EQ(cov_frobenius(i2, i2), 0.0);
  EXPECT_NEAR(cov_frobenius(i2, 2 * i2), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(cov_frobenius(i2, Eigen::MatrixXd::Identity(3, 3)), MetricError);
}

TEST(CovFrobenius, MatchesElementwiseSumOnRandom3x3) {
  gen::Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd a(3, 3), b(3, 3);
    oracle::Mat oa(3, V(3)), ob(3, V(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) oa[i][j] = a(i, j) = rng.normal(), ob[i][j] = b(i, j) = rng.normal();
    EXPECT_NEAR(cov_frobenius(a, b), oracle::frobenius_diff(oa, ob), 1e-12);
  }
}

TEST(CovFrobenius, SymmetricAndTriangle) {
  gen::Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Random(4, 4), b = Eigen::MatrixXd::Random(4, 4), c = Eigen::MatrixXd::Random(4, 4);
    EXPECT_DOUBLE_EQ(cov_frobenius(a, b), cov_frobenius(b, a));
    EXPECT_LE(cov_frobenius(a, c), cov_frobenius(a, b) + cov_frobenius(b, c) + 1e-12);
  }
}

TEST(CorrMatrixDistance, ClosedForm) {
  EXPECT_DOUBLE_EQ(corr_matrix_distance(corr2(0.3), corr2(0.3)), 0.0);
  // sqrt(2 * 0.64) / sqrt(2 + 2 * 0.64)
  EXPECT_NEAR(corr_matrix_distance(corr2(0.8), corr2(0.0)), 0.62470, 1e-5);
}

TEST(CorrelationDifference, SinglePair) {
  EXPECT_NEAR(*correlation_difference(corr2(0.9), corr2(0.4)), 0.5, 1e-15);
  EXPECT_FALSE(correlation_difference(Eigen::MatrixXd::Identity(1, 1), Eigen::MatrixXd::Identity(1, 1)).has_value());
}

TEST(MatrixStats, InvariantsOnPima) {
  const auto t = fixtures::pima();
  const auto s = compute_matrix_stats(pair_of(t, t));
  EXPECT_EQ(s.dim(), 8u);
  for (const auto* m : {&s.corr_pearson_real, &s.corr_spearman_real}) {
    EXPECT_LT(((*m) - m->transpose()).cwiseAbs().maxCoeff(), 1e-10);
    for (Eigen::Index i = 0; i < m->rows(); ++i) EXPECT_DOUBLE_EQ((*m)(i, i), 1.0);
    EXPECT_LE(m->cwiseAbs().maxCoeff(), 1.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.cov_real);
  EXPECT_GT(es.eigenvalues().minCoeff(), -1e-8);
}

TEST(MatrixStats, ScalingAFeatureLeavesCmdUnchanged) {
  gen::Rng rng(8);
  const auto a = gen::normal_sample(rng, 80), b = gen::normal_sample(rng, 80);
  V a2 = gen::normal_sample(rng, 80), b2 = b;
  for (std::size_t i = 0; i < a.size(); ++i) b2[i] = b[i] + 0.5 * a[i];
  auto table = [](const V& x, const V& y) {
    return DataTable({gen::numeric_column("x", x), gen::numeric_column("y", y)}, x.size());
  };
  V a5 = a, a25 = a2;
  for (auto& v : a5) v *= 5;
  for (auto& v : a25) v *= 5;
  const auto s1 = compute_matrix_stats(pair_of(table(a, b), table(a2, b2)));
  const auto s2 = compute_matrix_stats(pair_of(table(a5, b), table(a25, b2)));
  EXPECT_NEAR(corr_matrix_distance(s1.corr_pearson_real, s1.corr_pearson_synth),
              corr_matrix_distance(s2.corr_pearson_real, s2.corr_pearson_synth), 1e-12);
}

TEST(MatrixStats, SpearmanInvariantUnderMonotoneTransform) {
  gen::Rng rng(9);
  const auto a = gen::normal_sample(rng, 60), b = gen::normal_sample(rng, 60);
  const auto c = gen::normal_sample(rng, 70), d = gen::normal_sample(rng, 70);
  auto table = [](const V& x, const V& y) {
    return DataTable({gen::numeric_column("x", x), gen::numeric_column("y", y)}, x.size());
  };
  auto expo = [](V v) {
    for (auto& x : v) x = std::exp(x);
    return v;
  };
  const auto base = compute_matrix_stats(pair_of(table(a, b), table(c, d)));
  const auto moved = compute_matrix_stats(pair_of(table(expo(a), b), table(expo(c), d)));
  EXPECT_NEAR(*correlation_difference(CorrelationKind::Spearman, base),
              *correlation_difference(CorrelationKind::Spearman, moved), 1e-12);
}

TEST(MutualInformation, IndependentAndCoupled) {
  const S x{"0", "0", "1", "1"}, y{"0", "1", "0", "1"};
  EXPECT_NEAR(mutual_information(x, y), 0.0, 1e-15);
  EXPECT_NEAR(mutual_information(x, x), std::numbers::ln2, 1e-15);
  EXPECT_THROW(mutual_information(x, S{"a"}), MetricError);
}

TEST(MutualInformation, SymmetricAndNonNegative) {
  gen::Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    const auto n = 5 + rng.index(60);
    const auto a = gen::category_sample(rng, n, 1 + rng.index(5)), b = gen::category_sample(rng, n, 1 + rng.index(5));
    const double ab = mutual_information(a, b);
    EXPECT_GE(ab, 0.0);
    EXPECT_NEAR(ab, mutual_information(b, a), 1e-12);
  }
}

TEST(Mid, IndependentVersusCoupledPairs) {
  const auto real = parse_csv("a,b\nx,p\nx,q\ny,p\ny,q\n");
  const auto synth = parse_csv("a,b\nx,p\nx,p\ny,q\ny,q\n");
  EXPECT_NEAR(*mutual_information_difference(pair_of(real, synth)), std::numbers::ln2, 1e-15);
}

TEST(Mid, NullBelowTwoDiscreteFeatures) {
  const auto t = fixtures::pima();
  EXPECT_FALSE(mutual_information_difference(pair_of(t, t)).has_value());
}

TEST(Mid, ZeroOnIdenticalTables) {
  const auto t = parse_csv("a,b,c\nx,p,1\nx,q,2\ny,p,1\ny,p,3\n");
  EXPECT_DOUBLE_EQ(*mutual_information_difference(pair_of(t, t)), 0.0);
}

TEST(DependencyMetrics, IdentityOnPima) {
  const auto t = fixtures::pima();
  const auto pair = pair_of(t, t);
  const auto m = dependency_metrics(pair, compute_matrix_stats(pair));
  EXPECT_EQ(*m.cms, 0.0);
  EXPECT_EQ(*m.cmd, 0.0);
  EXPECT_EQ(*m.cdp, 0.0);
  EXPECT_EQ(*m.cds, 0.0);
  EXPECT_FALSE(m.mid.has_value());
}

TEST(DependencyMetrics, MissingCellsDroppedPairwise) {
  const auto real = parse_csv("a,b,c\n1.5,2.5,1.25\n2.5,,2.75\n3.5,4.5,3.25\n4.5,3.5,\n5.5,6.5,5.75\n");
  const auto pair = pair_of(real, real);
  const auto s = compute_matrix_stats(pair);
  // a and b are both present on rows 0, 2, 3, 4.
  EXPECT_NEAR(s.cov_real(0, 1), oracle::cov({1.5, 3.5, 4.5, 5.5}, {2.5, 4.5, 3.5, 6.5}), 1e-12);
  EXPECT_NEAR(s.corr_pearson_real(0, 2), oracle::pearson({1.5, 2.5, 3.5, 5.5}, {1.25, 2.75, 3.25, 5.75}), 1e-12);
}
