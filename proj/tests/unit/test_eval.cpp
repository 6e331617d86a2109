#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "collabrec/error.hpp"
#include "collabrec/eval/cluster_metrics.hpp"
#include "collabrec/eval/ranking.hpp"
#include "collabrec/eval/relevance.hpp"
#include "collabrec/eval/report.hpp"
#include "oracles.hpp"

using namespace collabrec;
using namespace collabrec::eval;
using simcluster::SimilarityMatrix;

namespace {

SimilarityMatrix from(const oracle::Matrix& m) {
  SimilarityMatrix s(m.size(), vectorize::Technique::embedding);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) s(i, j) = m[i][j];
  return s;
}

corpus::Profile person(std::string id, std::string domain, std::string skills) {
  corpus::Profile p;
  p.id = std::move(id);
  p.email = p.id + "@example.org";
  p.domain = std::move(domain);
  p.skillset = std::move(skills);
  return p;
}

}  // namespace

TEST(Ndcg, HandExample) {
  const std::vector<int> g{0, 3};
  EXPECT_NEAR(dcg(g, 5), 7.0 / std::log2(3.0), 1e-12);
  EXPECT_NEAR(ndcg_at(g, 5), 0.63093, 1e-5);
  const std::vector<int> ideal{3, 2, 0};
  EXPECT_DOUBLE_EQ(ndcg_at(ideal, 5), 1.0);
  const std::vector<int> zeros{0, 0, 0};
  EXPECT_EQ(ndcg_at(zeros, 5), 0.0);
  EXPECT_THROW(ndcg_at(std::vector<int>{}, 5), Error);
  EXPECT_THROW(ndcg_at(g, 0), Error);
}

TEST(Ndcg, MatchesExhaustiveIdeal) {
  oracle::Random rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = 1 + rng.next() % 7;
    std::vector<int> g(len);
    for (auto& x : g) x = static_cast<int>(rng.next() % 4);
    for (std::size_t depth : {1u, 3u, 5u, 10u}) {
      EXPECT_NEAR(ndcg_at(g, depth), oracle::ndcg_exhaustive(g, depth), 1e-12);
      EXPECT_NEAR(dcg(g, depth), oracle::dcg(g, depth), 1e-12);
      const double v = ndcg_at(g, depth);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
  }
}

TEST(Ndcg, MeanCountsZeroQueriesAsZero) {
  const std::vector<std::vector<int>> q{{3, 0}, {0, 0}};
  EXPECT_DOUBLE_EQ(ndcg(q, 5), 0.5);
}

TEST(AveragePrecision, HandExamples) {
  BinaryRanking r{{true, false, true}, std::nullopt};
  EXPECT_NEAR(*average_precision(r), 0.83333, 1e-5);
  EXPECT_NEAR(*average_precision(r), 0.5 * (1.0 + 2.0 / 3.0), 1e-15);
  BinaryRanking none{{false, false}, std::nullopt};
  EXPECT_FALSE(average_precision(none).has_value());
  // Relevant items missing from a truncated list still count in m.
  BinaryRanking truncated{{true, false}, 4};
  EXPECT_DOUBLE_EQ(*average_precision(truncated), 0.25);
}

TEST(AveragePrecision, MatchesPrecisionRecallArea) {
  oracle::Random rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t len = 1 + rng.next() % 12;
    std::vector<bool> rel(len);
    for (std::size_t i = 0; i < len; ++i) rel[i] = rng.uniform() < 0.4;
    const BinaryRanking r{rel, std::nullopt};
    const auto mine = average_precision(r);
    const auto ref = oracle::average_precision_pr(rel, r.relevant_count());
    ASSERT_EQ(mine.has_value(), ref.has_value());
    if (mine) EXPECT_NEAR(*mine, *ref, 1e-12);
  }
}

TEST(MeanAveragePrecision, OuterMeanAndExclusion) {
  const std::vector<BinaryRanking> q{{{true}, std::nullopt}, {{false, true}, std::nullopt}, {{false}, std::nullopt}};
  const auto m = mean_average_precision(q);
  EXPECT_DOUBLE_EQ(m.value, 0.75);
  EXPECT_EQ(m.evaluated, 2u);
  EXPECT_EQ(m.excluded, 1u);
  const std::vector<BinaryRanking> empty{{{false}, std::nullopt}};
  EXPECT_THROW(mean_average_precision(empty), Error);
}

TEST(Relevance, GradesAndOracle) {
  EXPECT_EQ(grade_for(0.6), 3);
  EXPECT_EQ(grade_for(0.59), 2);
  EXPECT_EQ(grade_for(0.4), 2);
  EXPECT_EQ(grade_for(0.2), 1);
  EXPECT_EQ(grade_for(0.19), 0);
  EXPECT_DOUBLE_EQ(jaccard({"a", "b"}, {"b", "c"}), 1.0 / 3.0);
  EXPECT_EQ(jaccard({}, {}), 0.0);

  const auto stop = corpus::StopWords::english();
  const auto q = person("q", "Data Science", "python, statistics");
  const auto same = person("c1", "data science", "Python, Statistics");
  const auto other = person("c2", "Robotics", "ROS, welding");
  const auto j1 = relevance_oracle(q, same, stop);
  EXPECT_DOUBLE_EQ(j1.jaccard, 1.0);
  EXPECT_EQ(j1.grade, 3);
  EXPECT_TRUE(j1.binary_relevant);
  const auto j2 = relevance_oracle(q, other, stop);
  EXPECT_EQ(j2.grade, 0);
  EXPECT_FALSE(j2.binary_relevant);
  EXPECT_THROW(relevance_oracle(q, q, stop), Error);
}

TEST(IntraCluster, HandExamples) {
  const std::vector<int> one{0, 0};
  EXPECT_DOUBLE_EQ(intra_cluster_similarity(from({{1, 0.8}, {0.8, 1}}), one), 0.8);
  const auto s = from({{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 0.6}, {0, 0, 0.6, 1}});
  const std::vector<int> two{0, 0, 1, 1};
  EXPECT_NEAR(intra_cluster_similarity(s, two), 0.8, 1e-12);
  const std::vector<int> singletons{0, 1, 2, 3};
  EXPECT_THROW(intra_cluster_similarity(s, singletons), Error);
}

TEST(Silhouette, DuplicatePairsScoreOne) {
  const auto s = from({{1, 1, 0.1, 0.1}, {1, 1, 0.1, 0.1}, {0.1, 0.1, 1, 1}, {0.1, 0.1, 1, 1}});
  const std::vector<int> labels{0, 0, 1, 1};
  EXPECT_NEAR(silhouette(s, labels), 1.0, 1e-9);
  EXPECT_THROW(silhouette(s, std::vector<int>{0, 0, 0, 0}), Error);
}

TEST(Silhouette, BoundedAndSingletonsScoreZero) {
  oracle::Random rng(41);
  oracle::Matrix rows(25, std::vector<double>(4));
  for (auto& r : rows)
    for (auto& x : r) x = rng.normal();
  const auto s = from(oracle::cosine_matrix(rows));
  std::vector<int> labels(25);
  for (int i = 0; i < 25; ++i) labels[i] = static_cast<int>(rng.next() % 4);
  const double v = silhouette(s, labels);
  EXPECT_GE(v, -1.0);
  EXPECT_LE(v, 1.0);
  const auto tiny = from({{1, 0.2, 0.1}, {0.2, 1, 0.9}, {0.1, 0.9, 1}});
  // Point 0 is a singleton; points 1 and 2: a = 0.1, b = 0.8 and 0.9.
  const double expected = (0.0 + (0.8 - 0.1) / 0.8 + (0.9 - 0.1) / 0.9) / 3.0;
  EXPECT_NEAR(silhouette(tiny, std::vector<int>{0, 1, 1}), expected, 1e-12);
}

TEST(Silhouette, InvariantUnderRenumbering) {
  oracle::Random rng(43);
  oracle::Matrix rows(20, std::vector<double>(3));
  for (auto& r : rows)
    for (auto& x : r) x = rng.normal();
  const auto s = from(oracle::cosine_matrix(rows));
  std::vector<int> labels(20), renamed(20);
  for (int i = 0; i < 20; ++i) {
    labels[i] = i % 3;
    renamed[i] = std::vector<int>{17, 4, 9}[i % 3];
  }
  EXPECT_NEAR(silhouette(s, labels), silhouette(s, renamed), 1e-12);
  EXPECT_NEAR(intra_cluster_similarity(s, labels), intra_cluster_similarity(s, renamed), 1e-12);
}

TEST(DaviesBouldin, HandFixtures) {
  const std::vector<std::vector<double>> v{{0.0}, {0.2}, {1.0}, {1.2}};
  const std::vector<int> labels{0, 0, 1, 1};
  DaviesBouldinOptions raw;
  raw.normalize = false;
  EXPECT_NEAR(davies_bouldin(v, labels, raw), 0.2, 1e-9);
  const std::vector<std::vector<double>> tight{{1, 0}, {1, 0}, {0, 1}, {0, 1}};
  EXPECT_NEAR(davies_bouldin(tight, labels), 0.0, 1e-12);
  EXPECT_THROW(davies_bouldin(v, std::vector<int>{0, 0, 0, 0}, raw), Error);
  const std::vector<std::vector<double>> shared{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  EXPECT_THROW(davies_bouldin(shared, labels, raw), Error);
}

TEST(DaviesBouldin, RotationAndRenumberingInvariance) {
  const std::size_t d = 6;
  oracle::Random rng(47);
  std::vector<std::vector<double>> v(30, std::vector<double>(d));
  std::vector<int> labels(30), renamed(30);
  for (int i = 0; i < 30; ++i) {
    for (auto& x : v[i]) x = rng.normal() + (i % 3) * 2.0;
    labels[i] = i % 3;
    renamed[i] = 2 - i % 3;
  }
  const auto q = oracle::random_orthogonal(d, 99);
  std::vector<std::vector<double>> rotated(30, std::vector<double>(d, 0.0));
  for (int i = 0; i < 30; ++i)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) rotated[i][r] += q[r][c] * v[i][c];
  const double base = davies_bouldin(v, labels);
  EXPECT_NEAR(davies_bouldin(rotated, labels), base, 1e-7);
  EXPECT_NEAR(davies_bouldin(v, renamed), base, 1e-12);
  DaviesBouldinOptions raw;
  raw.normalize = false;
  EXPECT_NEAR(davies_bouldin(rotated, labels, raw), davies_bouldin(v, labels, raw), 1e-7);
}

TEST(Report, TableLayout) {
  MetricsReport report;
  MethodMetrics a;
  a.technique = vectorize::Technique::tfidf;
  a.davies_bouldin = 1.23456;
  a.ndcg = 0.5;
  MethodMetrics b;
  b.technique = vectorize::Technique::hybrid;
  report.methods = {a, b};
  const auto text = format_table(report);
  EXPECT_NE(text.find("Davies-Bouldin"), std::string::npos);
  EXPECT_NE(text.find("1.2346"), std::string::npos);
  EXPECT_NE(text.find("n/a"), std::string::npos);
  EXPECT_LT(text.find("Silhouette"), text.find("mAP"));
  const auto j = to_json(report);
  EXPECT_EQ(j.at("methods").size(), 2u);
  EXPECT_TRUE(j.at("methods")[1].at("ndcg").is_null());
  EXPECT_EQ(j.at("table").size(), 5u);
}
