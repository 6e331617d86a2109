#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "collabrec/error.hpp"
#include "collabrec/simcluster/affinity.hpp"
#include "collabrec/simcluster/export.hpp"
#include "collabrec/simcluster/projection.hpp"
#include "collabrec/simcluster/relabel.hpp"
#include "collabrec/simcluster/similarity.hpp"
#include "oracles.hpp"

using namespace collabrec;
using namespace collabrec::simcluster;
using vectorize::DenseVector;
using vectorize::Representation;

namespace {

SimilarityMatrix from(const oracle::Matrix& m) {
  SimilarityMatrix s(m.size(), Technique::embedding);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) s(i, j) = m[i][j];
  return s;
}

std::vector<Representation> dense(const oracle::Matrix& rows) {
  std::vector<Representation> out;
  for (const auto& r : rows) out.emplace_back(DenseVector{r});
  return out;
}

void check_assignment_invariants(const ClusterAssignment& a, std::size_t n) {
  ASSERT_EQ(a.labels.size(), n);
  ASSERT_GE(a.n_clusters, 1);
  EXPECT_EQ(a.n_clusters, static_cast<int>(a.exemplars.size()));
  const std::set<int> ex(a.exemplars.begin(), a.exemplars.end());
  for (int l : a.labels) EXPECT_TRUE(ex.contains(l));
  for (int e : a.exemplars) EXPECT_EQ(a.labels[e], e);
  EXPECT_TRUE(std::is_sorted(a.exemplars.begin(), a.exemplars.end()));
}

}  // namespace

TEST(Cosine, HandValues) {
  const std::vector<double> a{1, 1}, b{1, 0}, c{0, 1};
  EXPECT_NEAR(cosine_similarity(a, b), 0.70711, 1e-5);
  EXPECT_EQ(cosine_similarity(b, c), 0.0);
  EXPECT_NEAR(cosine_similarity(a, a), 1.0, 1e-15);
  const std::vector<double> z{0, 0};
  EXPECT_EQ(cosine_similarity(z, a), 0.0);
  EXPECT_EQ(cosine_similarity(z, z), 0.0);
}

TEST(Cosine, MixedKindsRejected) {
  const Representation d = DenseVector{{1.0}};
  const Representation s = vectorize::SparseVector{{{0, 1.0}}, 1};
  EXPECT_THROW(cosine_similarity(d, s), Error);
  const Representation d2 = DenseVector{{1.0, 2.0}};
  EXPECT_THROW(cosine_similarity(d, d2), Error);
}

TEST(SimilarityMatrix, OneHotIsIdentityAndDuplicatesAreOnes) {
  const auto m = similarity_matrix(dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), Technique::embedding);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m(i, j), i == j ? 1.0 : 0.0);
  const auto d = similarity_matrix(dense({{0.3, 0.4}, {0.3, 0.4}}), Technique::embedding);
  for (double v : d.values()) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(SimilarityMatrix, SymmetricUnitDiagonalBounded) {
  oracle::Random rng(5);
  oracle::Matrix rows(30, std::vector<double>(7));
  for (auto& r : rows)
    for (auto& x : r) x = rng.normal();
  const auto m = similarity_matrix(dense(rows), Technique::embedding);
  for (std::size_t i = 0; i < 30; ++i) {
    EXPECT_NEAR(m(i, i), 1.0, 1e-9);
    for (std::size_t j = 0; j < 30; ++j) {
      EXPECT_NEAR(m(i, j), m(j, i), 1e-9);
      EXPECT_LE(std::abs(m(i, j)), 1.0);
    }
  }
}

TEST(SimilarityMatrix, Errors) {
  EXPECT_THROW(similarity_matrix(dense({{1, 0}}), Technique::embedding), Error);
  std::vector<Representation> mixed = dense({{1, 0}});
  mixed.emplace_back(vectorize::SparseVector{{{0, 1.0}}, 2});
  EXPECT_THROW(similarity_matrix(mixed, Technique::embedding), Error);
}

TEST(SimilarityMatrix, ZeroVectorRowIsZeroAndFlagged) {
  const auto m = similarity_matrix(dense({{0, 0}, {1, 0}, {1, 1}}), Technique::embedding);
  EXPECT_EQ(m(0, 0), 0.0);
  EXPECT_EQ(m(0, 1), 0.0);
  EXPECT_EQ(m.degenerate_rows(), (std::vector<std::size_t>{0}));
}

TEST(AffinityPropagation, SingleProfile) {
  SimilarityMatrix s(1, Technique::tfidf);
  s(0, 0) = 1.0;
  const auto a = affinity_propagation(s);
  EXPECT_EQ(a.n_clusters, 1);
  EXPECT_EQ(a.exemplars, (std::vector<int>{0}));
}

TEST(AffinityPropagation, DuplicatePairsGiveTwoClusters) {
  const auto s = from({{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}});
  const auto a = affinity_propagation(s);
  check_assignment_invariants(a, 4);
  EXPECT_EQ(a.n_clusters, 2);
  EXPECT_EQ(a.labels[0], a.labels[1]);
  EXPECT_EQ(a.labels[2], a.labels[3]);
  EXPECT_NE(a.labels[0], a.labels[2]);
}

TEST(AffinityPropagation, AllEqualGivesOneExemplar) {
  oracle::Matrix m(5, std::vector<double>(5, 0.3));
  for (std::size_t i = 0; i < 5; ++i) m[i][i] = 1.0;
  const auto a = affinity_propagation(from(m));
  check_assignment_invariants(a, 5);
  EXPECT_EQ(a.n_clusters, 1);
  AffinityOptions high;
  high.preference = 0.9;
  EXPECT_EQ(affinity_propagation(from(m), high).n_clusters, 5);
}

TEST(AffinityPropagation, TwoBlobsRecovered) {
  oracle::Random rng(11);
  oracle::Matrix rows;
  for (int i = 0; i < 20; ++i) {
    const double base = i < 10 ? 0.0 : 3.0;
    rows.push_back({std::cos(base) + 0.05 * rng.normal(), std::sin(base) + 0.05 * rng.normal(), 0.05 * rng.normal()});
  }
  const auto a = affinity_propagation(similarity_matrix(dense(rows), Technique::embedding));
  check_assignment_invariants(a, 20);
  EXPECT_EQ(a.n_clusters, 2);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a.labels[i] == a.labels[0], i < 10) << i;
  EXPECT_TRUE(a.converged);
}

TEST(AffinityPropagation, MatchesReferenceOnFixtures) {
  for (const auto& f : oracle::ap_fixtures()) {
    AffinityOptions o;
    o.damping = f.damping;
    o.max_iter = f.max_iter;
    o.convergence_iter = f.convergence_iter;
    o.preference = f.preference;
    const auto mine = affinity_propagation(from(f.s), o);
    const auto ref = oracle::affinity_propagation(f.s, f.preference, f.damping, f.max_iter, f.convergence_iter);
    check_assignment_invariants(mine, f.s.size());
    EXPECT_EQ(mine.exemplars, ref.exemplars) << f.name;
    EXPECT_EQ(mine.labels, ref.labels) << f.name;
  }
}

TEST(AffinityPropagation, PermutationEquivariance) {
  for (const auto& f : oracle::ap_fixtures()) {
    if (!f.all_distinct) continue;
    const std::size_t n = f.s.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    oracle::Random rng(n * 31 + 1);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.next() % i]);
    oracle::Matrix p(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p[i][j] = f.s[perm[i]][perm[j]];
    AffinityOptions o;
    o.damping = f.damping;
    o.max_iter = f.max_iter;
    o.convergence_iter = f.convergence_iter;
    o.preference = f.preference;
    const auto base = affinity_propagation(from(f.s), o);
    const auto permuted = affinity_propagation(from(p), o);
    std::set<int> mapped;
    for (int e : permuted.exemplars) mapped.insert(static_cast<int>(perm[e]));
    EXPECT_EQ(mapped, std::set<int>(base.exemplars.begin(), base.exemplars.end())) << f.name;
  }
}

TEST(AffinityPropagation, PreferenceMonotoneOnFixtures) {
  for (const auto& f : oracle::ap_fixtures()) {
    if (!f.all_distinct) continue;
    const double med = oracle::median_off_diagonal(f.s);
    int previous = 0;
    for (double p : {med - 0.5, med - 0.2, med, med + 0.2}) {
      AffinityOptions o;
      o.preference = p;
      o.damping = 0.7;
      o.max_iter = 400;
      const int k = affinity_propagation(from(f.s), o).n_clusters;
      EXPECT_GE(k, previous) << f.name << " preference " << p;
      previous = k;
    }
  }
}

TEST(AffinityPropagation, NonConvergenceIsFlaggedNotThrown) {
  const auto f = oracle::ap_fixtures()[4];
  AffinityOptions o;
  o.max_iter = 2;
  const auto a = affinity_propagation(from(f.s), o);
  EXPECT_FALSE(a.converged);
  EXPECT_EQ(a.iterations_run, 2);
  check_assignment_invariants(a, f.s.size());
}

TEST(AffinityPropagation, RejectsBadDamping) {
  AffinityOptions o;
  o.damping = 0.3;
  EXPECT_THROW(affinity_propagation(from({{1, 0}, {0, 1}}), o), Error);
  o.damping = 1.0;
  EXPECT_THROW(affinity_propagation(from({{1, 0}, {0, 1}}), o), Error);
}

TEST(AffinityPropagation, MedianPreference) {
  EXPECT_DOUBLE_EQ(median_preference(from({{1, 0.2, 0.4}, {0.2, 1, 0.6}, {0.4, 0.6, 1}})), 0.4);
}

TEST(Relabel, DenseFirstAppearance) {
  EXPECT_EQ(dense_labels(std::vector<int>{5, 5, 9}), (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(dense_labels(std::vector<int>{3, 3, 3}), (std::vector<int>{0, 0, 0}));
  EXPECT_EQ(dense_labels(std::vector<int>{7, 2, 7, 4}), (std::vector<int>{0, 1, 0, 2}));
  ClusterAssignment a;
  a.labels = {1, 1};
  a.exemplars = {1};
  a.n_clusters = 1;
  std::vector<corpus::Profile> three(3);
  EXPECT_THROW(relabel(three, a), Error);
  std::vector<corpus::Profile> two(2);
  const auto out = relabel(two, a);
  EXPECT_EQ(out[1].cluster, 0);
}

TEST(Projection, IdenticalRowsAtOrigin) {
  const std::vector<std::vector<double>> rows(4, std::vector<double>{1, 2, 3});
  const auto p = project_2d(rows);
  EXPECT_TRUE(p.degenerate);
  ASSERT_EQ(p.points.size(), 4u);
  for (const auto& pt : p.points) EXPECT_EQ(pt, (std::array<double, 2>{0, 0}));
}

TEST(Projection, CollinearPointsHaveZeroSecondCoordinate) {
  std::vector<std::vector<double>> rows;
  const std::vector<double> dir{0.3, -1.0, 2.0, 0.5, 0.1};
  for (int t = 0; t < 9; ++t) {
    std::vector<double> r(5);
    for (int d = 0; d < 5; ++d) r[d] = 1.0 + (t - 3) * 0.7 * dir[d];
    rows.push_back(r);
  }
  const auto p = project_2d(rows);
  EXPECT_FALSE(p.degenerate);
  for (const auto& pt : p.points) EXPECT_NEAR(pt[1], 0.0, 1e-6);
  // First coordinate preserves distances along the line.
  EXPECT_NEAR(std::abs(p.points[1][0] - p.points[0][0]), 0.7 * std::sqrt(0.09 + 1 + 4 + 0.25 + 0.01), 1e-9);
}

TEST(Projection, WideInputUsesGramPathAndIsCentred) {
  oracle::Random rng(3);
  std::vector<std::vector<double>> rows(5, std::vector<double>(40));
  for (auto& r : rows)
    for (auto& x : r) x = rng.normal();
  const auto p = project_2d(rows);
  double sx = 0, sy = 0;
  for (const auto& pt : p.points) {
    sx += pt[0];
    sy += pt[1];
  }
  EXPECT_NEAR(sx, 0.0, 1e-9);
  EXPECT_NEAR(sy, 0.0, 1e-9);
  EXPECT_THROW(project_2d(std::vector<std::vector<double>>{{1.0}}), Error);
}

TEST(Export, JsonAndCsvShapes) {
  const auto m = from({{1, 0.5}, {0.5, 1}});
  const std::vector<std::string> ids{"a", "b"};
  const auto j = to_json(m, ids);
  EXPECT_EQ(j.at("n"), 2);
  EXPECT_EQ(j.at("matrix")[0][1], 0.5);
  ClusterAssignment a;
  a.labels = {0, 0};
  a.exemplars = {0};
  a.n_clusters = 1;
  a.converged = true;
  const auto ja = to_json(a);
  EXPECT_EQ(ja.at("labels"), nlohmann::json::array({0, 0}));
  EXPECT_EQ(ja.at("converged"), true);
  Projection p;
  p.points = {{0.5, -1.0}, {-0.5, 1.0}};
  std::ostringstream out;
  const std::vector<int> clusters{0, 0};
  write_coordinates_csv(out, ids, p, clusters);
  EXPECT_EQ(out.str().substr(0, 14), "id,x,y,cluster");
}
