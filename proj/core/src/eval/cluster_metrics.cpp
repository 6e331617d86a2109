#include "collabrec/eval/cluster_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "collabrec/error.hpp"

namespace collabrec::eval {
namespace {

std::map<int, std::vector<std::size_t>> members_by_label(std::span<const int> labels) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  return groups;
}

void check_size(const simcluster::SimilarityMatrix& sim, std::span<const int> labels) {
  if (sim.size() != labels.size()) throw validation_error("labels do not match the similarity matrix");
}

}  // namespace

double intra_cluster_similarity(const simcluster::SimilarityMatrix& sim, std::span<const int> labels) {
  check_size(sim, labels);
  double total = 0.0;
  std::size_t clusters = 0;
  for (const auto& [label, members] : members_by_label(labels)) {
    if (members.size() < 2) continue;
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        sum += sim(members[x], members[y]);
        ++pairs;
      }
    }
    total += sum / static_cast<double>(pairs);
    ++clusters;
  }
  if (clusters == 0) throw validation_error("intra-cluster similarity: every cluster is a singleton");
  return total / static_cast<double>(clusters);
}

double silhouette(const simcluster::SimilarityMatrix& sim, std::span<const int> labels) {
  check_size(sim, labels);
  const auto groups = members_by_label(labels);
  if (groups.size() < 2) throw validation_error("silhouette: needs at least two clusters");

  const std::size_t n = labels.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& own = groups.at(labels[i]);
    if (own.size() < 2) continue;  // singleton scores 0

    double a = 0.0;
    for (std::size_t j : own) {
      if (j != i) a += 1.0 - sim(i, j);
    }
    a /= static_cast<double>(own.size() - 1);

    double b = std::numeric_limits<double>::infinity();
    for (const auto& [label, members] : groups) {
      if (label == labels[i]) continue;
      double d = 0.0;
      for (std::size_t j : members) d += 1.0 - sim(i, j);
      b = std::min(b, d / static_cast<double>(members.size()));
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

double davies_bouldin(std::span<const std::vector<double>> vectors, std::span<const int> labels,
                      const DaviesBouldinOptions& options) {
  if (vectors.size() != labels.size()) throw validation_error("davies-bouldin: labels do not match vectors");
  const auto groups = members_by_label(labels);
  if (groups.size() < 2) throw validation_error("davies-bouldin: needs at least two clusters");
  const std::size_t dim = vectors.empty() ? 0 : vectors[0].size();

  std::vector<std::vector<double>> points(vectors.begin(), vectors.end());
  for (auto& p : points) {
    if (p.size() != dim) throw validation_error("davies-bouldin: vectors differ in dimension");
    if (!options.normalize) continue;
    double len = 0.0;
    for (double v : p) len += v * v;
    len = std::sqrt(len);
    if (len > 0.0) {
      for (double& v : p) v /= len;
    }
  }

  auto distance = [](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
  };

  std::vector<std::vector<double>> centroids;
  std::vector<double> scatter;
  for (const auto& [label, members] : groups) {
    std::vector<double> c(dim, 0.0);
    for (std::size_t m : members) {
      for (std::size_t d = 0; d < dim; ++d) c[d] += points[m][d];
    }
    for (double& v : c) v /= static_cast<double>(members.size());
    double s = 0.0;
    for (std::size_t m : members) s += distance(points[m], c);
    scatter.push_back(s / static_cast<double>(members.size()));
    centroids.push_back(std::move(c));
  }

  const std::size_t k = centroids.size();
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const double sep = distance(centroids[i], centroids[j]);
      if (sep == 0.0) throw validation_error("davies-bouldin: two clusters share a centroid");
      worst = std::max(worst, (scatter[i] + scatter[j]) / sep);
    }
    total += worst;
  }
  return total / static_cast<double>(k);
}

}  // namespace collabrec::eval
