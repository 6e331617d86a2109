#include "collabrec/simcluster/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "collabrec/error.hpp"

namespace collabrec::simcluster {

double cosine_similarity(const Representation& a, const Representation& b) {
  if (a.index() != b.index()) throw validation_error("cosine: mixed vector representations");
  if (vectorize::dimension(a) != vectorize::dimension(b)) {
    throw validation_error("cosine: vectors differ in dimension");
  }
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        const double nx = std::sqrt(vectorize::dot(x, x));
        const double ny = std::sqrt(vectorize::dot(y, y));
        if (nx == 0.0 || ny == 0.0) return 0.0;
        return vectorize::dot(x, y) / (nx * ny);
      },
      a);
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw validation_error("cosine: vectors differ in dimension");
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

SimilarityMatrix similarity_matrix(std::span<const Representation> vectors, Technique technique) {
  const std::size_t n = vectors.size();
  if (n < 2) throw validation_error("similarity matrix needs at least two vectors");
  for (std::size_t i = 1; i < n; ++i) {
    if (vectors[i].index() != vectors[0].index()) {
      throw validation_error("similarity matrix: mixed representations at index " + std::to_string(i));
    }
  }

  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = vectorize::norm(vectors[i]);

  SimilarityMatrix sim(n, technique);
  for (std::size_t i = 0; i < n; ++i) {
    if (norms[i] == 0.0) {
      sim.mark_degenerate(i);
      continue;
    }
    sim(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (norms[j] == 0.0) continue;
      const double d = std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            return vectorize::dot(x, std::get<T>(vectors[j]));
          },
          vectors[i]);
      const double c = std::clamp(d / (norms[i] * norms[j]), -1.0, 1.0);
      sim(i, j) = c;
      sim(j, i) = c;
    }
  }
  return sim;
}

}  // namespace collabrec::simcluster
