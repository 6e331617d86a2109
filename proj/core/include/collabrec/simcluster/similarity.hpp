#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "collabrec/vectorize/representation.hpp"

namespace collabrec::simcluster {

using vectorize::Representation;
using vectorize::Technique;

/// Dense symmetric n x n matrix of pairwise cosine similarities.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(std::size_t n, Technique technique)
      : n_(n), technique_(technique), values_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  Technique technique() const noexcept { return technique_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * n_, n_}; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Rows whose vector had zero norm; their similarities are all 0.
  const std::vector<std::size_t>& degenerate_rows() const noexcept { return degenerate_; }
  void mark_degenerate(std::size_t row) { degenerate_.push_back(row); }

 private:
  std::size_t n_ = 0;
  Technique technique_ = Technique::tfidf;
  std::vector<double> values_;
  std::vector<std::size_t> degenerate_;
};

/// a.b / (|a| |b|). Returns 0.0 when either vector is zero. Throws a
/// validation Error when the representations differ in kind or dimension.
double cosine_similarity(const Representation& a, const Representation& b);
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Needs at least two vectors of one kind. Each unordered pair is computed
/// once and mirrored; the diagonal is 1 for nonzero vectors. Values are
/// clamped to [-1, 1] to absorb rounding.
SimilarityMatrix similarity_matrix(std::span<const Representation> vectors, Technique technique);

}  // namespace collabrec::simcluster
