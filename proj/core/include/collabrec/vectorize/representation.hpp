#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace collabrec::vectorize {

enum class Technique { tfidf, embedding, hybrid };

std::string_view to_string(Technique technique);
/// Accepts "tfidf", "tf-idf", "embedding", "bert", "hybrid".
Technique parse_technique(std::string_view name);

/// (index, weight) pairs with strictly increasing indices.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;
  std::size_t dimension = 0;

  double norm() const;
  bool is_zero() const;
};

struct DenseVector {
  std::vector<double> values;

  std::size_t dimension() const noexcept { return values.size(); }
  double norm() const;
  bool is_zero() const;
};

/// Unit-normalized TF-IDF part scaled by sqrt(alpha) next to a unit-normalized
/// embedding part scaled by sqrt(1 - alpha). The inner product of two such
/// vectors is alpha * cos_tfidf + (1 - alpha) * cos_embedding.
struct HybridVector {
  SparseVector tfidf_part;
  DenseVector embed_part;
  double alpha = 0.5;
};

using Representation = std::variant<SparseVector, DenseVector, HybridVector>;

double dot(const SparseVector& a, const SparseVector& b);
double dot(const DenseVector& a, const DenseVector& b);
double dot(const HybridVector& a, const HybridVector& b);

double norm(const Representation& v);
bool is_zero(const Representation& v);
/// Number of coordinates once flattened by to_dense.
std::size_t dimension(const Representation& v);
/// Flattened coordinates; a hybrid vector becomes [tfidf_part, embed_part].
std::vector<double> to_dense(const Representation& v);

/// Throws a validation Error if either part has zero norm or alpha is
/// outside [0, 1].
HybridVector hybrid_vector(const SparseVector& tfidf, const DenseVector& embedding, double alpha);

}  // namespace collabrec::vectorize
