#include "collabrec/vectorize/representation.hpp"

#include <cmath>
#include <string>

#include "collabrec/error.hpp"

namespace collabrec::vectorize {

std::string_view to_string(Technique technique) {
  switch (technique) {
    case Technique::tfidf:
      return "tfidf";
    case Technique::embedding:
      return "embedding";
    case Technique::hybrid:
      return "hybrid";
  }
  return "unknown";
}

Technique parse_technique(std::string_view name) {
  if (name == "tfidf" || name == "tf-idf") return Technique::tfidf;
  if (name == "embedding" || name == "bert") return Technique::embedding;
  if (name == "hybrid") return Technique::hybrid;
  throw validation_error("unknown technique '" + std::string(name) + "'");
}

double SparseVector::norm() const { return std::sqrt(dot(*this, *this)); }

bool SparseVector::is_zero() const {
  for (const auto& [index, weight] : entries) {
    if (weight != 0.0) return false;
  }
  return true;
}

double DenseVector::norm() const { return std::sqrt(dot(*this, *this)); }

bool DenseVector::is_zero() const {
  for (double v : values) {
    if (v != 0.0) return false;
  }
  return true;
}

double dot(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() && ib != b.entries.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

double dot(const DenseVector& a, const DenseVector& b) {
  if (a.values.size() != b.values.size()) {
    throw validation_error("dense vectors differ in dimension");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.values[i] * b.values[i];
  return sum;
}

double dot(const HybridVector& a, const HybridVector& b) {
  return dot(a.tfidf_part, b.tfidf_part) + dot(a.embed_part, b.embed_part);
}

double norm(const Representation& v) {
  return std::visit([](const auto& x) { return std::sqrt(dot(x, x)); }, v);
}

bool is_zero(const Representation& v) {
  struct {
    bool operator()(const SparseVector& x) const { return x.is_zero(); }
    bool operator()(const DenseVector& x) const { return x.is_zero(); }
    bool operator()(const HybridVector& x) const {
      return x.tfidf_part.is_zero() && x.embed_part.is_zero();
    }
  } visitor;
  return std::visit(visitor, v);
}

std::size_t dimension(const Representation& v) {
  struct {
    std::size_t operator()(const SparseVector& x) const { return x.dimension; }
    std::size_t operator()(const DenseVector& x) const { return x.dimension(); }
    std::size_t operator()(const HybridVector& x) const {
      return x.tfidf_part.dimension + x.embed_part.dimension();
    }
  } visitor;
  return std::visit(visitor, v);
}

namespace {

void scatter(const SparseVector& s, std::vector<double>& out, std::size_t offset) {
  for (const auto& [index, weight] : s.entries) out[offset + index] = weight;
}

}  // namespace

std::vector<double> to_dense(const Representation& v) {
  std::vector<double> out(dimension(v), 0.0);
  if (const auto* s = std::get_if<SparseVector>(&v)) {
    scatter(*s, out, 0);
  } else if (const auto* d = std::get_if<DenseVector>(&v)) {
    out = d->values;
  } else {
    const auto& h = std::get<HybridVector>(v);
    scatter(h.tfidf_part, out, 0);
    std::copy(h.embed_part.values.begin(), h.embed_part.values.end(),
              out.begin() + static_cast<std::ptrdiff_t>(h.tfidf_part.dimension));
  }
  return out;
}

HybridVector hybrid_vector(const SparseVector& tfidf, const DenseVector& embedding, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw validation_error("hybrid alpha must lie in [0, 1]");
  const double tn = tfidf.norm();
  const double en = embedding.norm();
  if (tn == 0.0) throw validation_error("hybrid: TF-IDF part has zero norm");
  if (en == 0.0) throw validation_error("hybrid: embedding part has zero norm");

  HybridVector h;
  h.alpha = alpha;
  const double ts = std::sqrt(alpha) / tn;
  const double es = std::sqrt(1.0 - alpha) / en;
  h.tfidf_part.dimension = tfidf.dimension;
  h.tfidf_part.entries.reserve(tfidf.entries.size());
  for (const auto& [index, weight] : tfidf.entries) h.tfidf_part.entries.emplace_back(index, weight * ts);
  h.embed_part.values.reserve(embedding.values.size());
  for (double v : embedding.values) h.embed_part.values.push_back(v * es);
  return h;
}

}  // namespace collabrec::vectorize
