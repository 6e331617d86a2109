#include "collabrec/recommend/corpus_index.hpp"

#include <algorithm>
#include <cmath>

#include "collabrec/error.hpp"
#include "collabrec/simcluster/relabel.hpp"
#include "collabrec/vectorize/tfidf.hpp"

namespace collabrec::recommend {
namespace {

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

vectorize::HybridVector partial_hybrid(const vectorize::SparseVector& tfidf,
                                      const vectorize::DenseVector& embedding, double alpha) {
  vectorize::HybridVector h;
  h.alpha = alpha;
  h.tfidf_part.dimension = tfidf.dimension;
  if (const double tn = tfidf.norm(); tn > 0.0) {
    for (const auto& [index, weight] : tfidf.entries) h.tfidf_part.entries.emplace_back(index, weight * std::sqrt(alpha) / tn);
  }
  h.embed_part.values.assign(embedding.values.size(), 0.0);
  if (const double en = embedding.norm(); en > 0.0) {
    for (std::size_t i = 0; i < embedding.values.size(); ++i) {
      h.embed_part.values[i] = embedding.values[i] * std::sqrt(1.0 - alpha) / en;
    }
  }
  return h;
}

}  // namespace

std::optional<std::size_t> CorpusIndex::find(std::string_view profile_id) const {
  auto it = by_id_.find(std::string(profile_id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> CorpusIndex::ids() const {
  std::vector<std::string> out;
  out.reserve(profiles_.size());
  for (const auto& p : profiles_) out.push_back(p.id);
  return out;
}

std::span<const Representation> CorpusIndex::vectors(Technique technique) const {
  auto it = vectors_.find(technique);
  if (it == vectors_.end()) {
    throw validation_error("corpus index has no " + std::string(vectorize::to_string(technique)) + " vectors");
  }
  return it->second;
}

void CorpusIndex::attach_clusters(Technique technique, simcluster::ClusterAssignment assignment) {
  if (assignment.labels.size() != profiles_.size()) {
    throw validation_error("cluster assignment does not match the corpus size");
  }
  dense_clusters_[technique] = simcluster::dense_labels(assignment.labels);
  clusters_[technique] = std::move(assignment);
}

const simcluster::ClusterAssignment* CorpusIndex::clusters(Technique technique) const {
  auto it = clusters_.find(technique);
  return it == clusters_.end() ? nullptr : &it->second;
}

std::span<const int> CorpusIndex::cluster_ids(Technique technique) const {
  auto it = dense_clusters_.find(technique);
  if (it == dense_clusters_.end()) return {};
  return it->second;
}

CorpusIndex build_index(std::vector<corpus::Profile> profiles, const corpus::StopWords& stopwords,
                        const vectorize::EmbeddingProvider* provider,
                        std::span<const Technique> techniques, const IndexOptions& options) {
  CorpusIndex index;
  index.profiles_ = std::move(profiles);
  for (std::size_t i = 0; i < index.profiles_.size(); ++i) {
    if (!index.by_id_.emplace(index.profiles_[i].id, i).second) {
      throw validation_error("duplicate profile id " + index.profiles_[i].id);
    }
    index.documents_.push_back(corpus::preprocess(index.profiles_[i], stopwords));
  }
  if (index.profiles_.empty() || techniques.empty()) return index;

  auto wants = [&](Technique t) { return std::find(techniques.begin(), techniques.end(), t) != techniques.end(); };
  const bool need_tfidf = wants(Technique::tfidf) || wants(Technique::hybrid);
  const bool need_embed = wants(Technique::embedding) || wants(Technique::hybrid);
  if (need_embed && provider == nullptr) throw validation_error("an embedding provider is required");

  std::vector<vectorize::SparseVector> tfidf;
  if (need_tfidf) {
    std::vector<corpus::TokenDocument> stemmed;
    stemmed.reserve(index.documents_.size());
    for (const auto& doc : index.documents_) stemmed.push_back(corpus::stem_tokens(doc));
    index.vocabulary_ = vectorize::Vocabulary::build(stemmed);
    for (const auto& doc : stemmed) tfidf.push_back(vectorize::tfidf_vector(doc, *index.vocabulary_, options.idf_log));
  }

  std::vector<vectorize::DenseVector> embeddings;
  if (need_embed) {
    for (const auto& doc : index.documents_) {
      auto v = provider->embed(doc.profile_id, join_tokens(doc.tokens));
      if (!embeddings.empty() && v.dimension() != embeddings.front().dimension()) {
        throw validation_error("embedding dimension changed within the corpus at " + doc.profile_id);
      }
      embeddings.push_back(std::move(v));
    }
  }

  if (wants(Technique::tfidf)) {
    auto& out = index.vectors_[Technique::tfidf];
    for (const auto& v : tfidf) out.emplace_back(v);
  }
  if (wants(Technique::embedding)) {
    auto& out = index.vectors_[Technique::embedding];
    for (const auto& v : embeddings) out.emplace_back(v);
  }
  if (wants(Technique::hybrid)) {
    auto& out = index.vectors_[Technique::hybrid];
    for (std::size_t i = 0; i < tfidf.size(); ++i) {
      if (options.allow_degenerate && (tfidf[i].is_zero() || embeddings[i].is_zero())) {
        if (!(options.alpha >= 0.0 && options.alpha <= 1.0)) throw validation_error("hybrid alpha must lie in [0, 1]");
        index.degenerate_.push_back(index.profiles_[i].id);
        out.emplace_back(partial_hybrid(tfidf[i], embeddings[i], options.alpha));
        continue;
      }
      try {
        out.emplace_back(vectorize::hybrid_vector(tfidf[i], embeddings[i], options.alpha));
      } catch (const Error& e) {
        throw Error(e.kind(), "profile " + index.profiles_[i].id + ": " + e.what());
      }
    }
  }
  return index;
}

}  // namespace collabrec::recommend
