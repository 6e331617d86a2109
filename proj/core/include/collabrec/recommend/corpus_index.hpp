#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "collabrec/corpus/profile.hpp"
#include "collabrec/corpus/text.hpp"
#include "collabrec/simcluster/affinity.hpp"
#include "collabrec/vectorize/embedding.hpp"
#include "collabrec/vectorize/representation.hpp"
#include "collabrec/vectorize/tfidf.hpp"
#include "collabrec/vectorize/vocabulary.hpp"

namespace collabrec::recommend {

using vectorize::Representation;
using vectorize::Technique;

struct IndexOptions {
  double alpha = 0.5;  // hybrid TF-IDF weight
  vectorize::IdfLog idf_log = vectorize::IdfLog::natural;
  /// When false a profile whose TF-IDF or embedding part is zero makes the
  /// hybrid build fail. When true such a part is left at zero, so that
  /// profile's hybrid similarity rests on the other part alone.
  bool allow_degenerate = false;
};

/// Immutable snapshot of a corpus: profiles, their token documents and one
/// vector per profile for every built technique. Cluster assignments can be
/// attached per technique.
class CorpusIndex {
 public:
  CorpusIndex() = default;

  std::span<const corpus::Profile> profiles() const noexcept { return profiles_; }
  std::span<const corpus::TokenDocument> documents() const noexcept { return documents_; }
  std::optional<std::size_t> find(std::string_view profile_id) const;
  const corpus::Profile& profile(std::size_t i) const { return profiles_.at(i); }
  std::vector<std::string> ids() const;

  bool has(Technique technique) const { return vectors_.contains(technique); }
  /// Throws a validation Error for a technique that was not built.
  std::span<const Representation> vectors(Technique technique) const;
  const std::optional<vectorize::Vocabulary>& vocabulary() const noexcept { return vocabulary_; }
  /// Ids whose hybrid vector has a zero part (only with allow_degenerate).
  std::span<const std::string> degenerate_ids() const noexcept { return degenerate_; }

  void attach_clusters(Technique technique, simcluster::ClusterAssignment assignment);
  const simcluster::ClusterAssignment* clusters(Technique technique) const;
  /// Dense 0..k-1 cluster ids, empty if no assignment is attached.
  std::span<const int> cluster_ids(Technique technique) const;

 private:
  friend CorpusIndex build_index(std::vector<corpus::Profile>, const corpus::StopWords&,
                                 const vectorize::EmbeddingProvider*, std::span<const Technique>,
                                 const IndexOptions&);

  std::vector<corpus::Profile> profiles_;
  std::vector<corpus::TokenDocument> documents_;  // stop words removed, unstemmed
  std::unordered_map<std::string, std::size_t> by_id_;
  std::optional<vectorize::Vocabulary> vocabulary_;
  std::map<Technique, std::vector<Representation>> vectors_;
  std::map<Technique, simcluster::ClusterAssignment> clusters_;
  std::map<Technique, std::vector<int>> dense_clusters_;
  std::vector<std::string> degenerate_;
};

/// Preprocesses every profile and vectorizes it for each requested
/// technique. TF-IDF sees stemmed tokens; the embedding provider sees the
/// unstemmed tokens joined by spaces. `provider` may be null only when no
/// embedding or hybrid technique is requested.
CorpusIndex build_index(std::vector<corpus::Profile> profiles, const corpus::StopWords& stopwords,
                        const vectorize::EmbeddingProvider* provider,
                        std::span<const Technique> techniques, const IndexOptions& options = {});

}  // namespace collabrec::recommend
