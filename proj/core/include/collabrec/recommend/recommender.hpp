#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "collabrec/error.hpp"
#include "collabrec/recommend/corpus_index.hpp"

namespace collabrec::recommend {

/// Hard constraints applied before ranking. String comparisons are exact
/// but case-insensitive.
struct RecommendationFilters {
  /// Candidate profession must equal this value.
  std::optional<std::string> collaborate_with;
  /// Use the target's own collaboration_with as `collaborate_with`.
  bool use_target_preference = false;
  std::optional<std::string> profession;
  std::optional<std::string> interest;
  /// Master switch; false ignores every filter above.
  bool enabled = true;
};

struct RecommendationQuery {
  std::string target_id;
  Technique technique = Technique::hybrid;
  std::size_t k = 5;
  RecommendationFilters filters;
};

struct Recommendation {
  std::string candidate_id;
  double similarity = 0.0;
  std::optional<int> cluster;  // dense id under the query's technique
  std::size_t rank = 0;        // 1-based
};

/// Raised when filtering leaves nothing to rank.
class NoCandidatesError : public Error {
 public:
  explicit NoCandidatesError(const std::string& what) : Error(ErrorKind::not_found, what) {}
};

/// Top-k candidates by cosine similarity to the target, ties broken by
/// ascending profile id. The target and every id in `exclude` are skipped.
/// Throws not_found for an unknown target and NoCandidatesError when no
/// candidate survives the filters.
std::vector<Recommendation> recommend(const RecommendationQuery& query, const CorpusIndex& index,
                                      const std::unordered_set<std::string>& exclude = {});

}  // namespace collabrec::recommend
