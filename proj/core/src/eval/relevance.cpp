#include "collabrec/eval/relevance.hpp"

#include <algorithm>
#include <iterator>

#include "collabrec/error.hpp"

namespace collabrec::eval {

double jaccard(const TokenSet& a, const TokenSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t united = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(united);
}

int grade_for(double j, const RelevanceThresholds& t) {
  if (j >= t.grade3) return 3;
  if (j >= t.grade2) return 2;
  if (j >= t.grade1) return 1;
  return 0;
}

TokenSet token_set(const corpus::Profile& profile, const corpus::StopWords& stopwords) {
  auto doc = corpus::preprocess(profile, stopwords);
  return TokenSet(std::make_move_iterator(doc.tokens.begin()), std::make_move_iterator(doc.tokens.end()));
}

RelevanceJudgment relevance_oracle(const corpus::Profile& query, const corpus::Profile& candidate,
                                   const corpus::StopWords& stopwords,
                                   const RelevanceThresholds& thresholds) {
  if (query.id == candidate.id) throw validation_error("relevance: query and candidate are the same profile");
  RelevanceJudgment out;
  out.query_id = query.id;
  out.candidate_id = candidate.id;
  out.jaccard = jaccard(token_set(query, stopwords), token_set(candidate, stopwords));
  out.grade = grade_for(out.jaccard, thresholds);
  out.binary_relevant = out.grade >= 1;
  return out;
}

}  // namespace collabrec::eval
