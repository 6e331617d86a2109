#pragma once

#include <set>
#include <string>
#include <vector>

#include "collabrec/corpus/profile.hpp"
#include "collabrec/corpus/text.hpp"

namespace collabrec::eval {

/// Jaccard cut-offs for grades 3, 2 and 1, in descending order.
struct RelevanceThresholds {
  double grade3 = 0.6;
  double grade2 = 0.4;
  double grade1 = 0.2;
};

struct RelevanceJudgment {
  std::string query_id;
  std::string candidate_id;
  int grade = 0;  // 0..3
  bool binary_relevant = false;
  double jaccard = 0.0;
};

using TokenSet = std::set<std::string>;

double jaccard(const TokenSet& a, const TokenSet& b);
int grade_for(double jaccard, const RelevanceThresholds& thresholds = {});

/// Grades a candidate against a query from the overlap of their preprocessed
/// (unstemmed) domain and skill tokens. Independent of every vectorizer.
/// Throws a validation Error when query and candidate share an id.
RelevanceJudgment relevance_oracle(const corpus::Profile& query, const corpus::Profile& candidate,
                                   const corpus::StopWords& stopwords,
                                   const RelevanceThresholds& thresholds = {});

TokenSet token_set(const corpus::Profile& profile, const corpus::StopWords& stopwords);

}  // namespace collabrec::eval
