#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace collabrec::eval {

/// Sum over the first `depth` positions of (2^grade - 1) / log2(rank + 1).
double dcg(std::span<const int> grades, std::size_t depth);

/// DCG normalised by the DCG of the same grades sorted descending. Zero when
/// every grade is zero. Throws a validation Error for an empty list or a
/// zero depth.
double ndcg_at(std::span<const int> grades, std::size_t depth);

/// Mean of ndcg_at over queries; all-zero queries count as 0.
double ndcg(std::span<const std::vector<int>> rankings, std::size_t depth);

struct BinaryRanking {
  std::vector<bool> relevant;  // in rank order
  /// Relevant items in the whole candidate set; defaults to the count in
  /// `relevant` when the list covers every candidate.
  std::optional<std::size_t> total_relevant;

  std::size_t relevant_count() const;
};

/// (1/m) * sum of precision@k over the ranks k holding a relevant item.
/// Returns nullopt when m is zero.
std::optional<double> average_precision(const BinaryRanking& ranking);

struct MapResult {
  double value = 0.0;
  std::size_t evaluated = 0;
  std::size_t excluded = 0;  // queries without any relevant candidate
};

/// Queries without relevant candidates are left out of the mean and counted
/// in `excluded`. Throws a validation Error if no query is left.
MapResult mean_average_precision(std::span<const BinaryRanking> rankings);

}  // namespace collabrec::eval
