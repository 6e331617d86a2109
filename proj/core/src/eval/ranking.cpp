#include "collabrec/eval/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "collabrec/error.hpp"

namespace collabrec::eval {

double dcg(std::span<const int> grades, std::size_t depth) {
  double sum = 0.0;
  const std::size_t limit = std::min(depth, grades.size());
  for (std::size_t k = 1; k <= limit; ++k) {
    const double gain = std::exp2(static_cast<double>(grades[k - 1])) - 1.0;
    sum += gain / std::log2(static_cast<double>(k) + 1.0);
  }
  return sum;
}

double ndcg_at(std::span<const int> grades, std::size_t depth) {
  if (grades.empty()) throw validation_error("ndcg: empty ranking");
  if (depth == 0) throw validation_error("ndcg: depth must be at least 1");
  std::vector<int> ideal(grades.begin(), grades.end());
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double idcg = dcg(ideal, depth);
  if (idcg == 0.0) return 0.0;
  return dcg(grades, depth) / idcg;
}

double ndcg(std::span<const std::vector<int>> rankings, std::size_t depth) {
  if (rankings.empty()) throw validation_error("ndcg: no queries");
  double sum = 0.0;
  for (const auto& r : rankings) sum += ndcg_at(r, depth);
  return sum / static_cast<double>(rankings.size());
}

std::size_t BinaryRanking::relevant_count() const {
  return total_relevant.value_or(static_cast<std::size_t>(std::count(relevant.begin(), relevant.end(), true)));
}

std::optional<double> average_precision(const BinaryRanking& ranking) {
  const std::size_t m = ranking.relevant_count();
  if (m == 0) return std::nullopt;
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < ranking.relevant.size(); ++k) {
    if (!ranking.relevant[k]) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(k + 1);
  }
  return sum / static_cast<double>(m);
}

MapResult mean_average_precision(std::span<const BinaryRanking> rankings) {
  if (rankings.empty()) throw validation_error("mAP: no queries");
  MapResult out;
  double sum = 0.0;
  for (const auto& r : rankings) {
    if (auto ap = average_precision(r)) {
      sum += *ap;
      ++out.evaluated;
    } else {
      ++out.excluded;
    }
  }
  if (out.evaluated == 0) throw validation_error("mAP: no query has a relevant candidate");
  out.value = sum / static_cast<double>(out.evaluated);
  return out;
}

}  // namespace collabrec::eval
