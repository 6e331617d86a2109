#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collabrec/vectorize/representation.hpp"

namespace collabrec::eval {

struct MethodMetrics {
  vectorize::Technique technique = vectorize::Technique::tfidf;
  std::optional<double> davies_bouldin;
  std::optional<double> silhouette;
  std::optional<double> intra_cluster;
  std::optional<double> ndcg;
  std::optional<double> map;
  int n_clusters = 0;
  bool converged = false;
  std::size_t map_excluded_queries = 0;
  std::size_t ndcg_zero_queries = 0;
  std::vector<std::string> notes;  // why a metric is missing, warnings
};

/// One column per technique; rows Davies-Bouldin, Silhouette, Intra-Cluster,
/// NDCG, mAP.
struct MetricsReport {
  std::vector<MethodMetrics> methods;
  std::size_t ndcg_depth = 5;
};

inline constexpr const char* kMetricRows[] = {"Davies-Bouldin", "Silhouette", "Intra-Cluster",
                                              "NDCG", "mAP"};

nlohmann::json to_json(const MetricsReport& report);
/// Aligned text table, values to four decimals, "n/a" for undefined ones.
std::string format_table(const MetricsReport& report);

}  // namespace collabrec::eval
