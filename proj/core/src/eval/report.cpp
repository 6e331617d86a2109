#include "collabrec/eval/report.hpp"

#include <iomanip>
#include <sstream>

namespace collabrec::eval {
namespace {

nlohmann::json opt(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> row_value(const MethodMetrics& m, std::size_t row) {
  switch (row) {
    case 0:
      return m.davies_bouldin;
    case 1:
      return m.silhouette;
    case 2:
      return m.intra_cluster;
    case 3:
      return m.ndcg;
    default:
      return m.map;
  }
}

}  // namespace

nlohmann::json to_json(const MetricsReport& report) {
  nlohmann::json methods = nlohmann::json::array();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& m : report.methods) {
    methods.push_back({{"technique", vectorize::to_string(m.technique)},
                       {"davies_bouldin", opt(m.davies_bouldin)},
                       {"silhouette", opt(m.silhouette)},
                       {"intra_cluster", opt(m.intra_cluster)},
                       {"ndcg", opt(m.ndcg)},
                       {"map", opt(m.map)},
                       {"n_clusters", m.n_clusters},
                       {"converged", m.converged},
                       {"map_excluded_queries", m.map_excluded_queries},
                       {"ndcg_zero_queries", m.ndcg_zero_queries},
                       {"notes", m.notes}});
  }
  for (std::size_t r = 0; r < std::size(kMetricRows); ++r) {
    nlohmann::json row = {{"metric", kMetricRows[r]}};
    for (const auto& m : report.methods) row[std::string(vectorize::to_string(m.technique))] = opt(row_value(m, r));
    rows.push_back(std::move(row));
  }
  return {{"ndcg_depth", report.ndcg_depth}, {"methods", std::move(methods)}, {"table", std::move(rows)}};
}

std::string format_table(const MetricsReport& report) {
  constexpr int kFirst = 16;
  constexpr int kCol = 12;
  std::ostringstream out;
  out << std::left << std::setw(kFirst) << "Metric";
  for (const auto& m : report.methods) out << std::right << std::setw(kCol) << vectorize::to_string(m.technique);
  out << '\n' << std::string(kFirst + kCol * report.methods.size(), '-') << '\n';
  for (std::size_t r = 0; r < std::size(kMetricRows); ++r) {
    out << std::left << std::setw(kFirst) << kMetricRows[r];
    for (const auto& m : report.methods) {
      std::ostringstream cell;
      if (auto v = row_value(m, r)) {
        cell << std::fixed << std::setprecision(4) << *v;
      } else {
        cell << "n/a";
      }
      out << std::right << std::setw(kCol) << cell.str();
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace collabrec::eval
