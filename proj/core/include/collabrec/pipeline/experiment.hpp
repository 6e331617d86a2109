#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collabrec/eval/report.hpp"
#include "collabrec/pipeline/config.hpp"
#include "collabrec/recommend/recommender.hpp"
#include "collabrec/simcluster/affinity.hpp"
#include "collabrec/simcluster/projection.hpp"
#include "collabrec/simcluster/similarity.hpp"

namespace collabrec::pipeline {

/// Full ranking of every other profile for one query, most similar first,
/// ties broken by profile id.
struct QueryRanking {
  std::size_t query = 0;
  std::vector<std::size_t> candidates;
  std::vector<double> similarities;
  std::vector<int> grades;  // relevance oracle grade of each candidate
};

struct MethodRun {
  vectorize::Technique technique = vectorize::Technique::tfidf;
  simcluster::SimilarityMatrix similarity{0, vectorize::Technique::tfidf};
  simcluster::ClusterAssignment assignment;
  std::vector<int> clusters;  // dense ids
  simcluster::Projection projection;
  std::vector<QueryRanking> rankings;
  eval::MethodMetrics metrics;
};

struct TargetRecommendations {
  std::string target;
  std::map<vectorize::Technique, std::vector<recommend::Recommendation>> by_method;
};

struct ExperimentResult {
  std::vector<std::string> ids;
  std::vector<corpus::Profile> profiles;
  std::vector<MethodRun> runs;
  eval::MetricsReport report;
  std::vector<TargetRecommendations> recommendations;
};

/// Vectorize, cluster, relabel and evaluate every configured technique,
/// then rank the designated targets. No file I/O. Failures are rethrown
/// with the technique name prefixed.
ExperimentResult run_experiment(const ExperimentConfig& config, std::vector<corpus::Profile> profiles,
                                const vectorize::EmbeddingProvider& provider, const corpus::StopWords& stopwords,
                                double alpha = 0.5);

/// Loads the corpus named by `config`, runs the experiment and writes the
/// artifacts to config.experiment.output_dir:
///   report.json, report.txt, sim_<m>.json, clusters_<m>.json,
///   coords_<m>.csv, rankings_<m>.json, recommendations.json, manifest.json
/// Output bytes depend only on the configuration and input files.
ExperimentResult run_experiment(const Config& config);

void write_artifacts(const ExperimentResult& result, const Config& config, const fs::path& dir);

nlohmann::json rankings_to_json(const MethodRun& run, std::span<const std::string> ids, std::size_t ndcg_depth);
nlohmann::json recommendations_to_json(const ExperimentResult& result, std::size_t k);

}  // namespace collabrec::pipeline
