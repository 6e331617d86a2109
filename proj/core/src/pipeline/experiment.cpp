#include "collabrec/pipeline/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "collabrec/error.hpp"
#include "collabrec/eval/cluster_metrics.hpp"
#include "collabrec/eval/ranking.hpp"
#include "collabrec/recommend/corpus_index.hpp"
#include "collabrec/simcluster/export.hpp"
#include "collabrec/simcluster/relabel.hpp"
#include "collabrec/version.hpp"

namespace collabrec::pipeline {
namespace {

using nlohmann::json;
using vectorize::Technique;

// Grades of every ordered pair, independent of the technique.
std::vector<std::vector<int>> grade_matrix(std::span<const corpus::Profile> profiles,
                                           const corpus::StopWords& stopwords,
                                           const eval::RelevanceThresholds& thresholds) {
  std::vector<eval::TokenSet> sets;
  sets.reserve(profiles.size());
  for (const auto& p : profiles) sets.push_back(eval::token_set(p, stopwords));
  const std::size_t n = profiles.size();
  std::vector<std::vector<int>> grades(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      grades[i][j] = grades[j][i] = eval::grade_for(eval::jaccard(sets[i], sets[j]), thresholds);
    }
  }
  return grades;
}

std::vector<QueryRanking> rank_all(const simcluster::SimilarityMatrix& sim, std::span<const std::string> ids,
                                   const std::vector<std::vector<int>>& grades) {
  const std::size_t n = ids.size();
  std::vector<QueryRanking> out(n);
  for (std::size_t q = 0; q < n; ++q) {
    auto& r = out[q];
    r.query = q;
    for (std::size_t c = 0; c < n; ++c) {
      if (c != q) r.candidates.push_back(c);
    }
    std::sort(r.candidates.begin(), r.candidates.end(), [&](std::size_t a, std::size_t b) {
      if (sim(q, a) != sim(q, b)) return sim(q, a) > sim(q, b);
      return ids[a] < ids[b];
    });
    for (auto c : r.candidates) {
      r.similarities.push_back(sim(q, c));
      r.grades.push_back(grades[q][c]);
    }
  }
  return out;
}

// Records a metric, or a note when it is undefined for this clustering.
template <typename F>
void try_metric(std::optional<double>& slot, std::vector<std::string>& notes, const char* name, F f) {
  try {
    slot = f();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::validation) throw;
    notes.push_back(std::string(name) + " undefined: " + e.what());
  }
}

void evaluate(MethodRun& run, std::span<const vectorize::Representation> vectors, std::size_t depth) {
  auto& m = run.metrics;
  m.technique = run.technique;
  m.n_clusters = run.assignment.n_clusters;
  m.converged = run.assignment.converged;
  if (!run.assignment.converged) {
    m.notes.push_back("affinity propagation stopped at max_iter without converging");
  }

  std::vector<std::vector<double>> dense;
  dense.reserve(vectors.size());
  for (const auto& v : vectors) dense.push_back(vectorize::to_dense(v));
  try_metric(m.davies_bouldin, m.notes, "Davies-Bouldin", [&] { return eval::davies_bouldin(dense, run.clusters); });
  try_metric(m.silhouette, m.notes, "Silhouette", [&] { return eval::silhouette(run.similarity, run.clusters); });
  try_metric(m.intra_cluster, m.notes, "Intra-Cluster", [&] { return eval::intra_cluster_similarity(run.similarity, run.clusters); });

  std::vector<std::vector<int>> graded;
  std::vector<eval::BinaryRanking> binary;
  for (const auto& r : run.rankings) {
    graded.push_back(r.grades);
    eval::BinaryRanking b;
    for (int g : r.grades) b.relevant.push_back(g >= 1);
    binary.push_back(std::move(b));
    if (std::all_of(r.grades.begin(), r.grades.end(), [](int g) { return g == 0; })) ++m.ndcg_zero_queries;
  }
  m.ndcg = eval::ndcg(graded, depth);
  try_metric(m.map, m.notes, "mAP", [&] {
    const auto result = eval::mean_average_precision(binary);
    m.map_excluded_queries = result.excluded;
    return result.value;
  });
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw runtime_error("write failed for " + path.string());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, std::vector<corpus::Profile> profiles,
                                const vectorize::EmbeddingProvider& provider, const corpus::StopWords& stopwords,
                                double alpha) {
  if (config.methods.empty()) throw validation_error("no methods requested");
  if (config.ndcg_depth == 0) throw validation_error("ndcg_depth must be at least 1");
  if (config.top_k == 0) throw validation_error("top_k must be at least 1");
  if (profiles.size() < 2) throw validation_error("the experiment needs at least two profiles");

  std::vector<Technique> methods;
  for (auto m : config.methods) {
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
  }

  ExperimentResult result;
  result.report.ndcg_depth = config.ndcg_depth;
  const auto grades = grade_matrix(profiles, stopwords, config.thresholds);

  recommend::IndexOptions options;
  options.alpha = alpha;
  auto index = recommend::build_index(profiles, stopwords, &provider, methods, options);
  result.ids = index.ids();
  result.profiles = std::move(profiles);

  for (auto technique : methods) {
    try {
      MethodRun run;
      run.technique = technique;
      const auto vectors = index.vectors(technique);
      run.similarity = simcluster::similarity_matrix(vectors, technique);
      run.assignment = simcluster::affinity_propagation(run.similarity, config.affinity);
      run.clusters = simcluster::dense_labels(run.assignment.labels);
      index.attach_clusters(technique, run.assignment);
      run.projection = simcluster::project_2d(vectors);
      run.rankings = rank_all(run.similarity, result.ids, grades);
      evaluate(run, vectors, config.ndcg_depth);
      result.report.methods.push_back(run.metrics);
      result.runs.push_back(std::move(run));
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(vectorize::to_string(technique)) + ": " + e.what());
    }
  }

  std::vector<std::string> targets = config.targets;
  if (targets.empty()) targets.push_back(result.ids.front());
  for (const auto& target : targets) {
    TargetRecommendations tr;
    tr.target = target;
    for (auto technique : methods) {
      recommend::RecommendationQuery query;
      query.target_id = target;
      query.technique = technique;
      query.k = config.top_k;
      tr.by_method[technique] = recommend::recommend(query, index);
    }
    result.recommendations.push_back(std::move(tr));
  }
  return result;
}

json rankings_to_json(const MethodRun& run, std::span<const std::string> ids, std::size_t ndcg_depth) {
  json queries = json::array();
  for (const auto& r : run.rankings) {
    json candidates = json::array();
    for (auto c : r.candidates) candidates.push_back(ids[c]);
    queries.push_back({{"query", ids[r.query]},
                       {"candidates", std::move(candidates)},
                       {"similarities", r.similarities},
                       {"grades", r.grades}});
  }
  return {{"technique", vectorize::to_string(run.technique)},
          {"ndcg_depth", ndcg_depth},
          {"relevant_grade_min", 1},
          {"queries", std::move(queries)}};
}

json recommendations_to_json(const ExperimentResult& result, std::size_t k) {
  json targets = json::array();
  for (const auto& tr : result.recommendations) {
    json methods = json::object();
    for (const auto& [technique, recs] : tr.by_method) {
      json list = json::array();
      for (const auto& r : recs) {
        list.push_back({{"rank", r.rank},
                        {"candidate", r.candidate_id},
                        {"similarity", r.similarity},
                        {"cluster", r.cluster ? json(*r.cluster) : json(nullptr)}});
      }
      methods[std::string(vectorize::to_string(technique))] = std::move(list);
    }
    targets.push_back({{"target", tr.target}, {"methods", std::move(methods)}});
  }
  return {{"k", k}, {"targets", std::move(targets)}};
}

void write_artifacts(const ExperimentResult& result, const Config& config, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  std::map<std::string, std::string> files;  // name -> content
  files["report.json"] = eval::to_json(result.report).dump(2) + "\n";
  files["report.txt"] = eval::format_table(result.report);
  for (const auto& run : result.runs) {
    const std::string m(vectorize::to_string(run.technique));
    files["sim_" + m + ".json"] = simcluster::to_json(run.similarity, result.ids).dump() + "\n";
    auto clusters = simcluster::to_json(run.assignment);
    clusters["ids"] = result.ids;
    clusters["clusters"] = run.clusters;
    files["clusters_" + m + ".json"] = clusters.dump(2) + "\n";
    std::ostringstream coords;
    simcluster::write_coordinates_csv(coords, result.ids, run.projection, run.clusters);
    files["coords_" + m + ".csv"] = coords.str();
    files["rankings_" + m + ".json"] = rankings_to_json(run, result.ids, result.report.ndcg_depth).dump() + "\n";
  }
  files["recommendations.json"] = recommendations_to_json(result, config.experiment.top_k).dump(2) + "\n";

  json inputs = {{"profiles", {{"path", config.corpus.profiles.filename().string()},
                               {"fnv1a64", hex64(vectorize::fnv1a64(slurp(config.corpus.profiles)))}}}};
  if (config.corpus.embeddings && config.corpus.provider_kind() == vectorize::ProviderKind::file_import) {
    inputs["embeddings"] = {{"path", config.corpus.embeddings->filename().string()},
                            {"fnv1a64", hex64(vectorize::fnv1a64(slurp(*config.corpus.embeddings)))}};
  }
  if (config.corpus.stopwords) {
    inputs["stopwords"] = {{"path", config.corpus.stopwords->filename().string()},
                           {"fnv1a64", hex64(vectorize::fnv1a64(slurp(*config.corpus.stopwords)))}};
  }
  json outputs = json::object();
  for (const auto& [name, content] : files) outputs[name] = hex64(vectorize::fnv1a64(content));
  json manifest = {{"tool", "collabrec"},
                   {"version", std::string(kVersion)},
                   {"seed", config.corpus.seed},
                   {"config_hash", config_hash(config)},
                   {"config", to_json(config, true)},
                   {"inputs", inputs},
                   {"outputs", outputs}};
  files["manifest.json"] = manifest.dump(2) + "\n";

  for (const auto& [name, content] : files) write_file(dir / name, content);
}

ExperimentResult run_experiment(const Config& config) {
  auto profiles = load_corpus(config.corpus);
  const auto stopwords = load_stopwords(config.corpus);
  const auto provider = make_provider(config.corpus);
  auto result = run_experiment(config.experiment, std::move(profiles), *provider, stopwords, config.corpus.alpha);
  write_artifacts(result, config, config.experiment.output_dir);
  return result;
}

}  // namespace collabrec::pipeline
