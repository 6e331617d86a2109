#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "collabrec/corpus/profile.hpp"
#include "collabrec/corpus/text.hpp"
#include "collabrec/eval/relevance.hpp"
#include "collabrec/simcluster/affinity.hpp"
#include "collabrec/vectorize/embedding.hpp"
#include "collabrec/vectorize/representation.hpp"

namespace collabrec::pipeline {

namespace fs = std::filesystem;

struct CorpusConfig {
  fs::path profiles;                  // CSV or JSON-lines
  std::optional<fs::path> embeddings;  // JSON-lines import file
  /// Defaults to file_import when `embeddings` is set, else hashed_projection.
  std::optional<vectorize::ProviderKind> provider;
  std::size_t embedding_dim = vectorize::HashedProjectionProvider::kDefaultDimension;
  std::uint64_t seed = 42;
  std::optional<fs::path> stopwords;  // built-in English list when absent
  double alpha = 0.5;

  vectorize::ProviderKind provider_kind() const;
};

struct ExperimentConfig {
  std::vector<vectorize::Technique> methods = {vectorize::Technique::tfidf, vectorize::Technique::embedding,
                                               vectorize::Technique::hybrid};
  simcluster::AffinityOptions affinity;
  std::size_t ndcg_depth = 5;
  eval::RelevanceThresholds thresholds;
  std::vector<std::string> targets;  // designated top-k targets; first profile when empty
  std::size_t top_k = 5;
  fs::path output_dir = "out";
};

struct ServeConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  fs::path store = "store";
  bool fsync = true;
  std::optional<std::string> cors_origin;
};

/// The single configuration file. JSON with optional top-level sections
/// "corpus", "experiment" and "serve"; unknown keys are rejected. Relative
/// paths are resolved against the file's directory.
struct Config {
  CorpusConfig corpus;
  ExperimentConfig experiment;
  ServeConfig serve;
};

Config load_config(const fs::path& path);
Config config_from_json(const nlohmann::json& j, const fs::path& base_dir = {});
/// Full resolved configuration. With `for_hash` the output directory and
/// serve section are left out, since they do not influence results.
nlohmann::json to_json(const Config& config, bool for_hash = false);
/// FNV-1a 64 of the canonical `to_json(config, true)` dump, as 16 hex digits.
std::string config_hash(const Config& config);

std::string hex64(std::uint64_t value);

/// Strict load: any rejected record is an error listing every diagnostic.
std::vector<corpus::Profile> load_corpus(const CorpusConfig& config);
corpus::StopWords load_stopwords(const CorpusConfig& config);
/// With `fallback` an import-file provider is wrapped so that unknown ids
/// are served by a hashed projection of the same width.
std::shared_ptr<const vectorize::EmbeddingProvider> make_provider(const CorpusConfig& config, bool fallback = false);

}  // namespace collabrec::pipeline
