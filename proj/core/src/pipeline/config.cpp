#include "collabrec/pipeline/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "collabrec/corpus/ingest.hpp"
#include "collabrec/error.hpp"

namespace collabrec::pipeline {
namespace {

using nlohmann::json;

void check_keys(const json& j, const char* section, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw validation_error(std::string("config section '") + section + "' must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items()) {
    if (!keys.contains(k)) throw validation_error(std::string("unknown config key '") + section + "." + k + "'");
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) it->get_to(out);
}

json optional_path(const std::optional<fs::path>& p) { return p ? json(p->generic_string()) : json(nullptr); }

}  // namespace

vectorize::ProviderKind CorpusConfig::provider_kind() const {
  if (provider) return *provider;
  return embeddings ? vectorize::ProviderKind::file_import : vectorize::ProviderKind::hashed_projection;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

namespace {

void check_ranges(const Config& c) {
  if (!(c.corpus.alpha >= 0.0 && c.corpus.alpha <= 1.0)) throw validation_error("corpus.alpha must lie in [0, 1]");
  if (c.corpus.embedding_dim == 0) throw validation_error("corpus.embedding_dim must be positive");
  const auto& a = c.experiment.affinity;
  if (!(a.damping >= 0.5 && a.damping < 1.0)) throw validation_error("experiment.affinity.damping must lie in [0.5, 1)");
  if (a.max_iter < 1 || a.convergence_iter < 1) throw validation_error("experiment.affinity iteration limits must be positive");
  if (c.experiment.methods.empty()) throw validation_error("experiment.methods is empty");
  if (c.experiment.ndcg_depth == 0) throw validation_error("experiment.ndcg_depth must be at least 1");
  if (c.experiment.top_k == 0) throw validation_error("experiment.top_k must be at least 1");
  const auto& t = c.experiment.thresholds;
  if (!(t.grade3 >= t.grade2 && t.grade2 >= t.grade1 && t.grade1 > 0.0 && t.grade3 <= 1.0)) {
    throw validation_error("experiment.relevance_thresholds must be descending within (0, 1]");
  }
  if (c.serve.port < 0 || c.serve.port > 65535) throw validation_error("serve.port out of range");
}

}  // namespace

Config config_from_json(const json& j, const fs::path& base_dir) {
  check_keys(j, "<root>", {"corpus", "experiment", "serve"});
  Config c;
  try {
    if (auto it = j.find("corpus"); it != j.end()) {
      const auto& s = *it;
      check_keys(s, "corpus", {"profiles", "embeddings", "provider", "embedding_dim", "seed", "stopwords", "alpha"});
      if (auto p = s.find("profiles"); p != s.end() && !p->is_null()) c.corpus.profiles = resolve(base_dir, p->get<std::string>());
      if (auto p = s.find("embeddings"); p != s.end() && !p->is_null()) c.corpus.embeddings = resolve(base_dir, p->get<std::string>());
      if (auto p = s.find("stopwords"); p != s.end() && !p->is_null()) c.corpus.stopwords = resolve(base_dir, p->get<std::string>());
      if (auto p = s.find("provider"); p != s.end() && !p->is_null()) c.corpus.provider = vectorize::parse_provider_kind(p->get<std::string>());
      read(s, "embedding_dim", c.corpus.embedding_dim);
      read(s, "seed", c.corpus.seed);
      read(s, "alpha", c.corpus.alpha);
    }
    if (auto it = j.find("experiment"); it != j.end()) {
      const auto& s = *it;
      check_keys(s, "experiment", {"methods", "affinity", "ndcg_depth", "relevance_thresholds", "targets", "top_k", "output_dir"});
      if (auto p = s.find("methods"); p != s.end()) {
        c.experiment.methods.clear();
        for (const auto& m : *p) c.experiment.methods.push_back(vectorize::parse_technique(m.get<std::string>()));
      }
      if (auto p = s.find("affinity"); p != s.end()) {
        check_keys(*p, "experiment.affinity", {"damping", "max_iter", "convergence_iter", "preference"});
        read(*p, "damping", c.experiment.affinity.damping);
        read(*p, "max_iter", c.experiment.affinity.max_iter);
        read(*p, "convergence_iter", c.experiment.affinity.convergence_iter);
        if (auto q = p->find("preference"); q != p->end() && !q->is_null()) c.experiment.affinity.preference = q->get<double>();
      }
      read(s, "ndcg_depth", c.experiment.ndcg_depth);
      if (auto p = s.find("relevance_thresholds"); p != s.end()) {
        const auto t = p->get<std::vector<double>>();
        if (t.size() != 3) throw validation_error("relevance_thresholds needs three values");
        c.experiment.thresholds = {t[0], t[1], t[2]};
      }
      read(s, "targets", c.experiment.targets);
      read(s, "top_k", c.experiment.top_k);
      if (auto p = s.find("output_dir"); p != s.end() && !p->is_null()) c.experiment.output_dir = resolve(base_dir, p->get<std::string>());
    }
    if (auto it = j.find("serve"); it != j.end()) {
      const auto& s = *it;
      check_keys(s, "serve", {"host", "port", "store", "fsync", "cors_origin"});
      read(s, "host", c.serve.host);
      read(s, "port", c.serve.port);
      if (auto p = s.find("store"); p != s.end() && !p->is_null()) c.serve.store = resolve(base_dir, p->get<std::string>());
      read(s, "fsync", c.serve.fsync);
      if (auto p = s.find("cors_origin"); p != s.end() && !p->is_null()) c.serve.cors_origin = p->get<std::string>();
    }
  } catch (const json::exception& e) {
    throw validation_error(std::string("invalid config value: ") + e.what());
  }
  check_ranges(c);
  return c;
}

Config load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open config " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw validation_error("config " + path.string() + " is not valid JSON");
  return config_from_json(j, path.parent_path());
}

json to_json(const Config& c, bool for_hash) {
  json methods = json::array();
  for (auto m : c.experiment.methods) methods.push_back(vectorize::to_string(m));
  const auto& a = c.experiment.affinity;
  const auto& t = c.experiment.thresholds;
  json j = {
      {"corpus",
       {{"profiles", c.corpus.profiles.generic_string()},
        {"embeddings", optional_path(c.corpus.embeddings)},
        {"provider", vectorize::to_string(c.corpus.provider_kind())},
        {"embedding_dim", c.corpus.embedding_dim},
        {"seed", c.corpus.seed},
        {"stopwords", optional_path(c.corpus.stopwords)},
        {"alpha", c.corpus.alpha}}},
      {"experiment",
       {{"methods", methods},
        {"affinity",
         {{"damping", a.damping},
          {"max_iter", a.max_iter},
          {"convergence_iter", a.convergence_iter},
          {"preference", a.preference ? json(*a.preference) : json(nullptr)}}},
        {"ndcg_depth", c.experiment.ndcg_depth},
        {"relevance_thresholds", {t.grade3, t.grade2, t.grade1}},
        {"targets", c.experiment.targets},
        {"top_k", c.experiment.top_k}}}};
  if (!for_hash) {
    j["experiment"]["output_dir"] = c.experiment.output_dir.generic_string();
    j["serve"] = {{"host", c.serve.host},
                  {"port", c.serve.port},
                  {"store", c.serve.store.generic_string()},
                  {"fsync", c.serve.fsync},
                  {"cors_origin", c.serve.cors_origin ? json(*c.serve.cors_origin) : json(nullptr)}};
  }
  return j;
}

std::string config_hash(const Config& config) { return hex64(vectorize::fnv1a64(to_json(config, true).dump())); }

std::vector<corpus::Profile> load_corpus(const CorpusConfig& config) {
  if (config.profiles.empty()) throw validation_error("no profiles file configured");
  return corpus::load_profiles_strict(config.profiles);
}

corpus::StopWords load_stopwords(const CorpusConfig& config) {
  return config.stopwords ? corpus::StopWords::from_file(*config.stopwords) : corpus::StopWords::english();
}

std::shared_ptr<const vectorize::EmbeddingProvider> make_provider(const CorpusConfig& config, bool fallback) {
  if (config.provider_kind() == vectorize::ProviderKind::hashed_projection) {
    return std::make_shared<vectorize::HashedProjectionProvider>(config.embedding_dim, config.seed);
  }
  if (!config.embeddings) throw validation_error("provider file_import needs an embeddings file");
  auto file = std::make_shared<const vectorize::FileEmbeddingProvider>(vectorize::FileEmbeddingProvider::load(*config.embeddings));
  if (!fallback) return file;
  auto hashed = std::make_shared<const vectorize::HashedProjectionProvider>(file->dimension(), config.seed);
  return std::make_shared<vectorize::FallbackEmbeddingProvider>(file, hashed);
}

}  // namespace collabrec::pipeline
