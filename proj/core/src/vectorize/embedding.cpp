#include "collabrec/vectorize/embedding.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>

#include <nlohmann/json.hpp>

#include "collabrec/corpus/text.hpp"
#include "collabrec/error.hpp"
#include "collabrec/rng.hpp"

namespace collabrec::vectorize {

std::string_view to_string(ProviderKind kind) {
  return kind == ProviderKind::file_import ? "file_import" : "hashed_projection";
}

ProviderKind parse_provider_kind(std::string_view name) {
  if (name == "file_import" || name == "file") return ProviderKind::file_import;
  if (name == "hashed_projection" || name == "hashed") return ProviderKind::hashed_projection;
  throw validation_error("unknown embedding provider '" + std::string(name) + "'");
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

FileEmbeddingProvider FileEmbeddingProvider::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open embedding file " + path.string());
  return read(in);
}

FileEmbeddingProvider FileEmbeddingProvider::read(std::istream& in) {
  FileEmbeddingProvider provider;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "embeddings line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw validation_error(where + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("vector") || !j["vector"].is_array()) {
      throw validation_error(where + ": expected {\"id\": ..., \"vector\": [...]}");
    }
    const std::string id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    DenseVector v;
    v.values.reserve(j["vector"].size());
    for (const auto& x : j["vector"]) {
      if (!x.is_number()) throw validation_error(where + ": non-numeric vector entry");
      const double d = x.get<double>();
      if (!std::isfinite(d)) throw validation_error(where + ": non-finite vector entry");
      v.values.push_back(d);
    }
    if (v.values.empty()) throw validation_error(where + ": empty vector");
    if (provider.dimension_ == 0) {
      provider.dimension_ = v.values.size();
    } else if (v.values.size() != provider.dimension_) {
      throw validation_error(where + ": dimension mismatch (" + std::to_string(v.values.size()) +
                             " vs " + std::to_string(provider.dimension_) + ")");
    }
    if (!provider.vectors_.emplace(id, std::move(v)).second) {
      throw validation_error(where + ": duplicate id " + id);
    }
  }
  return provider;
}

DenseVector FileEmbeddingProvider::embed(std::string_view profile_id, std::string_view) const {
  auto it = vectors_.find(std::string(profile_id));
  if (it == vectors_.end()) {
    throw Error(ErrorKind::not_found, "no embedding for profile " + std::string(profile_id));
  }
  return it->second;
}

bool FileEmbeddingProvider::contains(std::string_view profile_id) const {
  return vectors_.contains(std::string(profile_id));
}

HashedProjectionProvider::HashedProjectionProvider(std::size_t dimension, std::uint64_t seed,
                                                   std::size_t buckets)
    : dimension_(dimension), seed_(seed), buckets_(buckets) {
  if (dimension_ == 0) throw validation_error("embedding dimension must be positive");
  if (buckets_ == 0) throw validation_error("hash bucket count must be positive");
}

std::size_t HashedProjectionProvider::bucket_of(std::string_view token) const {
  return static_cast<std::size_t>(fnv1a64(token) % buckets_);
}

DenseVector HashedProjectionProvider::embed(std::string_view, std::string_view text) const {
  std::map<std::size_t, double> bag;
  for (const auto& tok : corpus::tokenize(text)) bag[bucket_of(tok)] += 1.0;

  DenseVector out;
  out.values.assign(dimension_, 0.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dimension_));
  for (const auto& [bucket, count] : bag) {
    // One 64-bit word yields 64 projection signs for this bucket.
    const std::uint64_t column = mix64(seed_ ^ mix64(static_cast<std::uint64_t>(bucket)));
    for (std::size_t row = 0; row < dimension_; row += 64) {
      const std::uint64_t bits = mix64(column + row);
      const std::size_t span = std::min<std::size_t>(64, dimension_ - row);
      for (std::size_t b = 0; b < span; ++b) {
        out.values[row + b] += ((bits >> b) & 1U) ? count * scale : -count * scale;
      }
    }
  }
  return out;
}

FallbackEmbeddingProvider::FallbackEmbeddingProvider(std::shared_ptr<const FileEmbeddingProvider> primary,
                                                     std::shared_ptr<const EmbeddingProvider> fallback)
    : primary_(std::move(primary)), fallback_(std::move(fallback)) {
  if (!primary_ || !fallback_) throw validation_error("fallback provider needs two providers");
  if (primary_->dimension() != fallback_->dimension()) {
    throw validation_error("fallback provider dimension " + std::to_string(fallback_->dimension()) +
                           " differs from imported dimension " + std::to_string(primary_->dimension()));
  }
}

DenseVector FallbackEmbeddingProvider::embed(std::string_view profile_id, std::string_view text) const {
  if (primary_->contains(profile_id)) return primary_->embed(profile_id, text);
  return fallback_->embed(profile_id, text);
}

}  // namespace collabrec::vectorize
