#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>

#include "collabrec/vectorize/representation.hpp"

namespace collabrec::vectorize {

enum class ProviderKind { file_import, hashed_projection };

std::string_view to_string(ProviderKind kind);
ProviderKind parse_provider_kind(std::string_view name);

/// Source of dense profile embeddings. Implementations are immutable after
/// construction and safe to share between threads.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual ProviderKind kind() const noexcept = 0;
  virtual std::size_t dimension() const noexcept = 0;
  virtual DenseVector embed(std::string_view profile_id, std::string_view text) const = 0;
};

/// Serves vectors read from a JSON-lines file of {"id": ..., "vector": [...]}.
class FileEmbeddingProvider final : public EmbeddingProvider {
 public:
  static FileEmbeddingProvider load(const std::filesystem::path& path);
  static FileEmbeddingProvider read(std::istream& in);

  ProviderKind kind() const noexcept override { return ProviderKind::file_import; }
  std::size_t dimension() const noexcept override { return dimension_; }
  /// Ignores `text`; throws a not_found Error for unknown ids.
  DenseVector embed(std::string_view profile_id, std::string_view text) const override;

  bool contains(std::string_view profile_id) const;
  std::size_t size() const noexcept { return vectors_.size(); }

 private:
  std::unordered_map<std::string, DenseVector> vectors_;
  std::size_t dimension_ = 0;
};

/// Feature-hashes tokens into `buckets` counters (FNV-1a 64) and applies a
/// seeded random sign projection down to `dimension` outputs. The projection
/// matrix is never materialized; each entry is derived from (seed, bucket, row).
class HashedProjectionProvider final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDefaultDimension = 256;
  static constexpr std::size_t kDefaultBuckets = std::size_t{1} << 16;

  explicit HashedProjectionProvider(std::size_t dimension = kDefaultDimension,
                                    std::uint64_t seed = 0,
                                    std::size_t buckets = kDefaultBuckets);

  ProviderKind kind() const noexcept override { return ProviderKind::hashed_projection; }
  std::size_t dimension() const noexcept override { return dimension_; }
  DenseVector embed(std::string_view profile_id, std::string_view text) const override;

  std::size_t buckets() const noexcept { return buckets_; }
  std::size_t bucket_of(std::string_view token) const;

 private:
  std::size_t dimension_;
  std::uint64_t seed_;
  std::size_t buckets_;
};

/// Serves ids known to `primary` from it and everything else from
/// `fallback`. Both must share one dimension. Lets a live corpus with an
/// imported embedding file accept profiles registered after the import.
class FallbackEmbeddingProvider final : public EmbeddingProvider {
 public:
  FallbackEmbeddingProvider(std::shared_ptr<const FileEmbeddingProvider> primary,
                            std::shared_ptr<const EmbeddingProvider> fallback);

  ProviderKind kind() const noexcept override { return primary_->kind(); }
  std::size_t dimension() const noexcept override { return primary_->dimension(); }
  DenseVector embed(std::string_view profile_id, std::string_view text) const override;

 private:
  std::shared_ptr<const FileEmbeddingProvider> primary_;
  std::shared_ptr<const EmbeddingProvider> fallback_;
};

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace collabrec::vectorize
