#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace collabrec::match {

using Document = nlohmann::json;

/// Keyed JSON documents grouped into collections. Collection names and
/// keys are limited to [A-Za-z0-9._~-] and must not start with '.'.
/// Implementations are safe for concurrent use; a put is atomic with
/// respect to concurrent gets of the same key.
class DocumentStore {
 public:
  virtual ~DocumentStore() = default;

  virtual std::optional<Document> get(std::string_view collection, std::string_view key) const = 0;
  virtual void put(std::string_view collection, std::string_view key, const Document& doc) = 0;
  /// All documents of a collection ordered by key.
  virtual std::vector<std::pair<std::string, Document>> scan(std::string_view collection) const = 0;
};

bool is_store_name(std::string_view name) noexcept;
/// Throws a validation Error for names outside the allowed alphabet.
void check_store_name(std::string_view name);

class MemoryDocumentStore final : public DocumentStore {
 public:
  std::optional<Document> get(std::string_view collection, std::string_view key) const override;
  void put(std::string_view collection, std::string_view key, const Document& doc) override;
  std::vector<std::pair<std::string, Document>> scan(std::string_view collection) const override;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::map<std::string, Document, std::less<>>, std::less<>> data_;
};

struct FileStoreOptions {
  bool fsync = false;  // flush file and directory on every put
};

/// One file per document at <root>/<collection>/<key>.json. Writes go to a
/// temporary sibling which is then renamed over the target. The root and
/// collection directories are created on demand.
class FileDocumentStore final : public DocumentStore {
 public:
  explicit FileDocumentStore(std::filesystem::path root, FileStoreOptions options = {});

  const std::filesystem::path& root() const noexcept { return root_; }

  std::optional<Document> get(std::string_view collection, std::string_view key) const override;
  void put(std::string_view collection, std::string_view key, const Document& doc) override;
  std::vector<std::pair<std::string, Document>> scan(std::string_view collection) const override;

 private:
  std::filesystem::path path_of(std::string_view collection, std::string_view key) const;

  std::filesystem::path root_;
  FileStoreOptions options_;
};

/// Serialized form used by FileDocumentStore: compact JSON plus newline.
std::string serialize_document(const Document& doc);

}  // namespace collabrec::match
