#include "collabrec/match/document_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

#include "collabrec/error.hpp"

namespace collabrec::match {
namespace fs = std::filesystem;

namespace {

bool allowed(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
         c == '_' || c == '~' || c == '-';
}

void write_all(int fd, const std::string& data, const fs::path& path) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw runtime_error("write " + path.string() + ": " + std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
}

void fsync_dir(const fs::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

Document parse_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Document::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw runtime_error("corrupt store document " + path.string() + ": " + e.what());
  }
}

}  // namespace

bool is_store_name(std::string_view name) noexcept {
  return !name.empty() && name.front() != '.' && std::all_of(name.begin(), name.end(), allowed);
}

void check_store_name(std::string_view name) {
  if (!is_store_name(name)) {
    throw validation_error("invalid store name '" + std::string(name) + "'");
  }
}

std::string serialize_document(const Document& doc) { return doc.dump() + "\n"; }

std::optional<Document> MemoryDocumentStore::get(std::string_view collection, std::string_view key) const {
  std::shared_lock lock(mutex_);
  auto c = data_.find(collection);
  if (c == data_.end()) return std::nullopt;
  auto d = c->second.find(key);
  if (d == c->second.end()) return std::nullopt;
  return std::optional<Document>(std::in_place, d->second);
}

void MemoryDocumentStore::put(std::string_view collection, std::string_view key, const Document& doc) {
  check_store_name(collection);
  check_store_name(key);
  std::unique_lock lock(mutex_);
  auto c = data_.find(collection);
  if (c == data_.end()) c = data_.emplace(std::string(collection), std::map<std::string, Document, std::less<>>{}).first;
  c->second.insert_or_assign(std::string(key), doc);
}

std::vector<std::pair<std::string, Document>> MemoryDocumentStore::scan(std::string_view collection) const {
  std::shared_lock lock(mutex_);
  std::vector<std::pair<std::string, Document>> out;
  auto c = data_.find(collection);
  if (c == data_.end()) return out;
  for (const auto& [k, v] : c->second) out.emplace_back(k, v);
  return out;
}

FileDocumentStore::FileDocumentStore(fs::path root, FileStoreOptions options)
    : root_(std::move(root)), options_(options) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec || !fs::is_directory(root_)) {
    throw runtime_error("cannot create store directory " + root_.string() + ": " + ec.message());
  }
}

fs::path FileDocumentStore::path_of(std::string_view collection, std::string_view key) const {
  check_store_name(collection);
  check_store_name(key);
  return root_ / std::string(collection) / (std::string(key) + ".json");
}

std::optional<Document> FileDocumentStore::get(std::string_view collection, std::string_view key) const {
  const auto path = path_of(collection, key);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  return std::optional<Document>(std::in_place, parse_file(path));
}

void FileDocumentStore::put(std::string_view collection, std::string_view key, const Document& doc) {
  static std::atomic<unsigned long> counter{0};
  const auto path = path_of(collection, key);
  const auto dir = path.parent_path();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw runtime_error("cannot create " + dir.string() + ": " + ec.message());

  const auto tmp = dir / ("." + std::string(key) + ".tmp." + std::to_string(::getpid()) + "." +
                          std::to_string(counter.fetch_add(1)));
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  if (fd < 0) throw runtime_error("open " + tmp.string() + ": " + std::strerror(errno));
  try {
    write_all(fd, serialize_document(doc), tmp);
    if (options_.fsync && ::fsync(fd) != 0) throw runtime_error("fsync " + tmp.string() + ": " + std::strerror(errno));
  } catch (...) {
    ::close(fd);
    fs::remove(tmp, ec);
    throw;
  }
  ::close(fd);
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    const std::string why = std::strerror(errno);
    fs::remove(tmp, ec);
    throw runtime_error("rename to " + path.string() + ": " + why);
  }
  if (options_.fsync) fsync_dir(dir);
}

std::vector<std::pair<std::string, Document>> FileDocumentStore::scan(std::string_view collection) const {
  check_store_name(collection);
  std::vector<std::pair<std::string, Document>> out;
  const auto dir = root_ / std::string(collection);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.front() == '.' || entry.path().extension() != ".json" || !entry.is_regular_file()) continue;
    out.emplace_back(entry.path().stem().string(), parse_file(entry.path()));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace collabrec::match
