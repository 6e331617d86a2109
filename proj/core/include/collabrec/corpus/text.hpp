#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "collabrec/corpus/profile.hpp"

namespace collabrec::corpus {

class StopWords {
 public:
  StopWords() = default;

  /// The frozen 179-word English list shipped as data/stopwords_en.txt.
  static StopWords english();
  /// One word per line; blank lines and surrounding whitespace ignored.
  static StopWords from_file(const std::filesystem::path& path);
  static StopWords from_words(std::span<const std::string> words);

  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_set<std::string, Hash, std::equal_to<>> words_;
};

/// Built-in copy of the English list, in file order.
std::span<const std::string_view> english_stopword_list();

struct TokenDocument {
  std::string profile_id;
  std::vector<std::string> tokens;
  std::string raw_text;

  bool empty() const noexcept { return tokens.empty(); }
};

/// Lower-cases ASCII and splits on every byte that is not alphanumeric,
/// '+', '#', or part of a multi-byte UTF-8 sequence. Pieces without any
/// alphanumeric character (a bare "+") are dropped.
std::vector<std::string> tokenize(std::string_view text);

TokenDocument preprocess_text(std::string profile_id, std::string_view raw_text,
                              const StopWords& stopwords);

/// Tokenizes domain + " " + skillset and removes stop words.
TokenDocument preprocess(const Profile& profile, const StopWords& stopwords);

/// Porter-stems every purely alphabetic token; others pass through.
TokenDocument stem_tokens(TokenDocument doc);

}  // namespace collabrec::corpus
