#include "collabrec/corpus/text.hpp"

#include <array>
#include <cctype>
#include <fstream>

#include "collabrec/corpus/porter.hpp"
#include "collabrec/error.hpp"

namespace collabrec::corpus {
namespace {

// Must stay identical to core/data/stopwords_en.txt (checked by a unit test).
constexpr std::array<std::string_view, 179> kEnglish = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're", "you've",
    "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he", "him", "his", "himself",
    "she", "she's", "her", "hers", "herself", "it", "it's", "its", "itself", "they", "them",
    "their", "theirs", "themselves", "what", "which", "who", "whom", "this", "that", "that'll",
    "these", "those", "am", "is", "are", "was", "were", "be", "been", "being", "have", "has",
    "had", "having", "do", "does", "did", "doing", "a", "an", "the", "and", "but", "if", "or",
    "because", "as", "until", "while", "of", "at", "by", "for", "with", "about", "against",
    "between", "into", "through", "during", "before", "after", "above", "below", "to", "from",
    "up", "down", "in", "out", "on", "off", "over", "under", "again", "further", "then", "once",
    "here", "there", "when", "where", "why", "how", "all", "any", "both", "each", "few", "more",
    "most", "other", "some", "such", "no", "nor", "not", "only", "own", "same", "so", "than",
    "too", "very", "s", "t", "can", "will", "just", "don", "don't", "should", "should've", "now",
    "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't", "didn",
    "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn", "hasn't", "haven", "haven't", "isn",
    "isn't", "ma", "mightn", "mightn't", "mustn", "mustn't", "needn", "needn't", "shan",
    "shan't", "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won", "won't",
    "wouldn", "wouldn't"};

bool token_byte(unsigned char c) {
  return std::isalnum(c) || c == '+' || c == '#' || c >= 0x80;
}

bool has_alnum(std::string_view s) {
  for (unsigned char c : s) {
    if (std::isalnum(c) || c >= 0x80) return true;
  }
  return false;
}

bool purely_alphabetic(std::string_view s) {
  for (unsigned char c : s) {
    if (c < 'a' || c > 'z') return false;
  }
  return !s.empty();
}

}  // namespace

std::span<const std::string_view> english_stopword_list() { return kEnglish; }

StopWords StopWords::english() {
  StopWords sw;
  for (auto w : kEnglish) sw.words_.emplace(w);
  return sw;
}

StopWords StopWords::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open stop-word file " + path.string());
  StopWords sw;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string word = line.substr(first, last - first + 1);
    for (auto& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    sw.words_.insert(std::move(word));
  }
  return sw;
}

StopWords StopWords::from_words(std::span<const std::string> words) {
  StopWords sw;
  for (const auto& w : words) sw.words_.insert(w);
  return sw;
}

bool StopWords::contains(std::string_view word) const { return words_.find(word) != words_.end(); }

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && has_alnum(current)) tokens.push_back(std::move(current));
    current.clear();
  };
  for (unsigned char c : text) {
    if (token_byte(c)) {
      current += static_cast<char>(c < 0x80 ? std::tolower(c) : c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

TokenDocument preprocess_text(std::string profile_id, std::string_view raw_text,
                              const StopWords& stopwords) {
  TokenDocument doc;
  doc.profile_id = std::move(profile_id);
  doc.raw_text = std::string(raw_text);
  for (auto& tok : tokenize(raw_text)) {
    if (!stopwords.contains(tok)) doc.tokens.push_back(std::move(tok));
  }
  return doc;
}

TokenDocument preprocess(const Profile& profile, const StopWords& stopwords) {
  return preprocess_text(profile.id, combined_text(profile), stopwords);
}

TokenDocument stem_tokens(TokenDocument doc) {
  for (auto& tok : doc.tokens) {
    if (purely_alphabetic(tok)) tok = porter_stem(tok);
  }
  return doc;
}

}  // namespace collabrec::corpus
