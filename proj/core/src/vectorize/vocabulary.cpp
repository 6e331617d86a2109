#include "collabrec/vectorize/vocabulary.hpp"

#include <map>
#include <set>

#include "collabrec/error.hpp"

namespace collabrec::vectorize {

Vocabulary Vocabulary::build(std::span<const corpus::TokenDocument> docs) {
  if (docs.empty()) throw validation_error("vocabulary: no documents");

  std::map<std::string, std::uint32_t> df;
  for (const auto& doc : docs) {
    const std::set<std::string> unique(doc.tokens.begin(), doc.tokens.end());
    for (const auto& term : unique) ++df[term];
  }
  if (df.empty()) throw validation_error("vocabulary: every document is empty");

  Vocabulary vocab;
  vocab.n_documents_ = docs.size();
  vocab.terms_.reserve(df.size());
  vocab.df_.reserve(df.size());
  for (auto& [term, count] : df) {
    vocab.index_.emplace(term, static_cast<std::uint32_t>(vocab.terms_.size()));
    vocab.terms_.push_back(term);
    vocab.df_.push_back(count);
  }
  return vocab;
}

std::optional<std::uint32_t> Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Vocabulary::document_frequency(std::string_view term) const {
  auto idx = index_of(term);
  return idx ? df_[*idx] : 0;
}

}  // namespace collabrec::vectorize
