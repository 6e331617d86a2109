#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "collabrec/corpus/text.hpp"

namespace collabrec::vectorize {

/// Term index plus document frequencies over a fixed corpus. Terms are
/// indexed in lexicographic order.
class Vocabulary {
 public:
  /// Throws a validation Error if `docs` is empty or every document is empty.
  static Vocabulary build(std::span<const corpus::TokenDocument> docs);

  std::optional<std::uint32_t> index_of(std::string_view term) const;
  const std::string& term(std::uint32_t index) const { return terms_.at(index); }
  std::uint32_t document_frequency(std::uint32_t index) const { return df_.at(index); }
  /// Zero for terms outside the vocabulary.
  std::uint32_t document_frequency(std::string_view term) const;

  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t n_documents() const noexcept { return n_documents_; }

 private:
  std::vector<std::string> terms_;
  std::vector<std::uint32_t> df_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t n_documents_ = 0;
};

}  // namespace collabrec::vectorize
