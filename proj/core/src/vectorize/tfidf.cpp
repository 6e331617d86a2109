#include "collabrec/vectorize/tfidf.hpp"

#include <cmath>
#include <map>

namespace collabrec::vectorize {

SparseVector tfidf_vector(const corpus::TokenDocument& doc, const Vocabulary& vocab, IdfLog log) {
  SparseVector out;
  out.dimension = vocab.size();
  if (doc.tokens.empty()) return out;

  std::map<std::uint32_t, std::size_t> counts;
  for (const auto& tok : doc.tokens) {
    if (auto idx = vocab.index_of(tok)) ++counts[*idx];
  }

  const double length = static_cast<double>(doc.tokens.size());
  const double n = static_cast<double>(vocab.n_documents());
  for (const auto& [index, count] : counts) {
    const double ratio = n / static_cast<double>(vocab.document_frequency(index));
    const double idf = log == IdfLog::natural ? std::log(ratio) : std::log10(ratio);
    const double weight = (static_cast<double>(count) / length) * idf;
    if (weight != 0.0) out.entries.emplace_back(index, weight);
  }
  return out;
}

}  // namespace collabrec::vectorize
