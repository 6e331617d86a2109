#pragma once

#include "collabrec/corpus/text.hpp"
#include "collabrec/vectorize/representation.hpp"
#include "collabrec/vectorize/vocabulary.hpp"

namespace collabrec::vectorize {

enum class IdfLog { natural, base10 };

/// weight(t) = count(t, doc) / |doc| * log(n_documents / df(t)).
/// Tokens missing from the vocabulary are dropped but still count towards
/// |doc|. Zero weights are omitted. An empty document yields a zero vector
/// of full dimension.
SparseVector tfidf_vector(const corpus::TokenDocument& doc, const Vocabulary& vocab,
                          IdfLog log = IdfLog::natural);

}  // namespace collabrec::vectorize
