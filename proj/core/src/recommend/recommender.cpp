#include "collabrec/recommend/recommender.hpp"

#include <algorithm>
#include <cctype>

#include "collabrec/simcluster/similarity.hpp"

namespace collabrec::recommend {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
           return std::tolower(x) == std::tolower(y);
         });
}

}  // namespace

std::vector<Recommendation> recommend(const RecommendationQuery& query, const CorpusIndex& index,
                                      const std::unordered_set<std::string>& exclude) {
  if (query.k == 0) throw validation_error("k must be at least 1");
  const auto target = index.find(query.target_id);
  if (!target) throw Error(ErrorKind::not_found, "unknown target profile " + query.target_id);

  const auto vectors = index.vectors(query.technique);
  const auto& target_profile = index.profile(*target);

  RecommendationFilters filters = query.filters.enabled ? query.filters : RecommendationFilters{};
  std::optional<std::string> collaborate = filters.collaborate_with;
  if (!collaborate && filters.use_target_preference && !target_profile.collaboration_with.empty()) {
    collaborate = target_profile.collaboration_with;
  }

  struct Scored {
    std::size_t index;
    double similarity;
  };
  std::vector<Scored> scored;
  for (std::size_t i = 0; i < index.profiles().size(); ++i) {
    if (i == *target) continue;
    const auto& p = index.profile(i);
    if (exclude.contains(p.id)) continue;
    if (collaborate && !iequals(p.profession, *collaborate)) continue;
    if (filters.profession && !iequals(p.profession, *filters.profession)) continue;
    if (filters.interest && !iequals(p.interest, *filters.interest)) continue;
    scored.push_back({i, simcluster::cosine_similarity(vectors[*target], vectors[i])});
  }
  if (scored.empty()) {
    throw NoCandidatesError("no candidates left for " + query.target_id + " after filtering");
  }

  const std::size_t k = std::min(query.k, scored.size());
  auto better = [&](const Scored& a, const Scored& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return index.profile(a.index).id < index.profile(b.index).id;
  };
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end(), better);

  const auto clusters = index.cluster_ids(query.technique);
  std::vector<Recommendation> out;
  out.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    Recommendation rec;
    rec.candidate_id = index.profile(scored[r].index).id;
    rec.similarity = scored[r].similarity;
    if (!clusters.empty()) rec.cluster = clusters[scored[r].index];
    rec.rank = r + 1;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace collabrec::recommend
