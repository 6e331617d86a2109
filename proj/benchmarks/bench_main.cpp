#include <benchmark/benchmark.h>

#include "collabrec/corpus/synthetic.hpp"
#include "collabrec/recommend/corpus_index.hpp"
#include "collabrec/recommend/recommender.hpp"
#include "collabrec/simcluster/affinity.hpp"
#include "collabrec/simcluster/similarity.hpp"
#include "collabrec/vectorize/embedding.hpp"

using namespace collabrec;
using vectorize::Technique;

namespace {

std::vector<corpus::Profile> corpus_of(std::size_t n) {
  const auto pool = corpus::load_skill_pool(COLLABREC_CORE_POOL);
  return corpus::generate_synthetic(pool, n, 42);
}

const vectorize::HashedProjectionProvider& provider() {
  static const vectorize::HashedProjectionProvider p;
  return p;
}

void BM_BuildIndex(benchmark::State& state) {
  const auto profiles = corpus_of(static_cast<std::size_t>(state.range(0)));
  const Technique all[] = {Technique::tfidf, Technique::embedding, Technique::hybrid};
  for (auto _ : state) {
    auto index = recommend::build_index(profiles, corpus::StopWords::english(), &provider(), all);
    benchmark::DoNotOptimize(index);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildIndex)->Arg(200)->Arg(1000);

void BM_SimilarityMatrix(benchmark::State& state) {
  const auto profiles = corpus_of(static_cast<std::size_t>(state.range(0)));
  const Technique t[] = {Technique::hybrid};
  const auto index = recommend::build_index(profiles, corpus::StopWords::english(), &provider(), t);
  for (auto _ : state) {
    auto sim = simcluster::similarity_matrix(index.vectors(Technique::hybrid), Technique::hybrid);
    benchmark::DoNotOptimize(sim);
  }
}
BENCHMARK(BM_SimilarityMatrix)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_AffinityPropagation(benchmark::State& state) {
  const auto profiles = corpus_of(static_cast<std::size_t>(state.range(0)));
  const Technique t[] = {Technique::hybrid};
  const auto index = recommend::build_index(profiles, corpus::StopWords::english(), &provider(), t);
  const auto sim = simcluster::similarity_matrix(index.vectors(Technique::hybrid), Technique::hybrid);
  for (auto _ : state) {
    auto a = simcluster::affinity_propagation(sim);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_AffinityPropagation)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_Recommend(benchmark::State& state) {
  const auto profiles = corpus_of(1000);
  const Technique t[] = {Technique::hybrid};
  const auto index = recommend::build_index(profiles, corpus::StopWords::english(), &provider(), t);
  recommend::RecommendationQuery q;
  q.target_id = profiles.front().id;
  q.filters.enabled = false;
  for (auto _ : state) {
    auto r = recommend::recommend(q, index);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Recommend);

}  // namespace
BENCHMARK_MAIN();
