#include <benchmark/benchmark.h>

#include <algorithm>
#include <map>

#include "tagtime/bll.hpp"
#include "tagtime/ingestion.hpp"
#include "tagtime/recommenders.hpp"
#include "tagtime/split.hpp"
#include "tagtime/synthetic.hpp"

namespace {

using namespace tagtime;

const SplitResult& corpus(std::size_t users) {
  static std::map<std::size_t, SplitResult> cache;
  auto it = cache.find(users);
  if (it == cache.end()) {
    SyntheticSpec spec;
    spec.users = users;
    spec.items = users * 3 / 2;
    spec.tags = 200;
    spec.topics = 20;
    const auto f = remove_unique_resources(Folksonomy::from_raw(generate_synthetic(spec)));
    it = cache.emplace(users, chronological_split(f)).first;
  }
  return it->second;
}

void BM_NeighborIndexTopK(benchmark::State& state) {
  const auto& train = corpus(static_cast<std::size_t>(state.range(0))).train;
  const NeighborIndex index(user_vectors(train, ProfileKind::kBinaryItem));
  UserId u = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.top_k(u, 20));
    u = (u + 1) % static_cast<UserId>(index.size());
  }
}
BENCHMARK(BM_NeighborIndexTopK)->Arg(500)->Arg(2000)->Arg(8000);

// Reference: score every user, then sort.
void BM_BruteForceTopK(benchmark::State& state) {
  const auto& train = corpus(static_cast<std::size_t>(state.range(0))).train;
  const auto rows = user_vectors(train, ProfileKind::kBinaryItem);
  UserId u = 0;
  for (auto _ : state) {
    std::vector<Neighbor> all;
    for (UserId v = 0; v < rows.size(); ++v) {
      if (v == u) continue;
      const double s = cosine(rows[u], rows[v]);
      if (s > 0) all.push_back({v, s});
    }
    const auto k = std::min<std::size_t>(20, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                      [](const Neighbor& a, const Neighbor& b) {
                        return a.similarity != b.similarity ? a.similarity > b.similarity
                                                            : a.user < b.user;
                      });
    benchmark::DoNotOptimize(all.data());
    u = (u + 1) % static_cast<UserId>(rows.size());
  }
}
BENCHMARK(BM_BruteForceTopK)->Arg(500)->Arg(2000)->Arg(8000);

void BM_BllProfile(benchmark::State& state) {
  const auto& split = corpus(2000);
  const auto users = split.evaluable_users();
  std::size_t i = 0;
  for (auto _ : state) {
    const auto u = users[i++ % users.size()];
    benchmark::DoNotOptimize(build_bll_profile(split.train, u, split.reference_time[u], {},
                                               BllNormalization::kSoftmax));
  }
}
BENCHMARK(BM_BllProfile);

void BM_RecommendBatch(benchmark::State& state) {
  const auto& split = corpus(2000);
  RecommenderConfig config;
  config.algorithm = static_cast<Algorithm>(state.range(0));
  const auto rec = make_recommender(split.train, config);
  const auto users = split.evaluable_users();
  for (auto _ : state) benchmark::DoNotOptimize(recommend_all(*rec, users, 20, 1));
  state.SetLabel(std::string(to_string(config.algorithm)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(users.size()));
}
BENCHMARK(BM_RecommendBatch)
    ->Arg(static_cast<int>(Algorithm::kMostPopular))
    ->Arg(static_cast<int>(Algorithm::kCfBinary))
    ->Arg(static_cast<int>(Algorithm::kZheng))
    ->Arg(static_cast<int>(Algorithm::kHuang))
    ->Arg(static_cast<int>(Algorithm::kCirtt))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
