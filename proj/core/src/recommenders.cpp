#include "tagtime/recommenders.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

#include "tagtime/error.hpp"
#include "tagtime/parallel.hpp"
#include "tagtime/split.hpp"

namespace tagtime {

namespace {

constexpr std::array<Algorithm, 6> kAlgorithms = {
    Algorithm::kMostPopular, Algorithm::kCfTag,  Algorithm::kCfBinary,
    Algorithm::kZheng,       Algorithm::kHuang,  Algorithm::kCirtt,
};

std::vector<ItemId> items_of(const Folksonomy& train, UserId user) {
  std::vector<ItemId> items;
  for (auto p : train.user_posts(user)) items.push_back(train.posts()[p].item);
  return items;  // item-ascending by construction of the post index
}

bool contains(std::span<const ItemId> sorted, ItemId item) {
  return std::binary_search(sorted.begin(), sorted.end(), item);
}

bool by_score(const ScoredItem& a, const ScoredItem& b) {
  return a.score != b.score ? a.score > b.score : a.item < b.item;
}

RankedList top_n(UserId user, std::vector<ScoredItem> scored, std::size_t n) {
  if (scored.size() > n) {
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n),
                      scored.end(), by_score);
    scored.resize(n);
  } else {
    std::sort(scored.begin(), scored.end(), by_score);
  }
  return {user, std::move(scored)};
}

std::vector<Timestamp> reference_times(const Folksonomy& train) {
  std::vector<Timestamp> refs(train.user_space());
  for (UserId u = 0; u < refs.size(); ++u) refs[u] = reference_time(train, u);
  return refs;
}

std::vector<SparseVector> item_vectors(const Folksonomy& train, bool taggers) {
  std::vector<SparseVector> rows;
  rows.reserve(train.item_space());
  for (ItemId i = 0; i < train.item_space(); ++i)
    rows.push_back(taggers ? item_tagger_vector(train, i) : item_tag_vector(train, i));
  return rows;
}

// Sum over j in `owned` of cosine(vectors[item], vectors[j]), j ascending.
double item_cf_sum(const std::vector<SparseVector>& vectors, ItemId item,
                   std::span<const ItemId> owned) {
  double sum = 0.0;
  for (auto j : owned) sum += cosine(vectors[item], vectors[j]);
  return sum;
}

class MostPopular final : public Recommender {
 public:
  explicit MostPopular(const Folksonomy& train) : train_(train) {
    for (ItemId i = 0; i < train.item_space(); ++i) {
      const auto count = train.item_posts(i).size();
      if (count > 0) ranking_.push_back({i, static_cast<double>(count)});
    }
    std::sort(ranking_.begin(), ranking_.end(), by_score);
  }

  Algorithm algorithm() const noexcept override { return Algorithm::kMostPopular; }

  RankedList recommend(UserId user, std::size_t n) const override {
    const auto owned = items_of(train_, user);
    RankedList out{user, {}};
    for (const auto& s : ranking_) {
      if (out.items.size() >= n) break;
      if (!contains(owned, s.item)) out.items.push_back(s);
    }
    return out;
  }

  std::vector<ItemId> candidates(UserId user) const override {
    const auto owned = items_of(train_, user);
    std::vector<ItemId> out;
    for (const auto& s : ranking_)
      if (!contains(owned, s.item)) out.push_back(s.item);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const Folksonomy& train_;
  std::vector<ScoredItem> ranking_;  // count-descending, id-ascending
};

// Shared shape of the user-based algorithms: a neighbor index over per-user
// vectors, with candidates drawn from the neighbors' items.
class NeighborhoodRecommender : public Recommender {
 public:
  NeighborhoodRecommender(const Folksonomy& train, std::vector<SparseVector> rows,
                          std::size_t k)
      : train_(train), index_(std::move(rows)), k_(k) {}

  std::vector<ItemId> candidates(UserId user) const override {
    const auto hood = neighborhood(user);
    if (!hood) return {};
    return neighbor_candidates(train_, *hood, user);
  }

 protected:
  std::optional<Neighborhood> neighborhood(UserId user) const {
    if (user >= index_.size() || index_.row(user).empty()) return std::nullopt;
    return index_.top_k(user, k_);
  }

  const Folksonomy& train_;
  NeighborIndex index_;
  std::size_t k_;
};

// CF_B, CF_T and Z: score(u, i) = sum over neighbors v of sim(u, v) * w(v, i),
// where w is 1 for the binary and tag variants and W(v, i) for Z.
class UserCf final : public NeighborhoodRecommender {
 public:
  UserCf(const Folksonomy& train, Algorithm algorithm, std::vector<SparseVector> rows,
         std::size_t k, bool weighted)
      : NeighborhoodRecommender(train, std::move(rows), k),
        algorithm_(algorithm),
        weighted_(weighted) {}

  Algorithm algorithm() const noexcept override { return algorithm_; }

  RankedList recommend(UserId user, std::size_t n) const override {
    const auto hood = neighborhood(user);
    if (!hood) return {user, {}};
    const auto owned = items_of(train_, user);
    std::vector<double> score(train_.item_space(), 0.0);
    std::vector<char> seen(train_.item_space(), 0);
    std::vector<ItemId> touched;
    for (const auto& nb : hood->neighbors) {
      for (auto p : train_.user_posts(nb.user)) {
        const ItemId item = train_.posts()[p].item;
        if (contains(owned, item)) continue;
        const double w = weighted_ ? index_.row(nb.user).weight(item) : 1.0;
        score[item] += nb.similarity * w;
        if (!seen[item]) {
          seen[item] = 1;
          touched.push_back(item);
        }
      }
    }
    std::vector<ScoredItem> scored;
    scored.reserve(touched.size());
    for (auto item : touched) scored.push_back({item, score[item]});
    return top_n(user, std::move(scored), n);
  }

 private:
  Algorithm algorithm_;
  bool weighted_;
};

class Cirtt final : public NeighborhoodRecommender {
 public:
  Cirtt(const Folksonomy& train, const RecommenderConfig& config)
      : NeighborhoodRecommender(train, user_vectors(train, ProfileKind::kBinaryItem),
                                config.neighbors),
        config_(config),
        refs_(reference_times(train)),
        item_vectors_(item_vectors(
            train, config.cirtt_item_similarity == ItemSimilarity::kBinaryTaggers)) {
    item_tags_.resize(train.item_space());
    for (ItemId i = 0; i < train.item_space(); ++i)
      for (const auto& tc : train.item_tags(i)) item_tags_[i].push_back(tc.tag);
  }

  Algorithm algorithm() const noexcept override { return Algorithm::kCirtt; }

  RankedList recommend(UserId user, std::size_t n) const override {
    const auto hood = neighborhood(user);
    if (!hood) return {user, {}};
    const auto pool = neighbor_candidates(train_, *hood, user);
    if (pool.empty()) return {user, {}};

    const auto owned = items_of(train_, user);
    const auto profile = build_bll_profile(train_, user, refs_[user], config_.bll,
                                           config_.bll_normalization);
    struct Candidate {
      ItemId item;
      double pred;
      double sim;
    };
    std::vector<Candidate> ranked;
    ranked.reserve(pool.size());
    for (auto item : pool) {
      const double sim = item_cf_sum(item_vectors_, item, owned);
      ranked.push_back({item, sim * bll_item(profile, item_tags_[item]), sim});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Candidate& a, const Candidate& b) {
      if (a.pred != b.pred) return a.pred > b.pred;
      if (a.sim != b.sim) return a.sim > b.sim;
      return a.item < b.item;
    });
    RankedList out{user, {}};
    for (std::size_t r = 0; r < ranked.size() && r < n; ++r)
      out.items.push_back({ranked[r].item, ranked[r].pred});
    return out;
  }

 private:
  RecommenderConfig config_;
  std::vector<Timestamp> refs_;
  std::vector<SparseVector> item_vectors_;
  std::vector<std::vector<TagId>> item_tags_;
};

class Huang final : public NeighborhoodRecommender {
 public:
  Huang(const Folksonomy& train, std::vector<SparseVector> rows, std::size_t k)
      : NeighborhoodRecommender(train, std::move(rows), k),
        item_vectors_(item_vectors(train, /*taggers=*/false)) {}

  Algorithm algorithm() const noexcept override { return Algorithm::kHuang; }

  RankedList recommend(UserId user, std::size_t n) const override {
    const auto hood = neighborhood(user);
    if (!hood) return {user, {}};
    const auto owned = items_of(train_, user);
    std::vector<ScoredItem> scored;
    for (auto item : neighbor_candidates(train_, *hood, user))
      scored.push_back({item, item_cf_sum(item_vectors_, item, owned)});
    return top_n(user, std::move(scored), n);
  }

 private:
  std::vector<SparseVector> item_vectors_;
};

}  // namespace

std::string_view to_string(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::kMostPopular: return "MP";
    case Algorithm::kCfBinary: return "CF_B";
    case Algorithm::kCfTag: return "CF_T";
    case Algorithm::kZheng: return "Z";
    case Algorithm::kHuang: return "H";
    case Algorithm::kCirtt: return "CIRTT";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (auto a : kAlgorithms)
    if (to_string(a) == name) return a;
  return std::nullopt;
}

std::span<const Algorithm> all_algorithms() noexcept { return kAlgorithms; }

void RecommenderConfig::validate() const {
  if (neighbors < 1) throw Error(ErrorKind::kConfig, "neighbors must be at least 1");
  if (list_length < 1) throw Error(ErrorKind::kConfig, "list length must be at least 1");
  if (!(bll.decay > 0.0)) throw Error(ErrorKind::kConfig, "BLL decay must be positive");
  if (!(zheng_timescale > 0.0)) throw Error(ErrorKind::kConfig, "Z timescale must be positive");
  if (!(huang_floor >= 0.0 && huang_floor <= 1.0))
    throw Error(ErrorKind::kConfig, "H floor must lie in [0, 1]");
}

std::vector<ItemId> RankedList::item_ids() const {
  std::vector<ItemId> ids;
  ids.reserve(items.size());
  for (const auto& s : items) ids.push_back(s.item);
  return ids;
}

std::vector<ItemId> neighbor_candidates(const Folksonomy& train, const Neighborhood& hood,
                                        UserId user) {
  const auto owned = items_of(train, user);
  std::vector<ItemId> pool;
  for (const auto& nb : hood.neighbors)
    for (auto p : train.user_posts(nb.user)) pool.push_back(train.posts()[p].item);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::erase_if(pool, [&](ItemId i) { return contains(owned, i); });
  return pool;
}

SparseVector zheng_weighted_items(const Folksonomy& train, UserId user, double timescale) {
  const auto ref = reference_time(train, user);
  std::vector<SparseVector::Entry> entries;
  for (auto p : train.user_posts(user)) {
    const auto& post = train.posts()[p];
    const double age = static_cast<double>(ref - post.timestamp);
    entries.push_back(
        {post.item, static_cast<double>(post.tags.size()) * std::exp(-age / timescale)});
  }
  return SparseVector::from_entries(std::move(entries));
}

SparseVector huang_weighted_tags(const Folksonomy& train, UserId user, double floor) {
  const auto posts = train.user_posts(user);
  if (posts.empty()) return {};
  Timestamp first = std::numeric_limits<Timestamp>::max();
  Timestamp last = std::numeric_limits<Timestamp>::min();
  for (auto p : posts)
    for (const auto& a : train.assignments(train.posts()[p])) {
      first = std::min(first, a.timestamp);
      last = std::max(last, a.timestamp);
    }
  const Timestamp ref = last + 1;
  std::vector<SparseVector::Entry> entries;
  for (auto p : posts)
    for (const auto& a : train.assignments(train.posts()[p])) {
      // A user whose uses all share one instant has no time axis to decay
      // along; every use counts fully.
      const double lin = last == first ? 1.0
                                       : static_cast<double>(a.timestamp - first) /
                                             static_cast<double>(ref - first);
      entries.push_back({a.tag, std::max(floor, lin)});
    }
  return SparseVector::from_entries(std::move(entries));
}

std::unique_ptr<Recommender> make_recommender(const Folksonomy& train,
                                              const RecommenderConfig& config) {
  config.validate();
  const auto k = config.neighbors;
  switch (config.algorithm) {
    case Algorithm::kMostPopular:
      return std::make_unique<MostPopular>(train);
    case Algorithm::kCfBinary:
      return std::make_unique<UserCf>(train, Algorithm::kCfBinary,
                                      user_vectors(train, ProfileKind::kBinaryItem), k, false);
    case Algorithm::kCfTag:
      return std::make_unique<UserCf>(train, Algorithm::kCfTag,
                                      user_vectors(train, ProfileKind::kTagProfile), k, false);
    case Algorithm::kZheng: {
      std::vector<SparseVector> rows;
      for (UserId u = 0; u < train.user_space(); ++u)
        rows.push_back(zheng_weighted_items(train, u, config.zheng_timescale));
      return std::make_unique<UserCf>(train, Algorithm::kZheng, std::move(rows), k, true);
    }
    case Algorithm::kHuang: {
      std::vector<SparseVector> rows;
      for (UserId u = 0; u < train.user_space(); ++u)
        rows.push_back(huang_weighted_tags(train, u, config.huang_floor));
      return std::make_unique<Huang>(train, std::move(rows), k);
    }
    case Algorithm::kCirtt:
      return std::make_unique<Cirtt>(train, config);
  }
  throw Error(ErrorKind::kConfig, "unknown algorithm");
}

RankedList recommend_mp(const Folksonomy& train, UserId user, std::size_t n) {
  RecommenderConfig config;
  config.algorithm = Algorithm::kMostPopular;
  return make_recommender(train, config)->recommend(user, n);
}

RankedList recommend_cf(const Folksonomy& train, UserId user, std::size_t n, ProfileKind kind,
                        std::size_t k) {
  RecommenderConfig config;
  config.algorithm = kind == ProfileKind::kBinaryItem ? Algorithm::kCfBinary : Algorithm::kCfTag;
  config.neighbors = k;
  return make_recommender(train, config)->recommend(user, n);
}

namespace {

RankedList recommend_with(const Folksonomy& train, UserId user, std::size_t n,
                          RecommenderConfig config, Algorithm algorithm) {
  config.algorithm = algorithm;
  return make_recommender(train, config)->recommend(user, n);
}

}  // namespace

RankedList recommend_cirtt(const Folksonomy& train, UserId user, std::size_t n,
                           const RecommenderConfig& config) {
  return recommend_with(train, user, n, config, Algorithm::kCirtt);
}

RankedList recommend_zheng(const Folksonomy& train, UserId user, std::size_t n,
                           const RecommenderConfig& config) {
  return recommend_with(train, user, n, config, Algorithm::kZheng);
}

RankedList recommend_huang(const Folksonomy& train, UserId user, std::size_t n,
                           const RecommenderConfig& config) {
  return recommend_with(train, user, n, config, Algorithm::kHuang);
}

std::vector<RankedList> recommend_all(const Recommender& recommender,
                                      std::span<const UserId> users, std::size_t n,
                                      unsigned workers) {
  std::vector<RankedList> out(users.size());
  parallel_for(users.size(), workers,
               [&](std::size_t i) { out[i] = recommender.recommend(users[i], n); });
  return out;
}

}  // namespace tagtime
