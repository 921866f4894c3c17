#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tagtime/bll.hpp"
#include "tagtime/folksonomy.hpp"
#include "tagtime/similarity.hpp"

namespace tagtime {

enum class Algorithm {
  kMostPopular,  // MP
  kCfBinary,     // CF_B
  kCfTag,        // CF_T
  kZheng,        // Z: exponential-decay weighted user-item matrix
  kHuang,        // H: linear-decay tag profiles, two-step ranking
  kCirtt,        // CIRTT
};

std::string_view to_string(Algorithm algorithm) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;
std::span<const Algorithm> all_algorithms() noexcept;

/// Item-item similarity used by the CIRTT ranking step.
enum class ItemSimilarity {
  /// Cosine between binary tagger columns of the user-item matrix.
  kBinaryTaggers,
  /// Cosine between aggregated tag-count vectors.
  kTagVectors,
};

struct RecommenderConfig {
  Algorithm algorithm = Algorithm::kCirtt;
  std::size_t neighbors = 20;
  std::size_t list_length = 20;
  BllParams bll;
  BllNormalization bll_normalization = BllNormalization::kSoftmax;
  ItemSimilarity cirtt_item_similarity = ItemSimilarity::kBinaryTaggers;
  /// Z decay timescale in seconds.
  double zheng_timescale = 100.0 * 86400.0;
  /// H lower bound on per-use weights.
  double huang_floor = 0.0;

  /// Throws Error(kConfig) unless neighbors >= 1, list_length >= 1,
  /// timescale > 0, decay > 0 and 0 <= floor <= 1.
  void validate() const;
};

struct ScoredItem {
  ItemId item = 0;
  double score = 0.0;

  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

/// Recommendations for one user: scores non-increasing, ties by item id
/// ascending (CIRTT breaks pred ties by its item-CF sum first). Never
/// contains an item of the user's train profile.
struct RankedList {
  UserId user = 0;
  std::vector<ScoredItem> items;

  std::vector<ItemId> item_ids() const;
};

/// Scores unseen items for a user from train data only.
///
/// Implementations precompute their vectors and indexes at construction and
/// are immutable afterwards, so recommend() may be called concurrently. The
/// train folksonomy must outlive the recommender.
class Recommender {
 public:
  virtual ~Recommender() = default;

  virtual Algorithm algorithm() const noexcept = 0;

  /// Top `n` items. Users without a train profile or without neighbors get
  /// an empty list (except MP, which serves everyone).
  virtual RankedList recommend(UserId user, std::size_t n) const = 0;

  /// The pool recommend() ranks, item-ascending.
  virtual std::vector<ItemId> candidates(UserId user) const = 0;
};

std::unique_ptr<Recommender> make_recommender(const Folksonomy& train,
                                              const RecommenderConfig& config);

/// Items of the neighbors that `user` has not bookmarked, item-ascending.
/// CF_B, CF_T, Z, H and CIRTT all draw their candidates through here.
std::vector<ItemId> neighbor_candidates(const Folksonomy& train, const Neighborhood& hood,
                                        UserId user);

/// Per-user Z weights: |tags on i| * exp(-(reference - post time) / timescale).
SparseVector zheng_weighted_items(const Folksonomy& train, UserId user, double timescale);

/// Per-user H weights: linear-decay weighted tag frequencies.
SparseVector huang_weighted_tags(const Folksonomy& train, UserId user, double floor);

// One-shot conveniences; each builds its model from scratch.
RankedList recommend_mp(const Folksonomy& train, UserId user, std::size_t n);
RankedList recommend_cf(const Folksonomy& train, UserId user, std::size_t n, ProfileKind kind,
                        std::size_t k = 20);
RankedList recommend_cirtt(const Folksonomy& train, UserId user, std::size_t n,
                           const RecommenderConfig& config);
RankedList recommend_zheng(const Folksonomy& train, UserId user, std::size_t n,
                           const RecommenderConfig& config);
RankedList recommend_huang(const Folksonomy& train, UserId user, std::size_t n,
                           const RecommenderConfig& config);

/// Runs `recommender` for every user in `users` on up to `workers` threads.
/// Output order follows `users` regardless of scheduling.
std::vector<RankedList> recommend_all(const Recommender& recommender,
                                      std::span<const UserId> users, std::size_t n,
                                      unsigned workers);

}  // namespace tagtime
