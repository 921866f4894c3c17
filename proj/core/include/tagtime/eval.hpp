#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tagtime/recommenders.hpp"
#include "tagtime/split.hpp"

namespace tagtime {

/// Metrics are reported for cut-offs 1..kMaxCutoff from one list of this length.
inline constexpr std::size_t kMaxCutoff = 20;

// Single-user metrics. `relevant` must be sorted and non-empty; `k` >= 1.

/// Binary-relevance nDCG with log2 discounts.
double ndcg_at_k(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
                 std::size_t k);

/// Truncated average precision with denominator min(|relevant|, k).
double map_at_k(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
                std::size_t k);

double recall_at_k(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
                   std::size_t k);

/// Mean pairwise (1 - cosine) between the items' tag vectors; 0 below two items.
double diversity(std::span<const ItemId> recommended,
                 const std::vector<SparseVector>& item_tag_vectors);

/// Fraction of `evaluable` users that received at least one item.
double user_coverage(const std::map<UserId, RankedList>& results,
                     std::span<const UserId> evaluable);

/// How users whose list is empty enter the accuracy means.
enum class UnservablePolicy {
  /// Score 0 and stay in the denominator.
  kCountAsZero,
  /// Leave the accuracy means entirely.
  kExclude,
};

struct EvalOptions {
  unsigned workers = 1;
  UnservablePolicy unservable = UnservablePolicy::kCountAsZero;
};

struct AlgorithmReport {
  std::string algorithm;
  std::array<double, kMaxCutoff> ndcg{};    // index k-1
  std::array<double, kMaxCutoff> map{};
  std::array<double, kMaxCutoff> recall{};
  double diversity = 0.0;
  double user_coverage = 0.0;
  std::size_t evaluated_users = 0;
  std::size_t covered_users = 0;
};

/// Provenance plus one section per algorithm.
struct EvalReport {
  std::string dataset_fingerprint;
  std::string config_hash;
  std::string config_echo;
  std::uint64_t seed = 0;
  std::vector<AlgorithmReport> algorithms;
};

/// Test-data leakage counters; all zero on a sound split.
struct LeakageAudit {
  std::size_t train_posts = 0;        // test pair present as a train post
  std::size_t user_vectors = 0;       // test item inside the user's item vector
  std::size_t item_vectors = 0;       // user inside the test item's tagger vector
  std::size_t future_uses = 0;        // train use at or after the reference time
  std::size_t checked_pairs = 0;

  std::size_t violations() const {
    return train_posts + user_vectors + item_vectors + future_uses;
  }
};

LeakageAudit audit_leakage(const SplitResult& split);

/// Requests kMaxCutoff items per evaluable user and averages per-user metrics
/// in ascending user order. Throws Error(kEmptyDataset) without evaluable
/// users and Error(kFormat) when the leakage audit finds a violation.
AlgorithmReport evaluate(const Recommender& recommender, const SplitResult& split,
                         const EvalOptions& options = {});

/// Same, reusing lists computed for split.evaluable_users() in that order.
AlgorithmReport evaluate_lists(Algorithm algorithm, std::span<const RankedList> lists,
                               const SplitResult& split, const EvalOptions& options = {});

}  // namespace tagtime
