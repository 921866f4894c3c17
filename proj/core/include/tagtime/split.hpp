#pragma once

#include <cstddef>
#include <vector>

#include "tagtime/folksonomy.hpp"

namespace tagtime {

/// Chronological per-user train/test partition.
///
/// `train` shares the source vocabulary, so user and item ids in `test` and
/// `reference_time` index the same spaces as `train`.
struct SplitResult {
  Folksonomy train;
  /// Held-out item ids per user, item-ascending; empty for train-only users.
  std::vector<std::vector<ItemId>> test;
  /// Per user: last train assignment timestamp + 1, or -1 without train data.
  std::vector<Timestamp> reference_time;

  /// Users with a non-empty test set, ascending.
  std::vector<UserId> evaluable_users() const;
};

/// The reference time of one user: last train assignment timestamp + 1, or
/// -1 when the user has no train data.
Timestamp reference_time(const Folksonomy& train, UserId user);

/// For each user with n >= 2 posts, the max(1, floor(test_fraction * n)) most
/// recent posts are held out; timestamp ties are ordered by item id, with the
/// larger id counted as more recent. Users with one post are train-only.
SplitResult chronological_split(const Folksonomy& f, double test_fraction = 0.2);

/// Number of post-level test pairs that appear in the train folksonomy.
std::size_t count_split_overlap(const SplitResult& split);

}  // namespace tagtime
