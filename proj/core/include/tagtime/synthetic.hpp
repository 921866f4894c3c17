#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tagtime/folksonomy.hpp"

namespace tagtime {

/// Shape of a generated folksonomy with drifting user interests.
///
/// Items and tags are partitioned into topics. Every user keeps one core
/// topic throughout and has a side interest that drifts: early side posts
/// come from one topic, recent ones from another. Items are tagged with a
/// subset of their characteristic tags, so a user's most recent posts carry
/// tags the user used recently while the abandoned topic's tags age out.
struct SyntheticSpec {
  std::size_t users = 200;
  std::size_t items = 300;
  std::size_t tags = 100;
  std::size_t topics = 10;
  std::size_t min_posts = 12;
  std::size_t max_posts = 24;
  /// Probability that a post comes from the user's core topic.
  double core_share = 0.5;
  /// Share of the timeline (most recent end) whose side posts use the new topic.
  double recent_share = 0.4;
  /// Characteristic tags per item.
  std::size_t tags_per_item = 3;
  std::uint64_t seed = 1;
};

/// Deterministic for a fixed spec on every platform. Names are "u<n>",
/// "i<n>" and "t<n>".
std::vector<RawAssignment> generate_synthetic(const SyntheticSpec& spec);

}  // namespace tagtime
