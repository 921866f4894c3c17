#include "tagtime/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tagtime/error.hpp"
#include "tagtime/stable_random.hpp"

namespace tagtime {

namespace {

// Index drawn proportionally to `weights`.
std::size_t draw_weighted(StableRandom& rng, const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double x = rng.uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  return weights.size() - 1;
}

}  // namespace

std::vector<RawAssignment> generate_synthetic(const SyntheticSpec& spec) {
  if (spec.topics < 2 || spec.items < spec.topics || spec.tags < spec.topics ||
      spec.min_posts < 2 || spec.max_posts < spec.min_posts || spec.tags_per_item < 1 ||
      !(spec.recent_share > 0.0 && spec.recent_share < 1.0) ||
      !(spec.core_share >= 0.0 && spec.core_share < 1.0) || spec.topics < 3)
    throw Error(ErrorKind::kConfig, "invalid synthetic folksonomy spec");

  StableRandom rng(spec.seed);
  const auto topic_of_item = [&](std::size_t i) { return i % spec.topics; };
  const auto topic_of_tag = [&](std::size_t t) { return t % spec.topics; };

  std::vector<std::vector<std::size_t>> topic_items(spec.topics), topic_tags(spec.topics);
  for (std::size_t i = 0; i < spec.items; ++i) topic_items[topic_of_item(i)].push_back(i);
  for (std::size_t t = 0; t < spec.tags; ++t) topic_tags[topic_of_tag(t)].push_back(t);

  // Characteristic tags per item, drawn from its topic.
  std::vector<std::vector<std::size_t>> item_tags(spec.items);
  for (std::size_t i = 0; i < spec.items; ++i) {
    auto pool = topic_tags[topic_of_item(i)];
    const auto take = std::min(spec.tags_per_item, pool.size());
    for (std::size_t k = 0; k < take; ++k) {
      std::swap(pool[k], pool[k + rng.below(pool.size() - k)]);
      item_tags[i].push_back(pool[k]);
    }
  }
  // Zipf-like popularity within each topic.
  std::vector<std::vector<double>> topic_weights(spec.topics);
  for (std::size_t c = 0; c < spec.topics; ++c)
    for (std::size_t r = 0; r < topic_items[c].size(); ++r)
      topic_weights[c].push_back(1.0 / std::sqrt(static_cast<double>(r + 1)));

  constexpr Timestamp kEpoch = 1'200'000'000;
  constexpr Timestamp kDay = 86'400;
  std::vector<RawAssignment> rows;
  for (std::size_t u = 0; u < spec.users; ++u) {
    // Three distinct topics: core, early side interest, late side interest.
    const auto core = rng.below(spec.topics);
    auto early = rng.below(spec.topics - 1);
    if (early >= core) ++early;
    auto late = rng.below(spec.topics - 2);
    for (auto used : {std::min(core, early), std::max(core, early)})
      if (late >= used) ++late;
    const auto n_posts =
        spec.min_posts + rng.below(spec.max_posts - spec.min_posts + 1);
    const auto n_late = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(spec.recent_share * static_cast<double>(n_posts))));

    Timestamp now = kEpoch + static_cast<Timestamp>(rng.below(365)) * kDay;
    std::vector<std::size_t> taken;
    for (std::size_t p = 0; p < n_posts; ++p) {
      const bool from_core = rng.uniform() < spec.core_share;
      const auto topic = from_core ? core : (p + n_late < n_posts ? early : late);
      auto weights = topic_weights[topic];
      for (std::size_t r = 0; r < weights.size(); ++r)
        if (std::find(taken.begin(), taken.end(), topic_items[topic][r]) != taken.end())
          weights[r] = 0.0;
      if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) break;
      const auto item = topic_items[topic][draw_weighted(rng, weights)];
      taken.push_back(item);

      now += (1 + static_cast<Timestamp>(rng.below(10))) * kDay +
             static_cast<Timestamp>(rng.below(kDay));
      // A non-empty subset of the item's characteristic tags.
      const auto& tags = item_tags[item];
      const auto n_tags = 1 + rng.below(tags.size());
      auto chosen = tags;
      for (std::size_t k = 0; k < n_tags; ++k)
        std::swap(chosen[k], chosen[k + rng.below(chosen.size() - k)]);
      for (std::size_t k = 0; k < n_tags; ++k) {
        rows.push_back({"u" + std::to_string(u), "i" + std::to_string(item),
                        "t" + std::to_string(chosen[k]), now});
      }
    }
  }
  return rows;
}

}  // namespace tagtime
