#include "tagtime/split.hpp"

#include <algorithm>
#include <cmath>

#include "tagtime/error.hpp"

namespace tagtime {

std::vector<UserId> SplitResult::evaluable_users() const {
  std::vector<UserId> users;
  for (UserId u = 0; u < test.size(); ++u)
    if (!test[u].empty() && !train.user_posts(u).empty()) users.push_back(u);
  return users;
}

Timestamp reference_time(const Folksonomy& train, UserId user) {
  const auto last = train.last_timestamp(user);
  return last < 0 ? -1 : last + 1;
}

SplitResult chronological_split(const Folksonomy& f, double test_fraction) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw Error(ErrorKind::kConfig, "test fraction must lie in (0, 1)");

  const auto posts = f.posts();
  std::vector<char> held_out(posts.size(), 0);
  SplitResult out;
  out.test.resize(f.user_space());

  std::vector<Folksonomy::PostIndex> order;
  for (UserId u = 0; u < f.user_space(); ++u) {
    const auto mine = f.user_posts(u);
    const auto n = mine.size();
    if (n < 2) continue;
    order.assign(mine.begin(), mine.end());
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      if (posts[a].timestamp != posts[b].timestamp)
        return posts[a].timestamp < posts[b].timestamp;
      return posts[a].item < posts[b].item;
    });
    const auto n_test = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(test_fraction * static_cast<double>(n))));
    for (std::size_t k = n - n_test; k < n; ++k) {
      held_out[order[k]] = 1;
      out.test[u].push_back(posts[order[k]].item);
    }
    std::sort(out.test[u].begin(), out.test[u].end());
  }

  out.train = f.filter_posts(
      [&](const Post& p) { return held_out[&p - posts.data()] == 0; },
      VocabularyMode::kRetain);

  out.reference_time.resize(f.user_space());
  for (UserId u = 0; u < f.user_space(); ++u)
    out.reference_time[u] = reference_time(out.train, u);
  return out;
}

std::size_t count_split_overlap(const SplitResult& split) {
  std::size_t overlap = 0;
  for (UserId u = 0; u < split.test.size(); ++u)
    for (auto item : split.test[u])
      if (split.train.find_post(u, item) != nullptr) ++overlap;
  return overlap;
}

}  // namespace tagtime
