#include "tagtime/eval.hpp"

#include <algorithm>
#include <cmath>

#include "tagtime/error.hpp"
#include "tagtime/parallel.hpp"

namespace tagtime {

namespace {

bool is_relevant(std::span<const ItemId> relevant, ItemId item) {
  return std::binary_search(relevant.begin(), relevant.end(), item);
}

double discount(std::size_t rank) {  // rank is 1-based
  return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
}

}  // namespace

double ndcg_at_k(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
                 std::size_t k) {
  if (relevant.empty() || k == 0) return 0.0;
  double dcg = 0.0;
  const auto depth = std::min(k, recommended.size());
  for (std::size_t r = 0; r < depth; ++r)
    if (is_relevant(relevant, recommended[r])) dcg += discount(r + 1);
  double idcg = 0.0;
  const auto ideal = std::min(k, relevant.size());
  for (std::size_t r = 0; r < ideal; ++r) idcg += discount(r + 1);
  return dcg / idcg;
}

double map_at_k(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
                std::size_t k) {
  if (relevant.empty() || k == 0) return 0.0;
  double sum = 0.0;
  std::size_t hits = 0;
  const auto depth = std::min(k, recommended.size());
  for (std::size_t r = 0; r < depth; ++r) {
    if (is_relevant(relevant, recommended[r])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(r + 1);
    }
  }
  return sum / static_cast<double>(std::min(k, relevant.size()));
}

double recall_at_k(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
                   std::size_t k) {
  if (relevant.empty()) return 0.0;
  std::size_t hits = 0;
  const auto depth = std::min(k, recommended.size());
  for (std::size_t r = 0; r < depth; ++r) hits += is_relevant(relevant, recommended[r]) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(relevant.size());
}

double diversity(std::span<const ItemId> recommended,
                 const std::vector<SparseVector>& item_tag_vectors) {
  const auto m = recommended.size();
  if (m < 2) return 0.0;
  static const SparseVector kEmpty;
  auto vec = [&](ItemId i) -> const SparseVector& {
    return i < item_tag_vectors.size() ? item_tag_vectors[i] : kEmpty;
  };
  double sum = 0.0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      sum += 1.0 - cosine(vec(recommended[a]), vec(recommended[b]));
  // Each unordered pair stands for both ordered pairs.
  return 2.0 * sum / static_cast<double>(m * (m - 1));
}

double user_coverage(const std::map<UserId, RankedList>& results,
                     std::span<const UserId> evaluable) {
  if (evaluable.empty()) return 0.0;
  std::size_t covered = 0;
  for (auto u : evaluable) {
    auto it = results.find(u);
    if (it != results.end() && !it->second.items.empty()) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(evaluable.size());
}

LeakageAudit audit_leakage(const SplitResult& split) {
  const auto& train = split.train;
  LeakageAudit audit;
  for (UserId u = 0; u < split.test.size(); ++u) {
    if (split.test[u].empty()) continue;
    const auto items = binary_item_vector(train, u);
    for (auto item : split.test[u]) {
      ++audit.checked_pairs;
      if (train.find_post(u, item) != nullptr) ++audit.train_posts;
      if (items.weight(item) != 0.0) ++audit.user_vectors;
      if (item_tagger_vector(train, item).weight(u) != 0.0) ++audit.item_vectors;
    }
    const auto ref = u < split.reference_time.size() ? split.reference_time[u] : -1;
    for (auto p : train.user_posts(u))
      for (const auto& a : train.assignments(train.posts()[p]))
        if (a.timestamp >= ref) ++audit.future_uses;
  }
  return audit;
}

AlgorithmReport evaluate(const Recommender& recommender, const SplitResult& split,
                         const EvalOptions& options) {
  const auto users = split.evaluable_users();
  if (users.empty()) throw Error(ErrorKind::kEmptyDataset, "no user has both train and test data");
  const auto lists = recommend_all(recommender, users, kMaxCutoff, options.workers);
  return evaluate_lists(recommender.algorithm(), lists, split, options);
}

AlgorithmReport evaluate_lists(Algorithm algorithm, std::span<const RankedList> lists,
                               const SplitResult& split, const EvalOptions& options) {
  const auto users = split.evaluable_users();
  if (users.empty()) throw Error(ErrorKind::kEmptyDataset, "no user has both train and test data");
  if (lists.size() != users.size())
    throw Error(ErrorKind::kFormat, "recommendation lists do not match the evaluable users");

  const auto audit = audit_leakage(split);
  if (audit.violations() != 0)
    throw Error(ErrorKind::kFormat, "test data leaked into train-derived structures");

  std::vector<SparseVector> tag_vectors;
  tag_vectors.reserve(split.train.item_space());
  for (ItemId i = 0; i < split.train.item_space(); ++i)
    tag_vectors.push_back(item_tag_vector(split.train, i));

  struct PerUser {
    std::array<double, kMaxCutoff> ndcg{}, map{}, recall{};
    double diversity = 0.0;
    bool served = false;
  };
  std::vector<PerUser> per_user(users.size());
  parallel_for(users.size(), options.workers, [&](std::size_t idx) {
    const auto& list = lists[idx];
    if (list.user != users[idx])
      throw Error(ErrorKind::kFormat, "recommendation list belongs to another user");
    for (const auto& s : list.items)
      if (split.train.find_post(list.user, s.item) != nullptr)
        throw Error(ErrorKind::kFormat, "recommended an item from the user's train profile");
    const auto items = list.item_ids();
    const auto& relevant = split.test[users[idx]];
    auto& out = per_user[idx];
    out.served = !items.empty();
    for (std::size_t k = 1; k <= kMaxCutoff; ++k) {
      out.ndcg[k - 1] = ndcg_at_k(items, relevant, k);
      out.map[k - 1] = map_at_k(items, relevant, k);
      out.recall[k - 1] = recall_at_k(items, relevant, k);
    }
    const auto top = std::span<const ItemId>(items).first(std::min(items.size(), kMaxCutoff));
    out.diversity = diversity(top, tag_vectors);
  });

  // Sequential reduction in ascending user order keeps sums byte-stable.
  AlgorithmReport report;
  report.algorithm = std::string(to_string(algorithm));
  std::size_t accuracy_users = 0, diverse_users = 0;
  double diversity_sum = 0.0;
  for (std::size_t idx = 0; idx < users.size(); ++idx) {
    const auto& pu = per_user[idx];
    if (pu.served) ++report.covered_users;
    if (pu.served || options.unservable == UnservablePolicy::kCountAsZero) {
      ++accuracy_users;
      for (std::size_t k = 0; k < kMaxCutoff; ++k) {
        report.ndcg[k] += pu.ndcg[k];
        report.map[k] += pu.map[k];
        report.recall[k] += pu.recall[k];
      }
    }
    if (lists[idx].items.size() >= 2) {
      ++diverse_users;
      diversity_sum += pu.diversity;
    }
  }
  if (accuracy_users > 0) {
    const auto denom = static_cast<double>(accuracy_users);
    for (std::size_t k = 0; k < kMaxCutoff; ++k) {
      report.ndcg[k] /= denom;
      report.map[k] /= denom;
      report.recall[k] /= denom;
    }
  }
  report.diversity = diverse_users > 0 ? diversity_sum / static_cast<double>(diverse_users) : 0.0;
  report.evaluated_users = users.size();
  report.user_coverage =
      static_cast<double>(report.covered_users) / static_cast<double>(users.size());
  return report;
}

}  // namespace tagtime
