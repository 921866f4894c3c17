#include "tagtime/bll.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tagtime/error.hpp"

namespace tagtime {

double bll_raw(std::span<const Timestamp> uses, Timestamp reference, double decay) {
  if (uses.empty()) throw std::invalid_argument("bll_raw: no tag uses");
  if (!(decay > 0.0)) throw std::invalid_argument("bll_raw: decay must be positive");
  double sum = 0.0;
  for (auto ts : uses) {
    if (ts >= reference) throw std::invalid_argument("bll_raw: use at or after reference time");
    sum += std::pow(static_cast<double>(reference - ts), -decay);
  }
  return std::log(sum);
}

void normalize_activations(std::span<double> values, BllNormalization kind) {
  if (values.empty()) return;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo, max = *hi;
  switch (kind) {
    case BllNormalization::kSoftmax: {
      double total = 0.0;
      for (auto& v : values) {
        v = std::exp(v - max);
        total += v;
      }
      for (auto& v : values) v /= total;
      break;
    }
    case BllNormalization::kMinMax:
      for (auto& v : values) v = max > min ? (v - min) / (max - min) : 1.0;
      break;
  }
}

double UserBllProfile::value(TagId tag) const {
  auto it = std::lower_bound(values.begin(), values.end(), tag,
                             [](const Entry& e, TagId t) { return e.tag < t; });
  return it != values.end() && it->tag == tag ? it->value : 0.0;
}

UserBllProfile build_bll_profile(const Folksonomy& train, UserId user, Timestamp reference,
                                 const BllParams& params, BllNormalization normalization) {
  // Gather (tag, timestamp) for every assignment of the user.
  std::vector<std::pair<TagId, Timestamp>> uses;
  for (auto p : train.user_posts(user))
    for (const auto& a : train.assignments(train.posts()[p])) uses.emplace_back(a.tag, a.timestamp);
  if (uses.empty())
    throw Error(ErrorKind::kNoProfile, "user " + std::to_string(user) + " has no tag assignments");
  std::sort(uses.begin(), uses.end());

  UserBllProfile profile;
  profile.user = user;
  profile.reference = reference;
  std::vector<double> raw;
  std::vector<Timestamp> times;
  for (std::size_t begin = 0; begin < uses.size();) {
    const TagId tag = uses[begin].first;
    times.clear();
    std::size_t end = begin;
    for (; end < uses.size() && uses[end].first == tag; ++end) times.push_back(uses[end].second);
    profile.values.push_back({tag, 0.0});
    raw.push_back(bll_raw(times, reference, params.decay));
    begin = end;
  }
  normalize_activations(raw, normalization);
  for (std::size_t i = 0; i < raw.size(); ++i) profile.values[i].value = raw[i];
  return profile;
}

double bll_item(const UserBllProfile& profile, std::span<const TagId> item_tags) {
  double sum = 0.0;
  for (auto tag : item_tags) sum += profile.value(tag);
  return sum;
}

}  // namespace tagtime
