#pragma once

#include <span>
#include <vector>

#include "tagtime/folksonomy.hpp"

namespace tagtime {

/// Parameters of the base-level learning activation.
struct BllParams {
  /// Power-law decay exponent, > 0.
  double decay = 0.5;
};

/// How raw activations of one user are mapped onto [0, 1].
enum class BllNormalization {
  /// exp(a) / sum(exp(a')): values in (0, 1] summing to 1.
  kSoftmax,
  /// (a - min) / (max - min), or 1 for every tag when all values are equal.
  kMinMax,
};

/// ln(sum_i (reference - ts_i)^(-decay)).
///
/// Every timestamp must lie strictly before `reference`; violations and an
/// empty list throw std::invalid_argument.
double bll_raw(std::span<const Timestamp> uses, Timestamp reference, double decay);

/// Maps raw activations onto [0, 1] in place.
void normalize_activations(std::span<double> values, BllNormalization kind);

/// Normalized activation of every tag a user has used.
struct UserBllProfile {
  struct Entry {
    TagId tag = 0;
    double value = 0.0;
  };

  UserId user = 0;
  Timestamp reference = 0;
  std::vector<Entry> values;  // tag-ascending

  /// 0 for tags the user never used.
  double value(TagId tag) const;
};

/// Raw activation per tag from every assignment timestamp of that tag, then
/// normalized. Throws Error(kNoProfile) when the user has no assignments.
UserBllProfile build_bll_profile(const Folksonomy& train, UserId user, Timestamp reference,
                                 const BllParams& params,
                                 BllNormalization normalization = BllNormalization::kSoftmax);

/// Sum of profile values over the tags in `item_tags` (ascending) that the
/// user has used. 0 without overlap.
double bll_item(const UserBllProfile& profile, std::span<const TagId> item_tags);

}  // namespace tagtime
