#pragma once

#include <cstdint>

namespace tagtime {

using UserId = std::uint32_t;
using ItemId = std::uint32_t;
using TagId = std::uint32_t;

/// Seconds since the Unix epoch.
using Timestamp = std::int64_t;

/// One (user, item, tag, time) event, the atomic unit of a folksonomy.
struct TagAssignment {
  UserId user = 0;
  ItemId item = 0;
  TagId tag = 0;
  Timestamp timestamp = 0;

  friend bool operator==(const TagAssignment&, const TagAssignment&) = default;
};

}  // namespace tagtime
