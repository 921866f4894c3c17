#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tagtime {

/// Bidirectional map between external string keys and dense ids 0..n-1.
class Interner {
 public:
  using Id = std::uint32_t;

  /// Returns the id of `name`, assigning the next free id on first sight.
  Id intern(std::string_view name);

  std::optional<Id> find(std::string_view name) const;

  const std::string& name(Id id) const { return names_.at(id); }

  std::size_t size() const noexcept { return names_.size(); }

  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> names_;
  std::unordered_map<std::string, Id, Hash, std::equal_to<>> ids_;
};

}  // namespace tagtime
