#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tagtime/interner.hpp"
#include "tagtime/types.hpp"

namespace tagtime {

/// Interners for the three id spaces of a folksonomy.
struct Vocabulary {
  Interner users;
  Interner items;
  Interner tags;
};

/// Assignment keyed by external names, used before interning.
struct RawAssignment {
  std::string user;
  std::string item;
  std::string tag;
  Timestamp timestamp = 0;
};

/// All tag assignments of one user on one item. The timestamp is the earliest
/// of the merged assignments; per-assignment times stay reachable through
/// Folksonomy::assignments(post).
struct Post {
  UserId user = 0;
  ItemId item = 0;
  Timestamp timestamp = 0;
  std::vector<TagId> tags;  // sorted, unique, non-empty
  std::uint32_t first_assignment = 0;
};

struct TagCount {
  TagId tag = 0;
  std::uint32_t count = 0;

  friend bool operator==(const TagCount&, const TagCount&) = default;
};

/// Dataset properties in the usual folksonomy schema: bookmarks, users,
/// resources, tags and tag assignments.
struct DatasetStats {
  std::size_t bookmarks = 0;
  std::size_t users = 0;
  std::size_t resources = 0;
  std::size_t tags = 0;
  std::size_t assignments = 0;

  /// "B=.. U=.. R=.. T=.. TAS=.."
  std::string to_string() const;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

enum class VocabularyMode {
  /// Drop unused names and renumber each id space in lexicographic name
  /// order, so ids do not depend on input order.
  kCompact,
  /// Keep the given vocabulary and its ids unchanged. Used for derived
  /// folksonomies (train splits) whose ids must line up with the source.
  kRetain,
};

/// Immutable store of tag assignments grouped into posts, with per-user and
/// per-item indexes. Safe for concurrent reads once built.
class Folksonomy {
 public:
  using PostIndex = std::uint32_t;

  Folksonomy() = default;

  /// Merges assignments sharing (user, item) into one post. Duplicate
  /// (user, item, tag) rows keep the earliest timestamp. Throws
  /// Error(kEmptyDataset) when `rows` is empty.
  static Folksonomy build(std::vector<TagAssignment> rows, Vocabulary vocab,
                          VocabularyMode mode = VocabularyMode::kCompact);

  /// Interns names and builds in compact mode.
  static Folksonomy from_raw(std::span<const RawAssignment> rows);

  /// Rebuilds from the assignments of the posts accepted by `keep`.
  Folksonomy filter_posts(const std::function<bool(const Post&)>& keep,
                          VocabularyMode mode) const;

  const Vocabulary& vocabulary() const noexcept { return vocab_; }

  std::size_t user_space() const noexcept { return vocab_.users.size(); }
  std::size_t item_space() const noexcept { return vocab_.items.size(); }
  std::size_t tag_space() const noexcept { return vocab_.tags.size(); }

  /// Canonically ordered by (user, item, tag).
  std::span<const TagAssignment> assignments() const noexcept { return assignments_; }
  std::span<const TagAssignment> assignments(const Post& post) const;

  /// Ordered by (user, item).
  std::span<const Post> posts() const noexcept { return posts_; }

  /// Indices into posts(); item-ascending per user and user-ascending per item.
  std::span<const PostIndex> user_posts(UserId user) const;
  std::span<const PostIndex> item_posts(ItemId item) const;

  /// Tag frequencies, tag-ascending.
  std::span<const TagCount> user_tags(UserId user) const;
  std::span<const TagCount> item_tags(ItemId item) const;

  const Post* find_post(UserId user, ItemId item) const;

  /// Largest assignment timestamp of `user`; -1 when the user has no posts.
  Timestamp last_timestamp(UserId user) const;

  DatasetStats stats() const;

  /// Stable 64-bit content digest over (user, item, tag, timestamp) name
  /// tuples, rendered as 16 hex digits. Independent of ids and input order.
  std::string fingerprint() const;

  /// Rebuilds every index from the post list and compares with the stored one.
  bool indexes_consistent() const;

 private:
  struct Indexes {
    std::vector<std::vector<PostIndex>> user_posts;
    std::vector<std::vector<PostIndex>> item_posts;
    std::vector<std::vector<TagCount>> user_tags;
    std::vector<std::vector<TagCount>> item_tags;

    friend bool operator==(const Indexes&, const Indexes&) = default;
  };

  static Indexes build_indexes(const Vocabulary& vocab,
                               std::span<const Post> posts,
                               std::span<const TagAssignment> assignments);

  Vocabulary vocab_;
  std::vector<TagAssignment> assignments_;
  std::vector<Post> posts_;
  Indexes indexes_;
};

/// Free-function spelling of Folksonomy::build in compact mode.
Folksonomy build_folksonomy(std::vector<TagAssignment> rows, Vocabulary vocab);

/// Fingerprint of a folksonomy; see Folksonomy::fingerprint.
std::string fingerprint(const Folksonomy& f);

/// FNV-1a, 64 bit. Shared by dataset fingerprints and config hashes.
class Fnv1a {
 public:
  void update(std::string_view bytes) noexcept;
  void update(std::int64_t value) noexcept;
  std::uint64_t digest() const noexcept { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace tagtime
