#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tagtime/folksonomy.hpp"

namespace tagtime {

/// Sparse non-negative vector with ids strictly increasing and a cached
/// Euclidean norm.
class SparseVector {
 public:
  struct Entry {
    std::uint32_t id = 0;
    double weight = 0.0;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SparseVector() = default;

  /// Sorts by id, sums duplicate ids and drops entries whose weight is not
  /// positive.
  static SparseVector from_entries(std::vector<Entry> entries);

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double norm() const noexcept { return norm_; }

  /// 0 for ids not present.
  double weight(std::uint32_t id) const;

  SparseVector scaled(double factor) const;

 private:
  std::vector<Entry> entries_;
  double norm_ = 0.0;
};

/// Sum of products over the shared ids, accumulated in ascending id order.
double dot(const SparseVector& a, const SparseVector& b);

/// dot / (|a| |b|), clamped to [0, 1]; 0 when either vector is empty.
double cosine(const SparseVector& a, const SparseVector& b);

/// Row of the binary user-item matrix: 1.0 per bookmarked item.
SparseVector binary_item_vector(const Folksonomy& f, UserId user);

/// Tag frequencies of a user over all of their posts.
SparseVector tag_profile_vector(const Folksonomy& f, UserId user);

/// Column of the binary user-item matrix: 1.0 per user who bookmarked the item.
SparseVector item_tagger_vector(const Folksonomy& f, ItemId item);

/// Tag frequencies an item received across all of its taggers.
SparseVector item_tag_vector(const Folksonomy& f, ItemId item);

enum class ProfileKind {
  kBinaryItem,
  kTagProfile,
};

/// One vector per user id of `f`, of the requested kind.
std::vector<SparseVector> user_vectors(const Folksonomy& f, ProfileKind kind);

struct Neighbor {
  UserId user = 0;
  double similarity = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Nearest users of `target`, similarity-descending then id-ascending. Never
/// contains the target or a zero-similarity user.
struct Neighborhood {
  UserId target = 0;
  std::vector<Neighbor> neighbors;
};

/// Cosine top-k search over a fixed set of user vectors. An inverted index
/// restricts each query to users sharing at least one dimension with the
/// target. Immutable after construction; queries may run concurrently.
class NeighborIndex {
 public:
  explicit NeighborIndex(std::vector<SparseVector> rows);

  /// Throws Error(kNoProfile) when the target's vector is empty.
  Neighborhood top_k(UserId target, std::size_t k) const;

  const SparseVector& row(UserId user) const { return rows_.at(user); }
  std::size_t size() const noexcept { return rows_.size(); }

 private:
  struct Posting {
    UserId user;
    double weight;
  };

  std::vector<SparseVector> rows_;
  std::vector<std::vector<Posting>> postings_;
};

/// One-shot neighborhood query; builds an index over all users of `f`.
Neighborhood top_k_neighbors(const Folksonomy& f, UserId user, std::size_t k,
                             ProfileKind kind);

}  // namespace tagtime
