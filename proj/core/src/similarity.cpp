#include "tagtime/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "tagtime/error.hpp"

namespace tagtime {

SparseVector SparseVector::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.id < b.id; });
  SparseVector v;
  v.entries_.reserve(entries.size());
  for (const auto& e : entries) {
    if (!v.entries_.empty() && v.entries_.back().id == e.id) {
      v.entries_.back().weight += e.weight;
    } else {
      v.entries_.push_back(e);
    }
  }
  std::erase_if(v.entries_, [](const Entry& e) { return !(e.weight > 0.0); });
  double sq = 0.0;
  for (const auto& e : v.entries_) sq += e.weight * e.weight;
  v.norm_ = std::sqrt(sq);
  return v;
}

double SparseVector::weight(std::uint32_t id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const Entry& e, std::uint32_t i) { return e.id < i; });
  return it != entries_.end() && it->id == id ? it->weight : 0.0;
}

SparseVector SparseVector::scaled(double factor) const {
  auto copy = entries_;
  for (auto& e : copy) e.weight *= factor;
  return from_entries(std::move(copy));
}

double dot(const SparseVector& a, const SparseVector& b) {
  const auto ea = a.entries();
  const auto eb = b.entries();
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].id < eb[j].id) {
      ++i;
    } else if (eb[j].id < ea[i].id) {
      ++j;
    } else {
      sum += ea[i].weight * eb[j].weight;
      ++i;
      ++j;
    }
  }
  return sum;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  return std::clamp(dot(a, b) / (a.norm() * b.norm()), 0.0, 1.0);
}

SparseVector binary_item_vector(const Folksonomy& f, UserId user) {
  std::vector<SparseVector::Entry> entries;
  for (auto p : f.user_posts(user)) entries.push_back({f.posts()[p].item, 1.0});
  return SparseVector::from_entries(std::move(entries));
}

SparseVector tag_profile_vector(const Folksonomy& f, UserId user) {
  std::vector<SparseVector::Entry> entries;
  for (const auto& tc : f.user_tags(user))
    entries.push_back({tc.tag, static_cast<double>(tc.count)});
  return SparseVector::from_entries(std::move(entries));
}

SparseVector item_tagger_vector(const Folksonomy& f, ItemId item) {
  std::vector<SparseVector::Entry> entries;
  for (auto p : f.item_posts(item)) entries.push_back({f.posts()[p].user, 1.0});
  return SparseVector::from_entries(std::move(entries));
}

SparseVector item_tag_vector(const Folksonomy& f, ItemId item) {
  std::vector<SparseVector::Entry> entries;
  for (const auto& tc : f.item_tags(item))
    entries.push_back({tc.tag, static_cast<double>(tc.count)});
  return SparseVector::from_entries(std::move(entries));
}

std::vector<SparseVector> user_vectors(const Folksonomy& f, ProfileKind kind) {
  std::vector<SparseVector> rows;
  rows.reserve(f.user_space());
  for (UserId u = 0; u < f.user_space(); ++u) {
    rows.push_back(kind == ProfileKind::kBinaryItem ? binary_item_vector(f, u)
                                                    : tag_profile_vector(f, u));
  }
  return rows;
}

NeighborIndex::NeighborIndex(std::vector<SparseVector> rows) : rows_(std::move(rows)) {
  std::uint32_t dims = 0;
  for (const auto& r : rows_)
    if (!r.empty()) dims = std::max(dims, r.entries().back().id + 1);
  postings_.resize(dims);
  for (UserId u = 0; u < rows_.size(); ++u)
    for (const auto& e : rows_[u].entries()) postings_[e.id].push_back({u, e.weight});
}

Neighborhood NeighborIndex::top_k(UserId target, std::size_t k) const {
  const auto& query = rows_.at(target);
  if (query.empty())
    throw Error(ErrorKind::kNoProfile, "user " + std::to_string(target) + " has no profile");

  // Dot products accumulate dimension by dimension in ascending id order,
  // the same order dot() uses, so both routes agree bit for bit.
  std::vector<double> acc(rows_.size(), 0.0);
  std::vector<UserId> touched;
  for (const auto& e : query.entries()) {
    for (const auto& p : postings_[e.id]) {
      if (p.user == target) continue;
      if (acc[p.user] == 0.0) touched.push_back(p.user);
      acc[p.user] += e.weight * p.weight;
    }
  }

  Neighborhood out;
  out.target = target;
  out.neighbors.reserve(touched.size());
  for (auto v : touched) {
    const double sim = std::clamp(acc[v] / (query.norm() * rows_[v].norm()), 0.0, 1.0);
    if (sim > 0.0) out.neighbors.push_back({v, sim});
  }
  auto better = [](const Neighbor& a, const Neighbor& b) {
    return a.similarity != b.similarity ? a.similarity > b.similarity : a.user < b.user;
  };
  if (out.neighbors.size() > k) {
    std::partial_sort(out.neighbors.begin(), out.neighbors.begin() + static_cast<std::ptrdiff_t>(k),
                      out.neighbors.end(), better);
    out.neighbors.resize(k);
  } else {
    std::sort(out.neighbors.begin(), out.neighbors.end(), better);
  }
  return out;
}

Neighborhood top_k_neighbors(const Folksonomy& f, UserId user, std::size_t k,
                             ProfileKind kind) {
  if (k == 0) throw Error(ErrorKind::kConfig, "neighborhood size must be at least 1");
  return NeighborIndex(user_vectors(f, kind)).top_k(user, k);
}

}  // namespace tagtime
