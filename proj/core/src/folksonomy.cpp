#include "tagtime/folksonomy.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <string_view>
#include <tuple>

#include "tagtime/error.hpp"

namespace tagtime {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kEmptyDataset: return "empty dataset";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kNoProfile: return "no profile";
    case ErrorKind::kIo: return "I/O error";
  }
  return "error";
}

Interner::Id Interner::intern(std::string_view name) {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  const auto id = static_cast<Id>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<Interner::Id> Interner::find(std::string_view name) const {
  if (auto it = ids_.find(name); it != ids_.end()) return it->second;
  return std::nullopt;
}

void Fnv1a::update(std::string_view bytes) noexcept {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
}

void Fnv1a::update(std::int64_t value) noexcept {
  auto u = static_cast<std::uint64_t>(value);
  for (int i = 0; i < 8; ++i) {
    state_ ^= static_cast<unsigned char>(u & 0xff);
    state_ *= 0x100000001b3ULL;
    u >>= 8;
  }
}

std::string Fnv1a::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
  return buf;
}

std::string DatasetStats::to_string() const {
  return "B=" + std::to_string(bookmarks) + " U=" + std::to_string(users) +
         " R=" + std::to_string(resources) + " T=" + std::to_string(tags) +
         " TAS=" + std::to_string(assignments);
}

namespace {

// Renumbers one id space over the ids in `used`, in name order.
std::vector<std::uint32_t> compact_space(const Interner& source,
                                         const std::vector<bool>& used,
                                         Interner& target) {
  std::vector<std::uint32_t> ids;
  for (std::uint32_t id = 0; id < used.size(); ++id)
    if (used[id]) ids.push_back(id);
  std::sort(ids.begin(), ids.end(), [&](auto a, auto b) {
    return source.name(a) < source.name(b);
  });
  std::vector<std::uint32_t> remap(source.size(), 0);
  for (auto id : ids) remap[id] = target.intern(source.name(id));
  return remap;
}

}  // namespace

Folksonomy Folksonomy::build(std::vector<TagAssignment> rows, Vocabulary vocab,
                             VocabularyMode mode) {
  if (rows.empty()) throw Error(ErrorKind::kEmptyDataset, "dataset contains no tag assignments");

  if (mode == VocabularyMode::kCompact) {
    std::vector<bool> users(vocab.users.size()), items(vocab.items.size()),
        tags(vocab.tags.size());
    for (const auto& r : rows) {
      users.at(r.user) = true;
      items.at(r.item) = true;
      tags.at(r.tag) = true;
    }
    Vocabulary compact;
    const auto user_map = compact_space(vocab.users, users, compact.users);
    const auto item_map = compact_space(vocab.items, items, compact.items);
    const auto tag_map = compact_space(vocab.tags, tags, compact.tags);
    for (auto& r : rows) {
      r.user = user_map[r.user];
      r.item = item_map[r.item];
      r.tag = tag_map[r.tag];
    }
    vocab = std::move(compact);
  } else {
    for (const auto& r : rows) {
      if (r.user >= vocab.users.size() || r.item >= vocab.items.size() ||
          r.tag >= vocab.tags.size())
        throw Error(ErrorKind::kFormat, "tag assignment references an id outside the vocabulary");
    }
  }

  std::sort(rows.begin(), rows.end(), [](const TagAssignment& a, const TagAssignment& b) {
    return std::tie(a.user, a.item, a.tag, a.timestamp) <
           std::tie(b.user, b.item, b.tag, b.timestamp);
  });
  // Sorted by timestamp within (user, item, tag): the first row is the earliest.
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const TagAssignment& a, const TagAssignment& b) {
                           return a.user == b.user && a.item == b.item && a.tag == b.tag;
                         }),
             rows.end());

  Folksonomy f;
  f.vocab_ = std::move(vocab);
  f.assignments_ = std::move(rows);

  const auto& as = f.assignments_;
  for (std::size_t begin = 0; begin < as.size();) {
    std::size_t end = begin;
    Post post;
    post.user = as[begin].user;
    post.item = as[begin].item;
    post.timestamp = as[begin].timestamp;
    post.first_assignment = static_cast<std::uint32_t>(begin);
    while (end < as.size() && as[end].user == post.user && as[end].item == post.item) {
      post.tags.push_back(as[end].tag);
      post.timestamp = std::min(post.timestamp, as[end].timestamp);
      ++end;
    }
    f.posts_.push_back(std::move(post));
    begin = end;
  }

  f.indexes_ = build_indexes(f.vocab_, f.posts_, f.assignments_);
  return f;
}

Folksonomy Folksonomy::from_raw(std::span<const RawAssignment> rows) {
  Vocabulary vocab;
  std::vector<TagAssignment> interned;
  interned.reserve(rows.size());
  for (const auto& r : rows) {
    interned.push_back({vocab.users.intern(r.user), vocab.items.intern(r.item),
                        vocab.tags.intern(r.tag), r.timestamp});
  }
  return build(std::move(interned), std::move(vocab), VocabularyMode::kCompact);
}

Folksonomy Folksonomy::filter_posts(const std::function<bool(const Post&)>& keep,
                                    VocabularyMode mode) const {
  std::vector<TagAssignment> rows;
  for (const auto& post : posts_) {
    if (!keep(post)) continue;
    const auto span = assignments(post);
    rows.insert(rows.end(), span.begin(), span.end());
  }
  return build(std::move(rows), vocab_, mode);
}

Folksonomy::Indexes Folksonomy::build_indexes(const Vocabulary& vocab,
                                              std::span<const Post> posts,
                                              std::span<const TagAssignment> assignments) {
  Indexes ix;
  ix.user_posts.resize(vocab.users.size());
  ix.item_posts.resize(vocab.items.size());
  ix.user_tags.resize(vocab.users.size());
  ix.item_tags.resize(vocab.items.size());

  // Posts are ordered by (user, item), so both post lists come out sorted.
  for (PostIndex p = 0; p < posts.size(); ++p) {
    ix.user_posts[posts[p].user].push_back(p);
    ix.item_posts[posts[p].item].push_back(p);
  }

  auto bump = [](std::vector<TagCount>& counts, TagId tag) {
    auto it = std::lower_bound(counts.begin(), counts.end(), tag,
                               [](const TagCount& c, TagId t) { return c.tag < t; });
    if (it != counts.end() && it->tag == tag) {
      ++it->count;
    } else {
      counts.insert(it, TagCount{tag, 1});
    }
  };
  for (const auto& a : assignments) {
    bump(ix.user_tags[a.user], a.tag);
    bump(ix.item_tags[a.item], a.tag);
  }
  return ix;
}

std::span<const TagAssignment> Folksonomy::assignments(const Post& post) const {
  return std::span<const TagAssignment>(assignments_).subspan(post.first_assignment,
                                                              post.tags.size());
}

std::span<const Folksonomy::PostIndex> Folksonomy::user_posts(UserId user) const {
  if (user >= indexes_.user_posts.size()) return {};
  return indexes_.user_posts[user];
}

std::span<const Folksonomy::PostIndex> Folksonomy::item_posts(ItemId item) const {
  if (item >= indexes_.item_posts.size()) return {};
  return indexes_.item_posts[item];
}

std::span<const TagCount> Folksonomy::user_tags(UserId user) const {
  if (user >= indexes_.user_tags.size()) return {};
  return indexes_.user_tags[user];
}

std::span<const TagCount> Folksonomy::item_tags(ItemId item) const {
  if (item >= indexes_.item_tags.size()) return {};
  return indexes_.item_tags[item];
}

const Post* Folksonomy::find_post(UserId user, ItemId item) const {
  const auto list = user_posts(user);
  auto it = std::lower_bound(list.begin(), list.end(), item,
                             [&](PostIndex p, ItemId i) { return posts_[p].item < i; });
  if (it == list.end() || posts_[*it].item != item) return nullptr;
  return &posts_[*it];
}

Timestamp Folksonomy::last_timestamp(UserId user) const {
  Timestamp last = -1;
  for (auto p : user_posts(user))
    for (const auto& a : assignments(posts_[p])) last = std::max(last, a.timestamp);
  return last;
}

DatasetStats Folksonomy::stats() const {
  DatasetStats s;
  s.bookmarks = posts_.size();
  s.assignments = assignments_.size();
  for (const auto& list : indexes_.user_posts) s.users += list.empty() ? 0 : 1;
  for (const auto& list : indexes_.item_posts) s.resources += list.empty() ? 0 : 1;
  std::vector<bool> seen(vocab_.tags.size());
  for (const auto& a : assignments_) seen[a.tag] = true;
  s.tags = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
  return s;
}

std::string Folksonomy::fingerprint() const {
  using Row = std::tuple<std::string_view, std::string_view, std::string_view, Timestamp>;
  std::vector<Row> rows;
  rows.reserve(assignments_.size());
  for (const auto& a : assignments_) {
    rows.emplace_back(vocab_.users.name(a.user), vocab_.items.name(a.item),
                      vocab_.tags.name(a.tag), a.timestamp);
  }
  std::sort(rows.begin(), rows.end());
  Fnv1a h;
  for (const auto& [u, i, t, ts] : rows) {
    // Field separators keep ("ab","c") and ("a","bc") apart.
    h.update(u);
    h.update(std::string_view("\x1f", 1));
    h.update(i);
    h.update(std::string_view("\x1f", 1));
    h.update(t);
    h.update(std::string_view("\x1f", 1));
    h.update(ts);
  }
  return h.hex();
}

bool Folksonomy::indexes_consistent() const {
  return build_indexes(vocab_, posts_, assignments_) == indexes_;
}

Folksonomy build_folksonomy(std::vector<TagAssignment> rows, Vocabulary vocab) {
  return Folksonomy::build(std::move(rows), std::move(vocab), VocabularyMode::kCompact);
}

std::string fingerprint(const Folksonomy& f) { return f.fingerprint(); }

}  // namespace tagtime
