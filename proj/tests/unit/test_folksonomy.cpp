#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tagtime/error.hpp"
#include "tagtime/stable_random.hpp"

namespace tagtime {
namespace {

using fixture::iid;
using fixture::make;
using fixture::tid;
using fixture::uid;

TEST(Interner, RoundTrip) {
  Interner in;
  EXPECT_EQ(in.intern("alpha"), 0u);
  EXPECT_EQ(in.intern("beta"), 1u);
  EXPECT_EQ(in.intern("alpha"), 0u);
  EXPECT_EQ(in.size(), 2u);
  EXPECT_EQ(in.name(1), "beta");
  EXPECT_EQ(in.find("beta"), 1u);
  EXPECT_FALSE(in.find("gamma").has_value());
}

TEST(Folksonomy, MergesAssignmentsIntoPosts) {
  const auto f = make({{"u1", "r1", "web", 100},
                       {"u1", "r1", "design", 105},
                       {"u1", "r2", "web", 200},
                       {"u2", "r1", "web", 300}});
  ASSERT_EQ(f.posts().size(), 3u);
  const auto* p = f.find_post(uid(f, "u1"), iid(f, "r1"));
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->timestamp, 100);
  EXPECT_EQ(p->tags, (std::vector<TagId>{tid(f, "design"), tid(f, "web")}));
  EXPECT_EQ(f.assignments(*p).size(), 2u);
  EXPECT_EQ(f.stats(), (DatasetStats{3, 2, 2, 2, 4}));
  EXPECT_EQ(f.stats().to_string(), "B=3 U=2 R=2 T=2 TAS=4");
}

TEST(Folksonomy, DuplicateAssignmentKeepsEarliest) {
  const auto f = make({{"u1", "r1", "web", 500}, {"u1", "r1", "web", 100}, {"u2", "r1", "x", 1}});
  EXPECT_EQ(f.stats().assignments, 2u);
  const auto* p = f.find_post(uid(f, "u1"), iid(f, "r1"));
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->timestamp, 100);
  EXPECT_EQ(f.last_timestamp(uid(f, "u1")), 100);
}

TEST(Folksonomy, EmptyInputIsAnError) {
  try {
    (void)make({});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyDataset);
  }
}

TEST(Folksonomy, CompactIdsFollowNameOrder) {
  const auto f = make({{"zed", "b", "t2", 1}, {"amy", "a", "t1", 2}});
  EXPECT_EQ(uid(f, "amy"), 0u);
  EXPECT_EQ(uid(f, "zed"), 1u);
  EXPECT_EQ(iid(f, "a"), 0u);
}

TEST(Folksonomy, RetainModeRejectsUnknownIds) {
  Vocabulary v;
  v.users.intern("u");
  v.items.intern("i");
  v.tags.intern("t");
  EXPECT_THROW((void)Folksonomy::build({{0, 3, 0, 1}}, v, VocabularyMode::kRetain), Error);
}

TEST(Folksonomy, IndexesAgreeWithPosts) {
  const auto f = make(oracle::random_fixture(3, 40, 60, 20));
  EXPECT_TRUE(f.indexes_consistent());

  // Per-user tag counts against a direct count over assignments.
  std::map<std::pair<UserId, TagId>, std::uint32_t> counts;
  for (const auto& a : f.assignments()) ++counts[{a.user, a.tag}];
  for (UserId u = 0; u < f.user_space(); ++u)
    for (const auto& tc : f.user_tags(u)) EXPECT_EQ(tc.count, (counts[{u, tc.tag}]));

  std::size_t total = 0;
  for (UserId u = 0; u < f.user_space(); ++u) total += f.user_posts(u).size();
  EXPECT_EQ(total, f.posts().size());
  total = 0;
  for (ItemId i = 0; i < f.item_space(); ++i) total += f.item_posts(i).size();
  EXPECT_EQ(total, f.posts().size());
}

TEST(Folksonomy, EveryAssignmentBelongsToExactlyOnePost) {
  const auto f = make(oracle::random_fixture(4, 30, 40, 15));
  std::size_t covered = 0;
  for (const auto& p : f.posts()) {
    for (const auto& a : f.assignments(p)) {
      EXPECT_EQ(a.user, p.user);
      EXPECT_EQ(a.item, p.item);
      EXPECT_GE(a.timestamp, p.timestamp);
      ++covered;
    }
  }
  EXPECT_EQ(covered, f.assignments().size());
}

TEST(Folksonomy, FingerprintIgnoresRowOrder) {
  auto rows = oracle::random_fixture(11, 25, 30, 12);
  const auto expected = make(rows).fingerprint();
  EXPECT_EQ(expected.size(), 16u);
  StableRandom rng(99);
  for (int round = 0; round < 5; ++round) {
    for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[rng.below(i)]);
    const auto shuffled = make(rows);
    EXPECT_EQ(shuffled.fingerprint(), expected);
    EXPECT_EQ(fingerprint(shuffled), expected);
  }
}

TEST(Folksonomy, FingerprintSeesContentChanges) {
  std::vector<RawAssignment> rows = {{"u1", "r1", "a", 10}, {"u2", "r1", "b", 20}, {"u2", "r2", "a", 30}};
  const auto before = make(rows).fingerprint();
  EXPECT_EQ(make(rows).fingerprint(), before);
  rows[1].timestamp += 1;
  EXPECT_NE(make(rows).fingerprint(), before);
}

TEST(Folksonomy, FilterPostsRetainsIds) {
  const auto f = make({{"u1", "r1", "a", 1}, {"u1", "r2", "b", 2}, {"u2", "r2", "a", 3}});
  const auto g = f.filter_posts([](const Post& p) { return p.timestamp != 2; },
                                VocabularyMode::kRetain);
  EXPECT_EQ(g.user_space(), f.user_space());
  EXPECT_EQ(g.item_space(), f.item_space());
  EXPECT_EQ(g.posts().size(), 2u);
  EXPECT_EQ(g.find_post(uid(f, "u1"), iid(f, "r2")), nullptr);
  EXPECT_TRUE(g.indexes_consistent());
}

TEST(Folksonomy, LastTimestampWithoutPosts) {
  const auto f = make({{"u1", "r1", "a", 1}, {"u2", "r1", "a", 9}});
  const auto g = f.filter_posts([](const Post& p) { return p.timestamp == 1; },
                                VocabularyMode::kRetain);
  EXPECT_EQ(g.last_timestamp(uid(f, "u2")), -1);
  EXPECT_EQ(g.last_timestamp(uid(f, "u1")), 1);
}

}  // namespace
}  // namespace tagtime
