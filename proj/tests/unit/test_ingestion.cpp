#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tagtime/error.hpp"
#include "tagtime/ingestion.hpp"

namespace tagtime {
namespace {

using fixture::data_file;
using fixture::iid;
using fixture::uid;

ParseResult parse_text(const std::string& text, DatasetSpec spec = {}) {
  std::istringstream in(text);
  return parse(in, spec);
}

TEST(Parse, ReadsOneRowPerAssignment) {
  const auto r = parse_text("u1\tr1\tWeb\t1000\n");
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.vocab.users.name(r.rows[0].user), "u1");
  EXPECT_EQ(r.vocab.items.name(r.rows[0].item), "r1");
  EXPECT_EQ(r.vocab.tags.name(r.rows[0].tag), "web");
  EXPECT_EQ(r.rows[0].timestamp, 1000);
}

TEST(Parse, CountsMalformedRows) {
  const auto r = parse_text(
      "# comment\n"
      "u1\tr1\tweb\t1000\n"
      "u2\tr1\tweb\tlater\n"
      "\n"
      "u3\tr2\tdesign\t2000\n"
      "u4\tr2\n");
  EXPECT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.data_lines, 4u);
  EXPECT_EQ(r.malformed_lines, 2u);
  EXPECT_EQ(r.malformed_examples, (std::vector<std::size_t>{3, 6}));
}

TEST(Parse, MostlyMalformedInputIsAFormatError) {
  try {
    (void)parse_text("a,b,c,1\nd,e,f,2\nu\tr\tt\t3\n");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos);
  }
}

TEST(Parse, MissingFileIsAnIoError) {
  DatasetSpec spec;
  spec.path = "/nonexistent/dir/dump.tsv";
  try {
    (void)parse(spec);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST(Parse, CustomColumnsAndDelimiter) {
  DatasetSpec spec;
  spec.delimiter = ',';
  spec.columns = {3, 2, 0, 1};
  const auto r = parse_text("java,1500,r9,u7\n", spec);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.vocab.users.name(r.rows[0].user), "u7");
  EXPECT_EQ(r.vocab.items.name(r.rows[0].item), "r9");
  EXPECT_EQ(r.rows[0].timestamp, 1500);
}

TEST(Parse, CollidingColumnsAreAConfigError) {
  DatasetSpec spec;
  spec.columns = {0, 0, 2, 3};
  EXPECT_THROW((void)parse_text("a\tb\tc\t1\n", spec), Error);
}

TEST(Parse, Iso8601Timestamps) {
  Timestamp ts = 0;
  ASSERT_TRUE(parse_iso8601("2009-01-01T00:00:00Z", ts));
  EXPECT_EQ(ts, 1230768000);
  ASSERT_TRUE(parse_iso8601("2009-01-01 01:30:00+01:30", ts));
  EXPECT_EQ(ts, 1230768000);
  ASSERT_TRUE(parse_iso8601("1970-01-02T00:00:00.999", ts));
  EXPECT_EQ(ts, 86400);
  EXPECT_FALSE(parse_iso8601("2009-02-30T00:00:00", ts));
  EXPECT_FALSE(parse_iso8601("2009/01/01 00:00:00", ts));
  EXPECT_FALSE(parse_iso8601("2009-01-01T00:00:00+25:00", ts));

  DatasetSpec spec;
  spec.timestamp_format = TimestampFormat::kIso8601;
  const auto r = parse_text("u\tr\tt\t2009-01-01T00:00:10Z\n", spec);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].timestamp, 1230768010);
}

TEST(Parse, NormalizesTags) {
  EXPECT_EQ(normalize_tag("  Machine-Learning \t"), "machine-learning");
  const auto r = parse_text("u1\tr1\tWeb \t1\nu1\tr1\tweb\t2\n");
  EXPECT_EQ(r.vocab.tags.size(), 1u);
}

TEST(Blacklist, GlobMatching) {
  EXPECT_TRUE(glob_match("bibtex-import", "BibTeX-Import"));
  EXPECT_TRUE(glob_match("imported*", "imported"));
  EXPECT_TRUE(glob_match("imported*", "imported-2009"));
  EXPECT_TRUE(glob_match("*import*", "bibtex-import"));
  EXPECT_TRUE(glob_match("no-?ag", "no-tag"));
  EXPECT_FALSE(glob_match("no-tag", "no-tags"));
  EXPECT_FALSE(glob_match("imported*", "reimported"));
  EXPECT_TRUE(glob_match("a*b*c", "aXXbYYc"));
  EXPECT_FALSE(glob_match("a*b*c", "aXXbYY"));
}

const char* kBlacklistInput =
    "u1\tr1\tbibtex-import\t1\n"
    "u1\tr1\tweb\t1\n"
    "u2\tr1\tBibTeX-Import\t2\n"
    "u2\tr1\tno-tag\t2\n"
    "u2\tr1\timported-2009\t2\n"
    "u3\tr1\tdesign\t3\n";

std::set<std::string> surviving_tags(const std::vector<std::string>& patterns) {
  auto r = parse_text(kBlacklistInput);
  const auto rows = filter_blacklisted_tags(r.rows, r.vocab.tags, patterns);
  std::set<std::string> names;
  for (const auto& a : rows) names.insert(r.vocab.tags.name(a.tag));
  return names;
}

TEST(Blacklist, DefaultDropsImportTags) {
  EXPECT_EQ(surviving_tags(default_tag_blacklist()),
            (std::set<std::string>{"web", "no-tag", "imported-2009", "design"}));
}

TEST(Blacklist, EmptyListKeepsEverything) {
  EXPECT_EQ(surviving_tags({}).size(), 5u);
}

TEST(Blacklist, CustomPatterns) {
  EXPECT_EQ(surviving_tags({"no-tag", "imported*"}),
            (std::set<std::string>{"bibtex-import", "web", "design"}));
}

TEST(UniqueResources, RemovesSingleTaggerItemsWithoutCascading) {
  // r_solo has one tagger. Removing it leaves u3 with only r_pair posts;
  // nothing else may disappear as a consequence.
  const auto f = fixture::make({{"u1", "r_pair", "a", 1},
                                {"u2", "r_pair", "b", 2},
                                {"u3", "r_solo", "c", 3},
                                {"u3", "r_pair", "c", 4},
                                {"u4", "r_only", "d", 5}});
  const auto g = remove_unique_resources(f);
  EXPECT_FALSE(g.vocabulary().items.find("r_solo").has_value());
  EXPECT_FALSE(g.vocabulary().items.find("r_only").has_value());
  EXPECT_FALSE(g.vocabulary().users.find("u4").has_value());
  EXPECT_EQ(g.stats(), (DatasetStats{3, 3, 1, 3, 3}));
}

TEST(UniqueResources, MatchesBruteForceOnRandomData) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto rows = oracle::random_fixture(seed, 30, 70, 12);
    std::map<std::string, std::set<std::string>> taggers;
    for (const auto& r : rows) taggers[r.item].insert(r.user);
    std::multiset<std::tuple<std::string, std::string, std::string>> want;
    std::map<std::tuple<std::string, std::string, std::string>, Timestamp> first;
    for (const auto& r : rows) {
      if (taggers[r.item].size() < 2) continue;
      auto key = std::make_tuple(r.user, r.item, r.tag);
      auto [it, fresh] = first.emplace(key, r.timestamp);
      if (!fresh) it->second = std::min(it->second, r.timestamp);
    }
    const auto g = remove_unique_resources(fixture::make(rows));
    std::map<std::tuple<std::string, std::string, std::string>, Timestamp> got;
    const auto& v = g.vocabulary();
    for (const auto& a : g.assignments())
      got[{v.users.name(a.user), v.items.name(a.item), v.tags.name(a.tag)}] = a.timestamp;
    EXPECT_EQ(got, first) << "seed " << seed;
  }
}

TEST(UniqueResources, NothingSharedIsAnEmptyDataset) {
  const auto f = fixture::make({{"u1", "r1", "a", 1}, {"u2", "r2", "a", 2}});
  try {
    (void)remove_unique_resources(f);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyDataset);
  }
}

Folksonomy hundred_users() {
  std::vector<RawAssignment> rows;
  for (int u = 0; u < 100; ++u)
    rows.push_back({"u" + std::to_string(u), "r" + std::to_string(u % 7), "t", 100 + u});
  return fixture::make(rows);
}

TEST(Sampling, KeepsTheRequestedShare) {
  const auto f = hundred_users();
  EXPECT_EQ(sample_users(f, 0.1, 42).stats().users, 10u);
  EXPECT_EQ(sample_users(f, 0.25, 42).stats().users, 25u);
  EXPECT_EQ(sample_users(f, 0.001, 42).stats().users, 1u);
}

TEST(Sampling, SameSeedSameUsers) {
  const auto f = hundred_users();
  const auto a = sample_users(f, 0.1, 7);
  const auto b = sample_users(f, 0.1, 7);
  EXPECT_EQ(a.vocabulary().users.names(), b.vocabulary().users.names());
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  const auto c = sample_users(f, 0.1, 8);
  EXPECT_NE(a.vocabulary().users.names(), c.vocabulary().users.names());
}

TEST(Sampling, FullFractionIsIdentity) {
  const auto f = hundred_users();
  EXPECT_EQ(sample_users(f, 1.0, 3).fingerprint(), f.fingerprint());
}

TEST(Sampling, RejectsBadFractions) {
  const auto f = hundred_users();
  EXPECT_THROW((void)sample_users(f, 0.0, 1), Error);
  EXPECT_THROW((void)sample_users(f, 1.5, 1), Error);
}

TEST(Preprocess, FourLineFixture) {
  std::istringstream in(
      "u1\tr1\tweb\t100\n"
      "u2\tr1\tweb\t200\n"
      "u2\tr2\tjava\t300\n"
      "u1\tr1\tbibtex-import\t100\n");
  const auto out = preprocess(in, DatasetSpec{});
  EXPECT_EQ(out.folksonomy.stats(), (DatasetStats{2, 2, 1, 1, 2}));
  EXPECT_EQ(out.blacklisted_assignments, 1u);
}

TEST(Preprocess, BundledFixtureStats) {
  DatasetSpec spec;
  spec.path = data_file("mini.tsv");
  const auto out = preprocess(spec);
  EXPECT_EQ(out.folksonomy.stats().to_string(), "B=38 U=12 R=9 T=15 TAS=61");
  EXPECT_EQ(out.folksonomy.fingerprint(), "1a33fa31fa630389");
  EXPECT_TRUE(out.folksonomy.indexes_consistent());
}

TEST(Snapshot, RoundTripsThroughTheParser) {
  DatasetSpec spec;
  spec.path = data_file("mini.tsv");
  const auto f = preprocess(spec).folksonomy;
  std::ostringstream snap;
  write_snapshot(snap, f);
  std::istringstream in(snap.str());
  const auto again = preprocess(in, DatasetSpec{});
  EXPECT_EQ(again.folksonomy.fingerprint(), f.fingerprint());
  EXPECT_EQ(again.malformed_lines, 0u);
}

}  // namespace
}  // namespace tagtime
