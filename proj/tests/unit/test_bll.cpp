#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fixtures.hpp"
#include "tagtime/bll.hpp"
#include "tagtime/error.hpp"
#include "tagtime/stable_random.hpp"

namespace tagtime {
namespace {

using fixture::make;
using fixture::tid;
using fixture::uid;

double raw(std::vector<Timestamp> recencies, double d = 0.5) {
  const Timestamp ref = 1'000'000;
  for (auto& r : recencies) r = ref - r;
  return bll_raw(recencies, ref, d);
}

TEST(BllRaw, Examples) {
  EXPECT_EQ(raw({1}), 0.0);
  EXPECT_NEAR(raw({1, 4}), std::log(1.5), 1e-12);
  EXPECT_NEAR(raw({1, 4}), 0.405465, 1e-6);
  EXPECT_NEAR(raw({100}), std::log(0.1), 1e-12);
  EXPECT_NEAR(raw({100}), -2.302585, 1e-6);
}

TEST(BllRaw, SingleUseSlopeIsMinusDecay) {
  for (double d : {0.5, 0.3, 1.0, 1.7}) {
    for (Timestamp r : {1, 7, 60, 86400, 31'536'000}) {
      const double slope = (raw({10 * r}, d) - raw({r}, d)) / std::log(10.0);
      EXPECT_NEAR(slope, -d, 1e-9) << "d=" << d << " r=" << r;
    }
  }
}

TEST(BllRaw, Monotonicity) {
  StableRandom rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Timestamp> uses;
    const auto n = 1 + rng.below(8);
    for (std::uint64_t k = 0; k < n; ++k) uses.push_back(1 + static_cast<Timestamp>(rng.below(900'000)));
    const double base = raw(uses);
    // One more use raises activation.
    auto more = uses;
    more.push_back(1 + static_cast<Timestamp>(rng.below(900'000)));
    EXPECT_GT(raw(more), base);
    // Making any single use more recent raises activation.
    auto fresher = uses;
    const auto pick = rng.below(fresher.size());
    if (fresher[pick] > 1) {
      fresher[pick] = 1 + static_cast<Timestamp>(rng.below(static_cast<std::uint64_t>(fresher[pick] - 1)));
      EXPECT_GT(raw(fresher), base);
    }
  }
}

TEST(BllRaw, ContractViolations) {
  const std::vector<Timestamp> none;
  EXPECT_THROW((void)bll_raw(none, 10, 0.5), std::invalid_argument);
  const std::vector<Timestamp> at_ref = {10};
  EXPECT_THROW((void)bll_raw(at_ref, 10, 0.5), std::invalid_argument);
  const std::vector<Timestamp> ok = {9};
  EXPECT_THROW((void)bll_raw(ok, 10, 0.0), std::invalid_argument);
}

TEST(Normalize, Softmax) {
  std::vector<double> v = {0.0, std::log(1.5)};
  normalize_activations(v, BllNormalization::kSoftmax);
  EXPECT_NEAR(v[0], 0.4, 1e-12);
  EXPECT_NEAR(v[1], 0.6, 1e-12);
  std::vector<double> big = {1000.0, 1000.0};
  normalize_activations(big, BllNormalization::kSoftmax);
  EXPECT_NEAR(big[0], 0.5, 1e-15);
}

TEST(Normalize, MinMax) {
  std::vector<double> v = {-2.0, 0.0, 2.0};
  normalize_activations(v, BllNormalization::kMinMax);
  EXPECT_EQ(v, (std::vector<double>{0.0, 0.5, 1.0}));
  std::vector<double> flat = {3.0, 3.0};
  normalize_activations(flat, BllNormalization::kMinMax);
  EXPECT_EQ(flat, (std::vector<double>{1.0, 1.0}));
}

TEST(Profile, SingleTagIsOne) {
  const auto f = make({{"u", "i1", "web", 100}, {"u", "i2", "web", 200}});
  const auto p = build_bll_profile(f, uid(f, "u"), 201, {}, BllNormalization::kSoftmax);
  ASSERT_EQ(p.values.size(), 1u);
  EXPECT_DOUBLE_EQ(p.value(tid(f, "web")), 1.0);
}

TEST(Profile, TwoTagsSplitFortySixty) {
  // a: one use at recency 1 -> raw 0; b: uses at recency 1 and 4 -> raw ln 1.5.
  const auto f = make({{"u", "i1", "a", 999}, {"u", "i2", "b", 999}, {"u", "i3", "b", 996}});
  const auto p = build_bll_profile(f, uid(f, "u"), 1000, {}, BllNormalization::kSoftmax);
  EXPECT_NEAR(p.value(tid(f, "a")), 0.4, 1e-12);
  EXPECT_NEAR(p.value(tid(f, "b")), 0.6, 1e-12);
  EXPECT_EQ(p.reference, 1000);
}

TEST(Profile, ShiftInvariance) {
  StableRandom rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RawAssignment> a, b;
    const Timestamp shift = static_cast<Timestamp>(rng.below(1'000'000'000));
    Timestamp last = 0;
    for (int k = 0; k < 12; ++k) {
      const Timestamp ts = 1000 + static_cast<Timestamp>(rng.below(100'000));
      const std::string tag = "t" + std::to_string(rng.below(4));
      const std::string item = "i" + std::to_string(k);
      a.push_back({"u", item, tag, ts});
      b.push_back({"u", item, tag, ts + shift});
      last = std::max(last, ts);
    }
    const auto fa = make(a);
    const auto fb = make(b);
    const auto pa = build_bll_profile(fa, 0, last + 1, {}, BllNormalization::kSoftmax);
    const auto pb = build_bll_profile(fb, 0, last + 1 + shift, {}, BllNormalization::kSoftmax);
    ASSERT_EQ(pa.values.size(), pb.values.size());
    for (std::size_t i = 0; i < pa.values.size(); ++i) {
      EXPECT_EQ(pa.values[i].tag, pb.values[i].tag);
      EXPECT_EQ(pa.values[i].value, pb.values[i].value);
    }
  }
}

TEST(Profile, NoUsesIsNoProfile) {
  const auto f = make({{"u", "i", "a", 1}, {"v", "i", "a", 2}});
  const auto g = f.filter_posts([](const Post& p) { return p.user == 0; },
                                VocabularyMode::kRetain);
  try {
    (void)build_bll_profile(g, 1, 10, {}, BllNormalization::kSoftmax);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoProfile);
  }
}

TEST(BllItem, SumsOverSharedTags) {
  const auto f = make({{"u", "i1", "a", 999}, {"u", "i2", "b", 999}, {"u", "i3", "b", 996},
                       {"v", "i4", "c", 5}});
  const auto p = build_bll_profile(f, uid(f, "u"), 1000, {}, BllNormalization::kSoftmax);
  const TagId a = tid(f, "a"), b = tid(f, "b"), c = tid(f, "c");
  EXPECT_EQ(bll_item(p, std::vector<TagId>{c}), 0.0);
  EXPECT_NEAR(bll_item(p, std::vector<TagId>{b, c}), 0.6, 1e-12);
  EXPECT_NEAR(bll_item(p, std::vector<TagId>{a, b, c}), 1.0, 1e-12);
}

}  // namespace
}  // namespace tagtime
