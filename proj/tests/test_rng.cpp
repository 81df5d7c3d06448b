#include <gtest/gtest.h>

#include <array>
#include <unordered_set>
#include <vector>

#include "edubandit/rng.hpp"

namespace edubandit {
namespace {

// Frozen from an independent Python implementation of SplitMix64 seeding +
// xoshiro256**.
TEST(RngStream, MatchesReferenceSequence) {
  RngStream rng(42);
  EXPECT_EQ(rng.next_u64(), 0x15780b2e0c2ec716ULL);
  EXPECT_EQ(rng.next_u64(), 0x6104d9866d113a7eULL);
  EXPECT_EQ(rng.next_u64(), 0xae17533239e499a1ULL);
  EXPECT_EQ(rng.next_u64(), 0xecb8ad4703b360a1ULL);

  RngStream zero(0);
  EXPECT_EQ(zero.uniform(), 0.6012629994179048);
}

TEST(RngStream, DeriveSeedMatchesReference) {
  EXPECT_EQ(derive_seed(42, 0), 0xbdd732262feb6e95ULL);
  EXPECT_EQ(derive_seed(42, 1), 0x28efe333b266f103ULL);
  EXPECT_EQ(derive_seed(42, 2), 0x47526757130f9f52ULL);
}

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(123456789), b(123456789);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  EXPECT_EQ(a, b);
}

TEST(RngStream, DeriveSeedInjectiveOverRunIndex) {
  for (std::uint64_t base : {0ULL, 42ULL, 0xFFFFFFFFFFFFFFFFULL}) {
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 200'000; ++i) {
      ASSERT_TRUE(seen.insert(derive_seed(base, i)).second) << "base " << base << " run " << i;
    }
  }
}

TEST(RngStream, UniformAndIndexRanges) {
  RngStream rng(7);
  for (int i = 0; i < 100'000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.uniform_index(3), 3U);
  }
  EXPECT_EQ(RngStream::scale_to_index(0.9999999999999999, 4), 3U);
  EXPECT_EQ(RngStream::scale_to_index(0.0, 4), 0U);
}

TEST(RngStream, CategoricalSkipsZeroWeights) {
  RngStream rng(9);
  const std::array<double, 4> w{0.0, 0.0, 1.0, 0.0};
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(rng.categorical(w), 2U);
}

}  // namespace
}  // namespace edubandit
