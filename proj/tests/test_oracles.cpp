#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace flep::oracle;

TEST(DwtReference, ConstantClosedForm) {
  const auto s = dwt2_reference(4, 2, std::vector<double>(8, 3.0));
  for (double v : s.ll) EXPECT_NEAR(v, 6.0, 1e-12);
  for (double v : s.lh) EXPECT_NEAR(v, 0.0, 1e-12);
  for (double v : s.hl) EXPECT_NEAR(v, 0.0, 1e-12);
  for (double v : s.hh) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(DwtReference, ConservesEnergy) {
  const auto x = flep::tu::random_plane(10, 6, 3);
  const std::vector<double> v(x.values().begin(), x.values().end());
  const auto s = dwt2_reference(10, 6, v);
  double ein = 0.0, eout = 0.0;
  for (double a : v) ein += a * a;
  for (const auto* band : {&s.ll, &s.lh, &s.hl, &s.hh})
    for (double a : *band) eout += a * a;
  EXPECT_NEAR(ein, eout, 1e-9 * ein);
}

TEST(PaillierReference, ToyKeyPasses) { EXPECT_TRUE(paillier_exhaustive_check(11, 13)); }

TEST(PaillierReference, EqualPrimesRejected) {
  EXPECT_THROW(paillier_exhaustive_check(11, 11), std::invalid_argument);
}

TEST(PaillierReference, CorruptedMuFails) { EXPECT_FALSE(paillier_exhaustive_check(11, 13, 1)); }

TEST(PaillierReference, ToyLambda) {
  const ToyPaillier t(11, 13);
  EXPECT_EQ(t.n, 143u);
  EXPECT_EQ(t.lambda, 60u);
}

TEST(KeystreamReference, SmallCases) {
  EXPECT_EQ(keystream_byte_reference(0.0), 0);
  EXPECT_EQ(keystream_byte_reference(0.5), 0);                       // 2^52
  EXPECT_EQ(keystream_byte_reference(std::ldexp(255.0, -53)), 255);  // smallest bytes
  EXPECT_EQ(keystream_byte_reference(std::ldexp(257.0, -53)), 1);
}

TEST(SpiralReference, ThreeByThree) {
  EXPECT_EQ(spiral_reference(3), (std::vector<std::size_t>{0, 1, 2, 5, 8, 7, 6, 3, 4}));
}

TEST(RankReference, TiesByIndex) {
  EXPECT_EQ(rank_reference({0.2, 0.1, 0.2, 0.0}), (std::vector<std::size_t>{2, 1, 3, 0}));
}
