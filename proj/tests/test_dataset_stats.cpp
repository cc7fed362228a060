#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sodbench/dataset_stats.hpp"

using namespace sodbench;
using namespace sodbench::testing;

namespace {

BinaryMask square(Extent e, int x0, int y0, int side) {
  std::vector<std::uint8_t> bits(e.pixels(), 0);
  for (int y = y0; y < y0 + side; ++y)
    for (int x = x0; x < x0 + side; ++x) bits[static_cast<std::size_t>(y * e.width + x)] = 1;
  return BinaryMask(e, bits);
}

}  // namespace

TEST(MaskStats, Examples) {
  const auto centred = mask_stats(square({10, 10}, 3, 3, 4));
  ASSERT_TRUE(centred);
  EXPECT_NEAR(centred->r_o, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(centred->size, 0.16);
  EXPECT_EQ(centred->components, 1);

  const auto full = mask_stats(BinaryMask::filled({7, 4}, true));
  EXPECT_DOUBLE_EQ(full->size, 1.0);
  EXPECT_DOUBLE_EQ(full->r_m, 1.0);

  const auto corner = mask_stats(square({10, 10}, 0, 0, 1));
  const double expected = std::hypot(4.5, 4.5) / std::hypot(4.5, 4.5);
  EXPECT_DOUBLE_EQ(corner->r_o, expected);
  EXPECT_DOUBLE_EQ(corner->r_m, expected);

  // Off-diagonal pixel: distance from (4.5, 4.5) to (2, 7) over the half-diagonal.
  std::vector<std::uint8_t> bits(100, 0);
  bits[7 * 10 + 2] = 1;
  const auto one = mask_stats(BinaryMask({10, 10}, bits));
  EXPECT_DOUBLE_EQ(one->r_o, std::hypot(2.5, 2.5) / std::hypot(4.5, 4.5));

  EXPECT_FALSE(mask_stats(BinaryMask::filled({3, 3}, false)));
}

TEST(MaskStats, RangesAndMarginDominatesCentre) {
  Rng rng(40);
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryMask m = trial % 2 ? random_blob(rng, {15, 11}) : random_mask(rng, {15, 11}, 0.2);
    const auto s = mask_stats(m);
    if (!s) continue;
    for (double v : {s->r_o, s->r_m, s->size}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_GE(s->r_m + 1e-12, s->r_o);
  }
}

TEST(MaskStats, MovingTowardCentreShrinksRo) {
  const Extent e{40, 40};
  double prev = 2.0;
  for (int offset = 0; offset <= 16; offset += 2) {
    const auto s = mask_stats(square(e, offset, offset, 6));
    EXPECT_LT(s->r_o, prev);
    prev = s->r_o;
  }
}

TEST(Components, EightConnectivity) {
  // Diagonal touch joins, a gap splits.
  const BinaryMask diag({4, 4}, {1, 0, 0, 0,  //
                                 0, 1, 0, 0,  //
                                 0, 0, 0, 1,  //
                                 0, 0, 0, 1});
  EXPECT_EQ(count_components(diag), 2);
  EXPECT_EQ(count_components(BinaryMask::filled({5, 5}, false)), 0);
  EXPECT_EQ(count_components(BinaryMask::filled({5, 5}, true)), 1);
}

TEST(Distribution, Examples) {
  const std::vector<double> one{0.42};
  const auto d1 = distribution(one, 10);
  EXPECT_DOUBLE_EQ(d1[4], 1.0);

  const std::vector<double> two{0.1, 0.9};
  EXPECT_EQ(distribution(two, 2), (std::vector<double>{0.5, 0.5}));

  const std::vector<double> top{1.0, 0.0};
  const auto d3 = distribution(top, 4);
  EXPECT_DOUBLE_EQ(d3[3], 0.5);
  EXPECT_DOUBLE_EQ(d3[0], 0.5);

  EXPECT_THROW(distribution(std::vector<double>{}, 3), std::invalid_argument);
  EXPECT_THROW(distribution(one, 0), std::invalid_argument);
}

TEST(Distribution, UniformSamplesSpreadEvenly) {
  Rng rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(1000);
  for (double& x : v) x = u(rng);
  const auto d = distribution(v, 10);
  double total = 0.0;
  for (double p : d) {
    EXPECT_NEAR(p, 0.1, 0.04);
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);

  std::vector<double> shuffled = v;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  EXPECT_EQ(distribution(shuffled, 10), d);
}

TEST(Summary, Examples) {
  // 4x4 mask with 4 pixels: size 0.25.
  const std::vector<BinaryMask> one{square({4, 4}, 1, 1, 2)};
  const DatasetSummary s = dataset_summary(one);
  EXPECT_DOUBLE_EQ(s.size.mean, 0.25);
  EXPECT_DOUBLE_EQ(s.size.min, 0.25);
  EXPECT_DOUBLE_EQ(s.size.max, 0.25);

  // sizes 0.1 and 0.3 on a 10x10 grid
  std::vector<std::uint8_t> a(100, 0), b(100, 0);
  std::fill(a.begin(), a.begin() + 10, 1);
  std::fill(b.begin(), b.begin() + 30, 1);
  const std::vector<BinaryMask> two{BinaryMask({10, 10}, a), BinaryMask({10, 10}, b),
                                    BinaryMask::filled({10, 10}, false)};
  const DatasetSummary t = dataset_summary(two);
  EXPECT_NEAR(t.size.mean, 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(t.size.min, 0.1);
  EXPECT_DOUBLE_EQ(t.size.max, 0.3);
  EXPECT_EQ(t.mask_count, 2u);
  EXPECT_EQ(t.empty_count, 1u);
  EXPECT_EQ(t.objects_per_image.at(1), 2u);

  EXPECT_THROW(dataset_summary(std::vector<BinaryMask>{}), std::invalid_argument);
  EXPECT_THROW(dataset_summary(std::vector<BinaryMask>{BinaryMask::filled({2, 2}, false)}),
               std::invalid_argument);
}
