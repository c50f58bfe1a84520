// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/bbox.h"

#include <gtest/gtest.h>

#include "oracles.h"
#include "smearcount/errors.h"
#include "smearcount/rng.h"

namespace smearcount {
namespace {

TEST(IouTest, IdenticalBoxesGiveOne) {
  const BBox box{3, 4, 17, 9};
  EXPECT_DOUBLE_EQ(Iou(box, box), 1.0);
}

TEST(IouTest, DisjointBoxesGiveZero) {
  EXPECT_EQ(Iou({0, 0, 10, 10}, {20, 20, 30, 30}), 0.0);
  // Touching edges share no pixel under the half-open convention.
  EXPECT_EQ(Iou({0, 0, 10, 10}, {10, 0, 20, 10}), 0.0);
}

TEST(IouTest, HalfOverlapIsOneThird) {
  // Intersection 5x10 = 50, union 100 + 100 - 50 = 150.
  EXPECT_NEAR(Iou({0, 0, 10, 10}, {5, 0, 15, 10}), 1.0 / 3.0, 1e-15);
}

TEST(IouTest, ContainedBox) {
  EXPECT_DOUBLE_EQ(Iou({0, 0, 10, 10}, {0, 0, 5, 10}), 0.5);
}

TEST(IouTest, SymmetricBoundedAndMatchesRaster) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    auto random_box = [&] {
      const int x0 = static_cast<int>(rng.Between(0, 30));
      const int y0 = static_cast<int>(rng.Between(0, 30));
      return oracle::IntBox{x0, y0, x0 + static_cast<int>(rng.Between(1, 15)),
                            y0 + static_cast<int>(rng.Between(1, 15))};
    };
    const auto a = random_box();
    const auto b = random_box();
    const BBox ba{double(a.xmin), double(a.ymin), double(a.xmax), double(a.ymax)};
    const BBox bb{double(b.xmin), double(b.ymin), double(b.xmax), double(b.ymax)};
    const double v = Iou(ba, bb);
    EXPECT_EQ(v, Iou(bb, ba));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_NEAR(v, oracle::RasterIou(a, b, 48, 48), 1e-12);
  }
}

TEST(BBoxTest, Validity) {
  EXPECT_TRUE((BBox{0, 0, 1, 1}).IsValid());
  EXPECT_FALSE((BBox{5, 0, 5, 1}).IsValid());
  EXPECT_FALSE((BBox{-1, 0, 5, 1}).IsValid());
  EXPECT_TRUE((BBox{0, 0, 100, 100}).FitsIn(100, 100));
  EXPECT_FALSE((BBox{0, 0, 101, 100}).FitsIn(100, 100));
  EXPECT_THROW(ValidateBox({30, 20, 10, 40}, "t"), ValidationError);
  EXPECT_THROW(ValidateBoxInImage({0, 0, 10, 60}, 50, 50, "t"), ValidationError);
}

}  // namespace
}  // namespace smearcount
