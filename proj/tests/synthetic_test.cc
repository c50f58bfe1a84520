// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/synthetic.h"

#include <algorithm>

#include <gtest/gtest.h>

#include "oracles.h"
#include "smearcount/blob_detector.h"
#include "smearcount/errors.h"
#include "smearcount/rng.h"

namespace smearcount {
namespace {

std::vector<BBox> BoxesOf(const std::vector<GroundTruthObject>& objects, ClassLabel label) {
  std::vector<BBox> out;
  for (const auto& o : objects) {
    if (o.label == label) out.push_back(o.bbox);
  }
  std::sort(out.begin(), out.end(), [](const BBox& a, const BBox& b) {
    return std::tie(a.xmin, a.ymin) < std::tie(b.xmin, b.ymin);
  });
  return out;
}

TEST(GenerateTest, EmptySpecIsBlank) {
  SyntheticSpec spec;
  spec.width = 64;
  spec.height = 48;
  spec.n_trophozoites = 0;
  spec.n_wbcs = 0;
  const auto [image, record] = Generate(spec, "blank");
  EXPECT_EQ(image.width(), 64);
  EXPECT_EQ(image.height(), 48);
  EXPECT_TRUE(record.objects.empty());
  EXPECT_EQ(record.image_id, "blank");
  for (float v : image.pixels()) EXPECT_EQ(v, spec.background);
  EXPECT_TRUE(DetectBlobs(image, "blank").empty());
}

TEST(GenerateTest, ForbidOverlapSeparatesObjects) {
  SyntheticSpec spec;
  spec.n_trophozoites = 5;
  spec.n_wbcs = 2;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    spec.seed = seed;
    const auto [image, record] = Generate(spec);
    ASSERT_EQ(record.objects.size(), 7u);
    EXPECT_NO_THROW(ValidateRecord(record));
    for (std::size_t i = 0; i < record.objects.size(); ++i) {
      for (std::size_t j = i + 1; j < record.objects.size(); ++j) {
        EXPECT_EQ(Iou(record.objects[i].bbox, record.objects[j].bbox), 0.0);
      }
    }
  }
}

TEST(GenerateTest, DeterministicForSeed) {
  SyntheticSpec spec;
  spec.noise = 0.3;
  spec.seed = 17;
  const auto a = Generate(spec);
  const auto b = Generate(spec);
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
  spec.seed = 18;
  EXPECT_NE(Generate(spec).first, a.first);
}

TEST(GenerateTest, RejectsImpossibleSpec) {
  SyntheticSpec spec;
  spec.width = 20;
  spec.height = 20;
  spec.n_wbcs = 5;
  spec.max_attempts = 50;
  EXPECT_THROW(Generate(spec), ValidationError);
  SyntheticSpec bad;
  bad.trophozoite_radius = {5, 3};
  EXPECT_THROW(ValidateSpec(bad), ValidationError);
  bad = {};
  bad.noise = -1;
  EXPECT_THROW(ValidateSpec(bad), ValidationError);
}

TEST(DiscAreaTest, MatchesRasterCount) {
  for (int r = 0; r <= 20; ++r) {
    int count = 0;
    for (int y = -r; y <= r; ++y) {
      for (int x = -r; x <= r; ++x) count += x * x + y * y <= r * r;
    }
    EXPECT_EQ(DiscArea(r), count) << r;
  }
  EXPECT_EQ(SuggestedSizeSplit(SyntheticSpec{}), (DiscArea(6) + DiscArea(10)) / 2);
}

TEST(LabelComponentsTest, MatchesFloodFill) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int w = static_cast<int>(rng.Between(1, 32));
    const int h = static_cast<int>(rng.Between(1, 32));
    const double density = rng.Uniform();
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(w * h));
    for (auto& m : mask) m = rng.Bernoulli(density);
    int n = 0;
    const auto got = LabelComponents(mask, w, h, &n);
    const auto want = oracle::FloodFillLabels(mask, w, h);
    EXPECT_EQ(got, want);
    EXPECT_EQ(n, want.empty() ? 0 : *std::max_element(want.begin(), want.end()));
  }
}

TEST(DetectBlobsTest, CleanImagesRecoverGroundTruth) {
  SyntheticSpec spec;
  BlobDetectorOptions options;
  options.size_split = SuggestedSizeSplit(spec);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    spec.seed = seed;
    const auto [image, record] = Generate(spec);
    const auto dets = DetectBlobs(image, record.image_id, options);
    std::vector<GroundTruthObject> as_objects;
    for (const auto& d : dets) {
      EXPECT_NEAR(d.score, 1.0 - 0.2 / 0.5, 1e-6);
      EXPECT_EQ(d.image_id, record.image_id);
      as_objects.push_back({d.bbox, d.label});
    }
    for (ClassLabel label : kAllClasses) {
      EXPECT_EQ(BoxesOf(as_objects, label), BoxesOf(record.objects, label));
    }
  }
}

TEST(DetectBlobsTest, AreaAtSplitIsWbc) {
  GrayImage image(30, 30, 1.0f);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 5; ++x) image.at(x + 2, y + 3) = 0.0f;
  }
  BlobDetectorOptions options;
  options.size_split = 20;
  auto dets = DetectBlobs(image, "i", options);
  ASSERT_EQ(dets.size(), 1u);
  EXPECT_EQ(dets[0].label, ClassLabel::kWbc);
  EXPECT_EQ(dets[0].bbox, (BBox{2, 3, 7, 7}));
  EXPECT_EQ(dets[0].score, 1.0);
  options.size_split = 21;
  EXPECT_EQ(DetectBlobs(image, "i", options)[0].label, ClassLabel::kTrophozoite);
  options.min_area = 21;
  EXPECT_TRUE(DetectBlobs(image, "i", options).empty());
}

}  // namespace
}  // namespace smearcount
