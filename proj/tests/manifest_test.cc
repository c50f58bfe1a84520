// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/manifest.h"

#include <filesystem>

#include <gtest/gtest.h>

#include "smearcount/errors.h"
#include "smearcount/rng.h"
#include "smearcount/text.h"

namespace smearcount {
namespace {

Dataset RandomDataset(std::uint64_t seed, int n) {
  Rng rng(seed);
  Dataset d;
  for (int i = 0; i < n; ++i) {
    ImageRecord r;
    r.image_id = "img \"" + std::to_string(i) + "\"\tq";
    r.width = static_cast<int>(rng.Between(50, 800));
    r.height = static_cast<int>(rng.Between(50, 800));
    r.metadata.slide_id = "slide-" + std::to_string(rng.Below(3));
    if (rng.Bernoulli(0.5)) r.metadata.stage_x = rng.Uniform() * 100;
    if (rng.Bernoulli(0.5)) r.metadata.stage_y = rng.Uniform() * 100;
    if (rng.Bernoulli(0.5)) r.metadata.phone_zoom = 10;
    if (rng.Bernoulli(0.5)) r.metadata.objective_magnification = 1000;
    if (rng.Bernoulli(0.5)) r.metadata.stain = "giemsa, 10%";
    const int objects = static_cast<int>(rng.Below(6));
    for (int k = 0; k < objects; ++k) {
      const double x0 = rng.Uniform() * (r.width - 2);
      const double y0 = rng.Uniform() * (r.height - 2);
      const double x1 = x0 + 1 + rng.Uniform() * (r.width - x0 - 1);
      const double y1 = y0 + 1 + rng.Uniform() * (r.height - y0 - 1);
      r.objects.push_back({{x0, y0, std::min<double>(x1, r.width),
                            std::min<double>(y1, r.height)},
                           rng.Bernoulli(0.5) ? ClassLabel::kWbc
                                              : ClassLabel::kTrophozoite});
    }
    d.records.push_back(r);
  }
  return d;
}

TEST(ManifestTest, RoundTripIsIdentity) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset d = RandomDataset(seed, 7);
    ValidateDataset(d);
    EXPECT_EQ(ParseManifest(SerializeManifest(d)), d);
  }
}

TEST(ManifestTest, EmptyDatasetIsHeaderOnly) {
  const std::string text = SerializeManifest({});
  EXPECT_EQ(text, "{\"format\":\"smearcount-manifest\",\"version\":1}\n");
  EXPECT_TRUE(ParseManifest(text).empty());
}

TEST(ManifestTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "smearcount_manifest.jsonl";
  const Dataset d = RandomDataset(99, 4);
  WriteManifest(d, path.string());
  EXPECT_EQ(ReadManifest(path.string()), d);
}

TEST(ManifestTest, DuplicateImageIdRejected) {
  Dataset d = RandomDataset(3, 2);
  d.records[1].image_id = d.records[0].image_id;
  EXPECT_THROW(ParseManifest(SerializeManifest(d)), ValidationError);
}

TEST(ManifestTest, VersionMismatchRejected) {
  EXPECT_THROW(ParseManifest("{\"format\":\"smearcount-manifest\",\"version\":2}\n"),
               ParseError);
  EXPECT_THROW(ParseManifest("{\"format\":\"other\",\"version\":1}\n"), ParseError);
  EXPECT_THROW(ParseManifest(""), ParseError);
}

TEST(ManifestTest, BadRecordsRejected) {
  const std::string header = "{\"format\":\"smearcount-manifest\",\"version\":1}\n";
  EXPECT_THROW(ParseManifest(header + "{not json\n"), ParseError);
  EXPECT_THROW(ParseManifest(header + "{\"image_id\":\"a\"}\n"), ParseError);
  // Box escapes the image.
  EXPECT_THROW(
      ParseManifest(header +
                    "{\"image_id\":\"a\",\"width\":10,\"height\":10,\"metadata\":"
                    "{\"slide_id\":\"s\"},\"objects\":[{\"label\":\"wbc\",\"xmin\":0,"
                    "\"ymin\":0,\"xmax\":11,\"ymax\":5}]}\n"),
      ValidationError);
}

TEST(ManifestTest, MissingFileIsIoError) {
  EXPECT_THROW(ReadManifest("/nonexistent/manifest.jsonl"), IoError);
}

}  // namespace
}  // namespace smearcount
