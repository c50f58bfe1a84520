// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "smearcount/dataset.h"
#include "smearcount/image.h"

namespace smearcount {

struct RadiusRange {
  int min = 1;
  int max = 1;
};

enum class OverlapPolicy { kForbid, kAllow };

// Desk-scale stand-in for a thick-smear field: dark filled discs on a light
// background. WBCs are drawn larger than trophozoites.
struct SyntheticSpec {
  int width = 256;
  int height = 256;
  int n_trophozoites = 8;
  int n_wbcs = 3;
  RadiusRange trophozoite_radius{3, 6};
  RadiusRange wbc_radius{10, 14};
  double noise = 0.0;  // Gaussian sigma = noise / 4, clamped to [0, 1]
  OverlapPolicy overlap = OverlapPolicy::kForbid;
  std::uint64_t seed = 0;
  float background = 0.85f;
  float foreground = 0.2f;
  int max_attempts = 1000;  // placement retries per disc
};

// Throws ValidationError describing the first violated constraint.
void ValidateSpec(const SyntheticSpec& spec);

// Number of pixels in a rendered disc of integer radius r.
int DiscArea(int radius);

// Midpoint between the largest trophozoite disc and the smallest WBC disc.
int SuggestedSizeSplit(const SyntheticSpec& spec);

// Renders the image and its exact ground truth. A disc of radius r centred on
// pixel (cx, cy) covers pixels with (x-cx)^2 + (y-cy)^2 <= r^2; its box is
// [cx-r, cx+r+1) x [cy-r, cy+r+1). Under kForbid, boxes keep at least a
// 2-pixel gap. Deterministic given the spec. Throws ValidationError when the
// discs cannot be placed within max_attempts tries each.
std::pair<GrayImage, ImageRecord> Generate(const SyntheticSpec& spec,
                                           const std::string& image_id = "synthetic");

}  // namespace smearcount
