// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smearcount/detection.h"
#include "smearcount/image.h"

namespace smearcount {

// 4-connected component labeling of a row-major binary mask. Labels are
// 1..n in raster order of each component's first pixel; 0 is background.
std::vector<int> LabelComponents(const std::vector<std::uint8_t>& mask, int width,
                                 int height, int* num_components = nullptr);

struct BlobDetectorOptions {
  double intensity_threshold = 0.5;  // pixels strictly darker are foreground
  int size_split = 200;              // area >= size_split -> WBC
  int min_area = 4;                  // smaller components are dropped
};

// Classical detector: threshold, label, classify by area. The bbox is the
// component's pixel extent and the score is 1 - mean/threshold, clamped to
// [0, 1], so darker blobs score higher. Output is in label order.
std::vector<Detection> DetectBlobs(const GrayImage& image,
                                   const std::string& image_id,
                                   const BlobDetectorOptions& options = {});

}  // namespace smearcount
