// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>

#include "smearcount/dataset.h"

namespace smearcount {

struct SplitResult {
  Dataset train;
  Dataset test;
};

struct SplitOptions {
  double train_fraction = 0.9;
  std::uint64_t seed = 0;
  // Keep all images of one slide on the same side of the split.
  bool group_by_slide = false;
};

// Seeded train/test partition. Records are sorted by image_id and shuffled
// with Fisher-Yates (Rng), then the first round(n * fraction) go to train,
// clamped so each side gets at least one record when n >= 2. With
// group_by_slide, whole slides are shuffled and assigned to train until the
// target size is reached. Both halves come back sorted by image_id.
SplitResult SplitDataset(const Dataset& dataset, const SplitOptions& options);

}  // namespace smearcount
