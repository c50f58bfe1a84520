// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <string>

#include "smearcount/bbox.h"
#include "smearcount/dataset.h"

namespace smearcount {

enum class FlipKind { kHorizontal, kVertical };

// Mirror image of `box` in a width x height image. Horizontal reflects x
// about the vertical centre line, Vertical reflects y. Throws ValidationError
// when the box is not inside the image.
BBox FlipBox(const BBox& box, FlipKind kind, double width, double height);

// Which flips fired, in application order (horizontal first). Replaying the
// same flips on the pixel buffer reproduces the augmented image exactly.
struct AppliedFlips {
  bool horizontal = false;
  bool vertical = false;

  bool any() const { return horizontal || vertical; }
  // "", "h", "v" or "hv".
  std::string Suffix() const;

  friend bool operator==(const AppliedFlips&, const AppliedFlips&) = default;
};

struct AugmentedRecord {
  ImageRecord record;
  AppliedFlips flips;
};

inline constexpr double kDefaultFlipProbability = 0.5;

// Independently applies a horizontal flip with probability p_horizontal and a
// vertical flip with probability p_vertical. The two Bernoulli draws come from
// Rng(seed) in that order. image_id and metadata are left untouched.
AugmentedRecord AugmentRecord(const ImageRecord& record, std::uint64_t seed,
                              double p_horizontal = kDefaultFlipProbability,
                              double p_vertical = kDefaultFlipProbability);

// Dataset-expansion semantics: every original record plus one flipped copy
// per record whose draw fired, with image_id "<id>_<suffix>". Record i uses
// seed + i.
Dataset ExpandDataset(const Dataset& dataset, std::uint64_t seed,
                      double p_horizontal = kDefaultFlipProbability,
                      double p_vertical = kDefaultFlipProbability);

}  // namespace smearcount
