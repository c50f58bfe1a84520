// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/augment.h"

#include "smearcount/errors.h"
#include "smearcount/rng.h"

namespace smearcount {

BBox FlipBox(const BBox& box, FlipKind kind, double width, double height) {
  ValidateBoxInImage(box, width, height, "flip");
  if (kind == FlipKind::kHorizontal) {
    return {width - box.xmax, box.ymin, width - box.xmin, box.ymax};
  }
  return {box.xmin, height - box.ymax, box.xmax, height - box.ymin};
}

std::string AppliedFlips::Suffix() const {
  std::string s;
  if (horizontal) s += 'h';
  if (vertical) s += 'v';
  return s;
}

AugmentedRecord AugmentRecord(const ImageRecord& record, std::uint64_t seed,
                              double p_horizontal, double p_vertical) {
  if (!(p_horizontal >= 0 && p_horizontal <= 1) ||
      !(p_vertical >= 0 && p_vertical <= 1)) {
    throw ValidationError("flip probabilities must lie in [0, 1]");
  }
  ValidateRecord(record);

  Rng rng(seed);
  AugmentedRecord out{record, {}};
  out.flips.horizontal = rng.Bernoulli(p_horizontal);
  out.flips.vertical = rng.Bernoulli(p_vertical);

  for (auto& object : out.record.objects) {
    if (out.flips.horizontal) {
      object.bbox = FlipBox(object.bbox, FlipKind::kHorizontal, record.width,
                            record.height);
    }
    if (out.flips.vertical) {
      object.bbox = FlipBox(object.bbox, FlipKind::kVertical, record.width,
                            record.height);
    }
  }
  return out;
}

Dataset ExpandDataset(const Dataset& dataset, std::uint64_t seed,
                      double p_horizontal, double p_vertical) {
  Dataset out;
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    const auto& original = dataset.records[i];
    out.records.push_back(original);
    auto augmented = AugmentRecord(original, seed + i, p_horizontal, p_vertical);
    if (augmented.flips.any()) {
      augmented.record.image_id += "_" + augmented.flips.Suffix();
      out.records.push_back(std::move(augmented.record));
    }
  }
  ValidateDataset(out);
  return out;
}

}  // namespace smearcount
