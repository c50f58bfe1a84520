// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/dataset.h"

#include <set>

#include "smearcount/errors.h"

namespace smearcount {

const ImageRecord* Dataset::Find(const std::string& image_id) const {
  for (const auto& record : records) {
    if (record.image_id == image_id) return &record;
  }
  return nullptr;
}

void ValidateMetadata(const CaptureMetadata& metadata,
                      const std::string& context) {
  if (metadata.slide_id.empty()) {
    throw ValidationError(context + ": empty slide_id");
  }
  auto non_negative = [&](const std::optional<double>& v, const char* name) {
    if (v && !(*v >= 0)) {
      throw ValidationError(context + ": " + name + " must be non-negative");
    }
  };
  non_negative(metadata.stage_x, "stage_x");
  non_negative(metadata.stage_y, "stage_y");
  non_negative(metadata.phone_zoom, "phone_zoom");
  if (metadata.objective_magnification && *metadata.objective_magnification < 0) {
    throw ValidationError(context +
                          ": objective_magnification must be non-negative");
  }
}

void ValidateRecord(const ImageRecord& record) {
  if (record.image_id.empty()) throw ValidationError("record with empty image_id");
  const std::string context = "image '" + record.image_id + "'";
  if (record.width <= 0 || record.height <= 0) {
    throw ValidationError(context + ": non-positive image size");
  }
  for (const auto& object : record.objects) {
    ValidateBoxInImage(object.bbox, record.width, record.height, context);
  }
  ValidateMetadata(record.metadata, context);
}

void ValidateDataset(const Dataset& dataset) {
  std::set<std::string> seen;
  for (const auto& record : dataset.records) {
    ValidateRecord(record);
    if (!seen.insert(record.image_id).second) {
      throw ValidationError("duplicate image_id '" + record.image_id + "'");
    }
  }
}

}  // namespace smearcount
