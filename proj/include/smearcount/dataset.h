// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smearcount/bbox.h"
#include "smearcount/labels.h"

namespace smearcount {

struct GroundTruthObject {
  BBox bbox;
  ClassLabel label = ClassLabel::kTrophozoite;

  friend bool operator==(const GroundTruthObject&,
                         const GroundTruthObject&) = default;
};

// Microscope set-up recorded alongside each captured field of view.
struct CaptureMetadata {
  std::string slide_id;
  std::optional<double> stage_x;  // stage micrometer grid reading
  std::optional<double> stage_y;
  std::optional<double> phone_zoom;
  std::optional<int> objective_magnification;
  std::optional<std::string> stain;

  friend bool operator==(const CaptureMetadata&,
                         const CaptureMetadata&) = default;
};

// slide_id used when no capture metadata is available for an image.
inline constexpr const char* kUnknownSlide = "unknown";

struct ImageRecord {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<GroundTruthObject> objects;
  CaptureMetadata metadata;

  friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

struct Dataset {
  std::vector<ImageRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }

  // Returns nullptr when absent.
  const ImageRecord* Find(const std::string& image_id) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

void ValidateMetadata(const CaptureMetadata& metadata,
                      const std::string& context);

// Checks dimensions, object boxes and metadata. Throws ValidationError.
void ValidateRecord(const ImageRecord& record);

// ValidateRecord on every record plus image_id uniqueness.
void ValidateDataset(const Dataset& dataset);

}  // namespace smearcount
