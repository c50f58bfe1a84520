// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>

#include "smearcount/dataset.h"

namespace smearcount {

inline constexpr const char* kManifestFormat = "smearcount-manifest";
inline constexpr int kManifestVersion = 1;

// Manifest layout (JSON Lines, UTF-8, '\n' separated):
//
//   line 1:  {"format":"smearcount-manifest","version":1}
//   line 2+: one object per image with keys in this order:
//            image_id, width, height,
//            metadata{slide_id, stage_x, stage_y, phone_zoom,
//                     objective_magnification, stain},
//            objects[{label, xmin, ymin, xmax, ymax}]
//
// Absent optional metadata fields are written as null. Labels use the
// canonical class tokens "trophozoite" and "wbc".
std::string SerializeManifest(const Dataset& dataset);
Dataset ParseManifest(const std::string& contents);

void WriteManifest(const Dataset& dataset, const std::string& path);
Dataset ReadManifest(const std::string& path);

}  // namespace smearcount
