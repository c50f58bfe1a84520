// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <string>
#include <vector>

#include "smearcount/dataset.h"
#include "smearcount/labels.h"

namespace smearcount {

struct VocParseOptions {
  // Unknown object names throw when strict, otherwise they are skipped and a
  // warning is recorded.
  bool strict = true;
  // Treat xmin/ymin as 1-based inclusive pixels and shift them to 0-based.
  bool one_based = false;
  LabelMap labels;
};

struct VocAnnotation {
  int width = 0;
  int height = 0;
  std::vector<GroundTruthObject> objects;
  std::vector<std::string> warnings;
};

// Reads annotation/size/{width,height} and
// annotation/object/{name,bndbox/{xmin,ymin,xmax,ymax}}; everything else is
// ignored. Throws ParseError for malformed XML or missing elements and
// ValidationError for degenerate or out-of-image boxes.
VocAnnotation ParseVoc(const std::string& xml_text,
                       const VocParseOptions& options = {});

// Emits a minimal VOC document that ParseVoc reads back to the same objects.
std::string WriteVoc(const std::string& filename, int width, int height,
                     const std::vector<GroundTruthObject>& objects);

// Per-image capture metadata keyed by image_id, read from a CSV with header
// image_id,slide_id,stage_x,stage_y,phone_zoom,objective_magnification,stain.
// Empty cells mean "not recorded".
std::map<std::string, CaptureMetadata> ReadMetadataCsv(const std::string& path);
std::string WriteMetadataCsv(const Dataset& dataset);

struct IngestResult {
  Dataset dataset;
  std::vector<std::string> warnings;
};

// Parses every *.xml file in `voc_dir` (sorted by name). The image_id is the
// file stem. Records without a metadata row get slide_id kUnknownSlide.
// Errors are rethrown with the offending file name prefixed.
IngestResult IngestVocDirectory(
    const std::string& voc_dir, const VocParseOptions& options,
    const std::map<std::string, CaptureMetadata>& metadata = {});

}  // namespace smearcount
