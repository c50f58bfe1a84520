// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "smearcount/bbox.h"
#include "smearcount/labels.h"

namespace smearcount {

struct Detection {
  std::string image_id;
  BBox bbox;
  ClassLabel label = ClassLabel::kTrophozoite;
  double score = 0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

// Deterministic processing order: score descending, then xmin, ymin, xmax,
// ymax ascending, then label.
bool ScoreOrder(const Detection& a, const Detection& b);

// Detections grouped by image_id. Groups keep file order.
struct DetectionSet {
  std::map<std::string, std::vector<Detection>> by_image;
  // image_ids with detections but no matching dataset record.
  std::vector<std::string> orphans;

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  // Empty vector when the image has no detections.
  const std::vector<Detection>& For(const std::string& image_id) const;
  std::vector<Detection> Flatten() const;
  void Add(Detection detection);

  friend bool operator==(const DetectionSet&, const DetectionSet&) = default;
};

inline constexpr const char* kDetectionHeader = "# smearcount-detections 1";

// Detection file layout:
//
//   # smearcount-detections 1
//   image_id,label,score,xmin,ymin,xmax,ymax
//   ...
//
// The first non-blank line must be the header; later lines starting with
// '#' and blank lines are skipped. A zero-length file is an empty set.
// Labels use the canonical class tokens. image_id must not contain ','.
DetectionSet ParseDetections(const std::string& contents);
std::string SerializeDetections(const DetectionSet& set);

DetectionSet ReadDetections(const std::string& path);
void WriteDetections(const DetectionSet& set, const std::string& path);

// Fills set.orphans with image_ids not in known_ids (sorted).
void FlagOrphans(DetectionSet& set, const std::set<std::string>& known_ids);

inline constexpr double kDefaultScoreThreshold = 0.5;
inline constexpr double kDefaultNmsIouThreshold = 0.5;

// Keeps detections with score >= threshold, order preserved.
DetectionSet FilterByScore(const DetectionSet& set, double threshold);
std::vector<Detection> FilterByScore(const std::vector<Detection>& dets,
                                     double threshold);

// Class-wise greedy non-maximum suppression for one image. Candidates are
// visited in ScoreOrder; a candidate is dropped when its IoU with an already
// kept same-class box is strictly greater than iou_threshold. Kept boxes are
// returned in ScoreOrder. Throws ValidationError on mixed image_ids.
std::vector<Detection> Nms(const std::vector<Detection>& dets,
                           double iou_threshold = kDefaultNmsIouThreshold);
DetectionSet Nms(const DetectionSet& set,
                 double iou_threshold = kDefaultNmsIouThreshold);

}  // namespace smearcount
