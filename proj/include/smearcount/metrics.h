// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smearcount/dataset.h"
#include "smearcount/detection.h"

namespace smearcount {

// Undefined ratios (0/0) are std::nullopt, never 0 or NaN.
using MaybeRatio = std::optional<double>;

enum class Interpolation {
  kAllPoint,     // area under the monotone precision envelope
  kElevenPoint,  // mean of max precision at recall 0, 0.1, ..., 1
};

std::string_view InterpolationName(Interpolation mode);
std::optional<Interpolation> InterpolationFromName(std::string_view name);

struct MatchEntry {
  Detection detection;
  std::optional<std::size_t> gt_index;  // index into the ground-truth list
  double iou = 0;                       // IoU with the matched GT, or best IoU
  bool true_positive() const { return gt_index.has_value(); }
};

struct ClassCounts {
  int num_gt = 0;
  int tp = 0;
  int fp = 0;
  int fn = 0;

  ClassCounts& operator+=(const ClassCounts& other);
};

// Outcome of matching one image's detections against its ground truth.
// Entries are in processing order (ScoreOrder).
struct MatchResult {
  std::vector<MatchEntry> entries;
  std::array<ClassCounts, kNumClasses> per_class{};

  const ClassCounts& For(ClassLabel label) const {
    return per_class[ClassIndex(label)];
  }
  ClassCounts Total() const;
};

// Greedy matching for a single image. Detections are visited in ScoreOrder;
// each takes the unmatched same-class ground truth with the largest IoU
// (lowest index on ties) when that IoU >= iou_threshold, otherwise it is a
// false positive. Throws ValidationError on mixed image_ids.
MatchResult MatchDetections(std::span<const GroundTruthObject> ground_truth,
                            std::span<const Detection> detections,
                            double iou_threshold);

struct PrecisionRecall {
  MaybeRatio precision;
  MaybeRatio recall;
};

PrecisionRecall ComputePrecisionRecall(const ClassCounts& counts);

struct ScoredMatch {
  double score = 0;
  bool true_positive = false;
};

// AP for one class over all images. Matches are ranked by descending score;
// equal scores keep their input order. nullopt when num_gt == 0.
MaybeRatio AveragePrecision(std::span<const ScoredMatch> matches, int num_gt,
                            Interpolation mode = Interpolation::kAllPoint);

struct EvalParameters {
  double iou_threshold = 0.5;
  double score_threshold = kDefaultScoreThreshold;
  Interpolation interpolation = Interpolation::kAllPoint;
  std::optional<double> nms_iou;  // apply NMS before matching when set
};

struct ClassMetrics {
  ClassLabel label = ClassLabel::kTrophozoite;
  ClassCounts counts;
  int num_detections = 0;
  MaybeRatio precision;
  MaybeRatio recall;
  MaybeRatio ap;
};

struct EvalReport {
  EvalParameters params;
  std::vector<ClassMetrics> classes;
  double map = 0;
  // Classes whose AP is undefined and therefore left out of map.
  std::vector<ClassLabel> excluded_classes;
  std::vector<std::string> orphans;
};

// Arithmetic mean of the defined per-class APs. Throws UndefinedError when no
// class has a defined AP.
EvalReport MeanAveragePrecision(std::vector<ClassMetrics> classes,
                                const EvalParameters& params);

// Score filter, optional NMS, per-image matching, then per-class
// precision/recall/AP and mAP. Detections for image_ids absent from the
// dataset are listed in orphans and otherwise ignored.
EvalReport Evaluate(const Dataset& dataset, const DetectionSet& detections,
                    const EvalParameters& params);

}  // namespace smearcount
