// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "smearcount/detection.h"
#include "smearcount/metrics.h"
#include "smearcount/quantify.h"
#include "smearcount/synthetic.h"

// Subcommand implementations behind the smearcount executable. Each returns
// normally on success and throws smearcount::Error (parse / validation / I/O)
// on failure; human-readable progress goes to `out`.
namespace smearcount::cli {

struct IngestOptions {
  std::string voc_dir;
  std::string manifest_out;
  std::string metadata_csv;  // optional
  std::string label_map;     // optional alias file
  bool lenient = false;
  bool voc_one_based = false;
};
void RunIngest(const IngestOptions& options, std::ostream& out);

struct SplitCommandOptions {
  std::string manifest;
  std::string train_out;
  std::string test_out;
  double train_fraction = 0.9;
  std::uint64_t seed = 42;
  bool group_by_slide = false;
};
void RunSplit(const SplitCommandOptions& options, std::ostream& out);

struct AugmentOptions {
  std::string manifest;
  std::string manifest_out;
  std::string flips_out;  // optional CSV: image_id,source_id,horizontal,vertical
  std::uint64_t seed = 0;
  double p_horizontal = 0.5;
  double p_vertical = 0.5;
};
void RunAugment(const AugmentOptions& options, std::ostream& out);

struct SynthOptions {
  std::string out_dir;
  int count = 10;
  int films = 1;
  SyntheticSpec spec;  // spec.seed is the base seed; image i uses seed + i
  bool plain_pgm = false;
};
// Writes images/<id>.pgm, annotations/<id>.xml, films.csv and metadata.csv.
void RunSynth(const SynthOptions& options, std::ostream& out);

struct DetectOptions {
  std::string image_dir;
  std::string detections_out;
  double intensity_threshold = 0.5;
  int size_split = 200;
  int min_area = 4;
};
void RunDetect(const DetectOptions& options, std::ostream& out);

struct EvaluateOptions {
  std::string manifest;
  std::string detections;
  std::string out_dir;
  EvalParameters params;
  bool strict_ids = false;  // unknown image_ids are fatal
  bool timestamp = true;
};
EvalReport RunEvaluate(const EvaluateOptions& options, std::ostream& out);

struct QuantifyOptions {
  std::string manifest;       // optional; ground truth gives expert counts
  std::string detections;     // optional; gives model counts
  std::string film_map;       // optional; falls back to slide_id
  std::string expert_counts;  // optional CSV; overrides manifest counts
  std::string interpretation_table;  // optional
  std::string out_dir;
  double score_threshold = kDefaultScoreThreshold;
  std::optional<double> nms_iou;
  int assumed_wbc = kAssumedWbcPerUl;
  DensityFormula formula = DensityFormula::kWho;
  bool timestamp = true;
};
void RunQuantify(const QuantifyOptions& options, std::ostream& out);

// Prints a text summary of an evaluation or quantification JSON report.
void RunReport(const std::string& report_json, std::ostream& out);

}  // namespace smearcount::cli
