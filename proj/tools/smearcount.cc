// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "CLI11.hpp"
#include "commands.h"
#include "smearcount/errors.h"

namespace {

constexpr int kUsageError = 2;

namespace cli = smearcount::cli;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smearcount: thick-smear detection evaluation and parasitemia "
               "quantification"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML/INI file setting any flag; command-line flags win")
      ->envname("SMEARCOUNT_CONFIG");

  const auto unit = CLI::Range(0.0, 1.0);

  cli::IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse VOC XML into a manifest");
  ingest_cmd->add_option("--voc-dir", ingest.voc_dir, "Directory of VOC .xml files")
      ->required()
      ->check(CLI::ExistingDirectory);
  ingest_cmd->add_option("--out", ingest.manifest_out, "Manifest to write")->required();
  ingest_cmd->add_option("--metadata", ingest.metadata_csv, "Capture metadata CSV")
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--label-map", ingest.label_map, "Label alias file")
      ->check(CLI::ExistingFile);
  ingest_cmd->add_flag("--lenient", ingest.lenient, "Skip unknown labels with a warning");
  ingest_cmd->add_flag("--voc-one-based", ingest.voc_one_based,
                       "Shift 1-based xmin/ymin to 0-based");

  cli::SplitCommandOptions split;
  auto* split_cmd = app.add_subcommand("split", "Seeded train/test split of a manifest");
  split_cmd->add_option("--manifest", split.manifest)->required()->check(CLI::ExistingFile);
  split_cmd->add_option("--train-out", split.train_out)->required();
  split_cmd->add_option("--test-out", split.test_out)->required();
  split_cmd->add_option("--train-fraction", split.train_fraction, "In (0,1)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  split_cmd->add_option("--seed", split.seed)->capture_default_str();
  split_cmd->add_flag("--group-by-slide", split.group_by_slide,
                      "Keep each slide's images on one side");

  cli::AugmentOptions augment;
  auto* augment_cmd =
      app.add_subcommand("augment", "Expand a manifest with random flips");
  augment_cmd->add_option("--manifest", augment.manifest)
      ->required()
      ->check(CLI::ExistingFile);
  augment_cmd->add_option("--out", augment.manifest_out)->required();
  augment_cmd->add_option("--flips-out", augment.flips_out,
                          "CSV of applied flips for pixel replay");
  augment_cmd->add_option("--seed", augment.seed)->capture_default_str();
  augment_cmd->add_option("--p-horizontal", augment.p_horizontal)
      ->capture_default_str()
      ->check(unit);
  augment_cmd->add_option("--p-vertical", augment.p_vertical)
      ->capture_default_str()
      ->check(unit);

  cli::SynthOptions synth;
  bool allow_overlap = false;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate synthetic smears with ground truth");
  synth_cmd->add_option("--out-dir", synth.out_dir)->required();
  synth_cmd->add_option("--count", synth.count)->capture_default_str();
  synth_cmd->add_option("--films", synth.films, "Images are dealt round-robin to films")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.spec.seed)->capture_default_str();
  synth_cmd->add_option("--width", synth.spec.width)->capture_default_str();
  synth_cmd->add_option("--height", synth.spec.height)->capture_default_str();
  synth_cmd->add_option("--trophozoites", synth.spec.n_trophozoites)
      ->capture_default_str();
  synth_cmd->add_option("--wbcs", synth.spec.n_wbcs)->capture_default_str();
  synth_cmd->add_option("--noise", synth.spec.noise)->capture_default_str()->check(unit);
  synth_cmd->add_flag("--allow-overlap", allow_overlap);
  synth_cmd->add_flag("--plain-pgm", synth.plain_pgm, "Write P2 instead of P5");

  cli::DetectOptions detect;
  auto* detect_cmd =
      app.add_subcommand("detect", "Run the classical blob detector on .pgm images");
  detect_cmd->add_option("--image-dir", detect.image_dir)
      ->required()
      ->check(CLI::ExistingDirectory);
  detect_cmd->add_option("--out", detect.detections_out)->required();
  detect_cmd->add_option("--intensity-threshold", detect.intensity_threshold)
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  detect_cmd->add_option("--size-split", detect.size_split, "Area >= split is a WBC")
      ->capture_default_str();
  detect_cmd->add_option("--min-area", detect.min_area)->capture_default_str();

  cli::EvaluateOptions evaluate;
  std::string interpolation = "all-point";
  double eval_nms = -1;
  bool eval_no_timestamp = false;
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "mAP, precision and recall against ground truth");
  evaluate_cmd->add_option("--manifest", evaluate.manifest)
      ->required()
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--detections", evaluate.detections)
      ->required()
      ->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--out-dir", evaluate.out_dir)->required();
  evaluate_cmd->add_option("--iou-threshold", evaluate.params.iou_threshold)
      ->capture_default_str()
      ->check(unit);
  evaluate_cmd->add_option("--score-threshold", evaluate.params.score_threshold)
      ->capture_default_str()
      ->check(unit);
  evaluate_cmd->add_option("--interpolation", interpolation)
      ->capture_default_str()
      ->check(CLI::IsMember({"all-point", "eleven-point"}));
  evaluate_cmd->add_option("--nms-iou", eval_nms, "Apply NMS before matching")
      ->check(unit);
  evaluate_cmd->add_flag("--strict-ids", evaluate.strict_ids,
                         "Fail on detections for unknown image_ids");
  evaluate_cmd->add_flag("--no-timestamp", eval_no_timestamp);

  cli::QuantifyOptions quantify;
  std::string formula = "who";
  double quant_nms = -1;
  bool quant_no_timestamp = false;
  auto* quantify_cmd = app.add_subcommand(
      "quantify", "Per-film counts, parasites/ul and count correlation");
  quantify_cmd->add_option("--manifest", quantify.manifest)->check(CLI::ExistingFile);
  quantify_cmd->add_option("--detections", quantify.detections)
      ->check(CLI::ExistingFile);
  quantify_cmd->add_option("--film-map", quantify.film_map, "CSV image_id,film_id")
      ->check(CLI::ExistingFile);
  quantify_cmd->add_option("--expert-counts", quantify.expert_counts)
      ->check(CLI::ExistingFile);
  quantify_cmd->add_option("--interpretation-table", quantify.interpretation_table)
      ->check(CLI::ExistingFile);
  quantify_cmd->add_option("--out-dir", quantify.out_dir)->required();
  quantify_cmd->add_option("--score-threshold", quantify.score_threshold)
      ->capture_default_str()
      ->check(unit);
  quantify_cmd->add_option("--nms-iou", quant_nms)->check(unit);
  quantify_cmd->add_option("--assumed-wbc", quantify.assumed_wbc)
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  quantify_cmd->add_option("--formula", formula)
      ->capture_default_str()
      ->check(CLI::IsMember({"who", "as-printed"}));
  quantify_cmd->add_flag("--no-timestamp", quant_no_timestamp);

  std::string report_input;
  auto* report_cmd = app.add_subcommand("report", "Summarize a JSON report");
  report_cmd->add_option("input", report_input)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*ingest_cmd) {
      cli::RunIngest(ingest, std::cout);
    } else if (*split_cmd) {
      cli::RunSplit(split, std::cout);
    } else if (*augment_cmd) {
      cli::RunAugment(augment, std::cout);
    } else if (*synth_cmd) {
      synth.spec.overlap = allow_overlap ? smearcount::OverlapPolicy::kAllow
                                         : smearcount::OverlapPolicy::kForbid;
      cli::RunSynth(synth, std::cout);
    } else if (*detect_cmd) {
      cli::RunDetect(detect, std::cout);
    } else if (*evaluate_cmd) {
      evaluate.params.interpolation = *smearcount::InterpolationFromName(interpolation);
      if (eval_nms >= 0) evaluate.params.nms_iou = eval_nms;
      evaluate.timestamp = !eval_no_timestamp;
      cli::RunEvaluate(evaluate, std::cout);
    } else if (*quantify_cmd) {
      quantify.formula = *smearcount::DensityFormulaFromName(formula);
      if (quant_nms >= 0) quantify.nms_iou = quant_nms;
      quantify.timestamp = !quant_no_timestamp;
      cli::RunQuantify(quantify, std::cout);
    } else if (*report_cmd) {
      cli::RunReport(report_input, std::cout);
    }
  } catch (const smearcount::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
