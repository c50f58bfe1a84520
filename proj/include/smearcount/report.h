// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smearcount/metrics.h"
#include "smearcount/quantify.h"

namespace smearcount {

// Reports are byte-identical for identical inputs except for the optional
// generated_at line.
struct ReportOptions {
  std::optional<std::string> timestamp;
};

// Current UTC time as ISO-8601, for ReportOptions::timestamp.
std::string UtcTimestamp();

// Token written for undefined ratios.
inline constexpr const char* kUndefined = "undefined";

std::string EvalReportJson(const EvalReport& report, const ReportOptions& options);
// '#'-prefixed parameter block, then
// class,ap,precision,recall,tp,fp,fn,num_gt,num_detections,map,
// iou_threshold,score_threshold,interpolation
std::string EvalReportCsv(const EvalReport& report, const ReportOptions& options);

struct QuantRow {
  std::string film_id;
  std::optional<FilmCounts> model;
  std::optional<FilmCounts> expert;
  std::optional<ParasitemiaResult> density;  // unset when undefined
  std::string note;                          // why density is undefined
};

struct QuantParameters {
  double score_threshold = kDefaultScoreThreshold;
  std::optional<double> nms_iou;
  int assumed_wbc_per_ul = kAssumedWbcPerUl;
  DensityFormula formula = DensityFormula::kWho;
  CountSource density_source = CountSource::kModel;
  std::vector<InterpretationTable::Band> bands;
};

struct QuantReport {
  QuantParameters params;
  std::vector<QuantRow> rows;
  std::optional<CountCorrelationResult> correlation;
  std::optional<double> p_value_trophozoites;
  std::optional<double> p_value_wbcs;
};

// Builds per-film rows. Densities come from model counts when present,
// otherwise from expert counts. When both are present the film sets must
// match and Spearman's rho (with exact/permutation p-values) is filled in.
// Films without WBCs get an undefined density row instead of an error.
QuantReport BuildQuantReport(const std::vector<FilmCounts>& model,
                             const std::vector<FilmCounts>& expert,
                             const QuantParameters& params,
                             const InterpretationTable& table);

std::string QuantReportJson(const QuantReport& report, const ReportOptions& options);
// '#'-prefixed parameter block, then
// film_id,images_counted,model_trophozoites,model_wbcs,expert_trophozoites,
// expert_wbcs,parasites_per_ul,formula,assumed_wbc,category
std::string QuantReportCsv(const QuantReport& report, const ReportOptions& options);

}  // namespace smearcount
