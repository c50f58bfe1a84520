// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/metrics.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "smearcount/errors.h"
#include "smearcount/text.h"

namespace smearcount {

std::string_view InterpolationName(Interpolation mode) {
  return mode == Interpolation::kAllPoint ? "all-point" : "eleven-point";
}

std::optional<Interpolation> InterpolationFromName(std::string_view name) {
  const std::string key = text::ToLower(name);
  if (key == "all-point") return Interpolation::kAllPoint;
  if (key == "eleven-point" || key == "11-point") {
    return Interpolation::kElevenPoint;
  }
  return std::nullopt;
}

ClassCounts& ClassCounts::operator+=(const ClassCounts& other) {
  num_gt += other.num_gt;
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

ClassCounts MatchResult::Total() const {
  ClassCounts total;
  for (const auto& c : per_class) total += c;
  return total;
}

MatchResult MatchDetections(std::span<const GroundTruthObject> ground_truth,
                            std::span<const Detection> detections,
                            double iou_threshold) {
  for (const auto& d : detections) {
    if (d.image_id != detections.front().image_id) {
      throw ValidationError("matching input mixes image_ids");
    }
  }
  std::vector<Detection> order(detections.begin(), detections.end());
  std::sort(order.begin(), order.end(), ScoreOrder);

  MatchResult result;
  for (const auto& gt : ground_truth) result.per_class[ClassIndex(gt.label)].num_gt++;

  std::vector<bool> used(ground_truth.size(), false);
  for (auto& det : order) {
    std::optional<std::size_t> best;
    double best_iou = -1;
    for (std::size_t g = 0; g < ground_truth.size(); ++g) {
      if (used[g] || ground_truth[g].label != det.label) continue;
      const double overlap = Iou(det.bbox, ground_truth[g].bbox);
      if (overlap > best_iou) {
        best_iou = overlap;
        best = g;
      }
    }
    auto& counts = result.per_class[ClassIndex(det.label)];
    MatchEntry entry{std::move(det), std::nullopt, std::max(best_iou, 0.0)};
    if (best && best_iou >= iou_threshold) {
      used[*best] = true;
      entry.gt_index = best;
      counts.tp++;
    } else {
      counts.fp++;
    }
    result.entries.push_back(std::move(entry));
  }
  for (auto& c : result.per_class) c.fn = c.num_gt - c.tp;
  return result;
}

PrecisionRecall ComputePrecisionRecall(const ClassCounts& counts) {
  PrecisionRecall pr;
  if (counts.tp + counts.fp > 0) {
    pr.precision = static_cast<double>(counts.tp) / (counts.tp + counts.fp);
  }
  if (counts.tp + counts.fn > 0) {
    pr.recall = static_cast<double>(counts.tp) / (counts.tp + counts.fn);
  }
  return pr;
}

MaybeRatio AveragePrecision(std::span<const ScoredMatch> matches, int num_gt,
                            Interpolation mode) {
  if (num_gt <= 0) return std::nullopt;
  std::vector<ScoredMatch> ranked(matches.begin(), matches.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const ScoredMatch& a, const ScoredMatch& b) {
                     return a.score > b.score;
                   });

  // Cumulative TP count after each ranked detection.
  std::vector<int> cum_tp(ranked.size());
  int tp = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    tp += ranked[i].true_positive ? 1 : 0;
    cum_tp[i] = tp;
  }
  auto precision_at = [&](std::size_t i) {
    return static_cast<double>(cum_tp[i]) / static_cast<double>(i + 1);
  };

  // envelope[i] = max precision over ranks >= i.
  std::vector<double> envelope(ranked.size());
  double running = 0;
  for (std::size_t i = ranked.size(); i-- > 0;) {
    running = std::max(running, precision_at(i));
    envelope[i] = running;
  }

  if (mode == Interpolation::kAllPoint) {
    // Sum of recall steps times envelope, scaled by 1/num_gt once.
    double weighted = 0;
    int prev_tp = 0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (cum_tp[i] > prev_tp) {
        weighted += static_cast<double>(cum_tp[i] - prev_tp) * envelope[i];
        prev_tp = cum_tp[i];
      }
    }
    return weighted / static_cast<double>(num_gt);
  }

  // Recall level k/10 is reached at the first rank with 10 * tp >= k * num_gt.
  double sum = 0;
  for (int k = 0; k <= 10; ++k) {
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (10 * cum_tp[i] >= k * num_gt) {
        sum += envelope[i];
        break;
      }
    }
  }
  return sum / 11.0;
}

EvalReport MeanAveragePrecision(std::vector<ClassMetrics> classes,
                                const EvalParameters& params) {
  EvalReport report;
  report.params = params;
  double sum = 0;
  int defined = 0;
  for (const auto& c : classes) {
    if (c.ap) {
      sum += *c.ap;
      ++defined;
    } else {
      report.excluded_classes.push_back(c.label);
    }
  }
  if (defined == 0) {
    throw UndefinedError("mAP undefined: no class has ground truth");
  }
  report.map = sum / defined;
  report.classes = std::move(classes);
  return report;
}

EvalReport Evaluate(const Dataset& dataset, const DetectionSet& detections,
                    const EvalParameters& params) {
  if (!(params.iou_threshold >= 0 && params.iou_threshold <= 1) ||
      !(params.score_threshold >= 0 && params.score_threshold <= 1)) {
    throw ValidationError("thresholds must lie in [0, 1]");
  }
  DetectionSet considered = FilterByScore(detections, params.score_threshold);
  if (params.nms_iou) considered = Nms(considered, *params.nms_iou);

  std::set<std::string> known;
  for (const auto& r : dataset.records) known.insert(r.image_id);
  FlagOrphans(considered, known);

  std::array<ClassCounts, kNumClasses> totals{};
  std::array<std::vector<ScoredMatch>, kNumClasses> scored;
  for (const auto& record : dataset.records) {
    const auto& dets = considered.For(record.image_id);
    const MatchResult match = MatchDetections(record.objects, dets, params.iou_threshold);
    for (std::size_t c = 0; c < kNumClasses; ++c) totals[c] += match.per_class[c];
    for (const auto& e : match.entries) {
      scored[ClassIndex(e.detection.label)].push_back(
          {e.detection.score, e.true_positive()});
    }
  }

  std::vector<ClassMetrics> classes;
  for (ClassLabel label : kAllClasses) {
    const std::size_t c = ClassIndex(label);
    ClassMetrics m;
    m.label = label;
    m.counts = totals[c];
    m.num_detections = totals[c].tp + totals[c].fp;
    const auto pr = ComputePrecisionRecall(totals[c]);
    m.precision = pr.precision;
    m.recall = pr.recall;
    m.ap = AveragePrecision(scored[c], totals[c].num_gt, params.interpolation);
    classes.push_back(m);
  }
  EvalReport report = MeanAveragePrecision(std::move(classes), params);
  report.orphans = considered.orphans;
  return report;
}

}  // namespace smearcount
