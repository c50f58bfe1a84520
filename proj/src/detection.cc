// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/detection.h"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "smearcount/errors.h"
#include "smearcount/text.h"

namespace smearcount {

bool ScoreOrder(const Detection& a, const Detection& b) {
  if (a.score != b.score) return a.score > b.score;
  return std::tie(a.bbox.xmin, a.bbox.ymin, a.bbox.xmax, a.bbox.ymax, a.label) <
         std::tie(b.bbox.xmin, b.bbox.ymin, b.bbox.xmax, b.bbox.ymax, b.label);
}

std::size_t DetectionSet::size() const {
  std::size_t n = 0;
  for (const auto& [id, dets] : by_image) n += dets.size();
  return n;
}

const std::vector<Detection>& DetectionSet::For(const std::string& image_id) const {
  static const std::vector<Detection> kEmpty;
  auto it = by_image.find(image_id);
  return it == by_image.end() ? kEmpty : it->second;
}

std::vector<Detection> DetectionSet::Flatten() const {
  std::vector<Detection> out;
  out.reserve(size());
  for (const auto& [id, dets] : by_image) {
    out.insert(out.end(), dets.begin(), dets.end());
  }
  return out;
}

void DetectionSet::Add(Detection detection) {
  by_image[detection.image_id].push_back(std::move(detection));
}

DetectionSet ParseDetections(const std::string& contents) {
  DetectionSet set;
  std::istringstream in(contents);
  std::string line;
  int line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = text::Trim(line);
    if (body.empty()) continue;
    const std::string where = "detections line " + std::to_string(line_no);
    if (!seen_header) {
      if (body != kDetectionHeader) {
        throw ParseError(where + ": expected header '" +
                         std::string(kDetectionHeader) + "'");
      }
      seen_header = true;
      continue;
    }
    if (body.front() == '#') continue;

    const auto cells = text::Split(body, ',');
    if (cells.size() != 7) {
      throw ParseError(where + ": expected 7 fields, found " +
                       std::to_string(cells.size()));
    }
    Detection det;
    det.image_id = text::Trim(cells[0]);
    if (det.image_id.empty()) throw ParseError(where + ": empty image_id");
    auto label = ClassFromName(cells[1]);
    if (!label) throw ParseError(where + ": unknown label '" + cells[1] + "'");
    det.label = *label;

    double numbers[5];
    for (int i = 0; i < 5; ++i) {
      auto v = text::ParseDouble(cells[2 + i]);
      if (!v) {
        throw ParseError(where + ": field " + std::to_string(3 + i) +
                         " is not a number: '" + cells[2 + i] + "'");
      }
      numbers[i] = *v;
    }
    det.score = numbers[0];
    det.bbox = {numbers[1], numbers[2], numbers[3], numbers[4]};
    if (!(det.score >= 0 && det.score <= 1)) {
      throw ValidationError(where + ": score " + text::FormatDouble(det.score) +
                            " outside [0,1]");
    }
    ValidateBox(det.bbox, where);
    set.Add(std::move(det));
  }
  return set;
}

std::string SerializeDetections(const DetectionSet& set) {
  std::string out = std::string(kDetectionHeader) + "\n";
  for (const auto& [id, dets] : set.by_image) {
    for (const auto& d : dets) {
      out += d.image_id + "," + std::string(ClassName(d.label)) + "," +
             text::FormatDouble(d.score) + "," + text::FormatDouble(d.bbox.xmin) +
             "," + text::FormatDouble(d.bbox.ymin) + "," +
             text::FormatDouble(d.bbox.xmax) + "," +
             text::FormatDouble(d.bbox.ymax) + "\n";
    }
  }
  return out;
}

DetectionSet ReadDetections(const std::string& path) {
  try {
    return ParseDetections(text::ReadFile(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void WriteDetections(const DetectionSet& set, const std::string& path) {
  text::WriteFile(path, SerializeDetections(set));
}

void FlagOrphans(DetectionSet& set, const std::set<std::string>& known_ids) {
  set.orphans.clear();
  for (const auto& [id, dets] : set.by_image) {
    if (!known_ids.contains(id)) set.orphans.push_back(id);
  }
}

std::vector<Detection> FilterByScore(const std::vector<Detection>& dets,
                                     double threshold) {
  std::vector<Detection> out;
  std::copy_if(dets.begin(), dets.end(), std::back_inserter(out),
               [&](const Detection& d) { return d.score >= threshold; });
  return out;
}

DetectionSet FilterByScore(const DetectionSet& set, double threshold) {
  DetectionSet out;
  out.orphans = set.orphans;
  for (const auto& [id, dets] : set.by_image) {
    auto kept = FilterByScore(dets, threshold);
    if (!kept.empty()) out.by_image.emplace(id, std::move(kept));
  }
  return out;
}

std::vector<Detection> Nms(const std::vector<Detection>& dets,
                           double iou_threshold) {
  if (!(iou_threshold >= 0 && iou_threshold <= 1)) {
    throw ValidationError("NMS IoU threshold must lie in [0, 1]");
  }
  for (const auto& d : dets) {
    if (d.image_id != dets.front().image_id) {
      throw ValidationError("NMS input mixes image_ids '" +
                            dets.front().image_id + "' and '" + d.image_id + "'");
    }
  }
  std::vector<Detection> order = dets;
  std::sort(order.begin(), order.end(), ScoreOrder);

  std::vector<Detection> kept;
  for (const auto& candidate : order) {
    const bool suppressed =
        std::any_of(kept.begin(), kept.end(), [&](const Detection& k) {
          return k.label == candidate.label &&
                 Iou(k.bbox, candidate.bbox) > iou_threshold;
        });
    if (!suppressed) kept.push_back(candidate);
  }
  return kept;
}

DetectionSet Nms(const DetectionSet& set, double iou_threshold) {
  DetectionSet out;
  out.orphans = set.orphans;
  for (const auto& [id, dets] : set.by_image) {
    out.by_image.emplace(id, Nms(dets, iou_threshold));
  }
  return out;
}

}  // namespace smearcount
