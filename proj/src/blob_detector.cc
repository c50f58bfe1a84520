// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/blob_detector.h"

#include <algorithm>
#include <numeric>

#include "smearcount/errors.h"

namespace smearcount {
namespace {

// Union-find over provisional labels; the smaller root wins.
class Equivalences {
 public:
  int Make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<int> parent_;
};

}  // namespace

std::vector<int> LabelComponents(const std::vector<std::uint8_t>& mask, int width,
                                 int height, int* num_components) {
  if (mask.size() != static_cast<std::size_t>(width) * height) {
    throw ValidationError("mask size does not match dimensions");
  }
  std::vector<int> labels(mask.size(), -1);
  Equivalences eq;

  // First pass: provisional labels from the west and north neighbours.
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      if (!mask[i]) continue;
      const int west = x > 0 ? labels[i - 1] : -1;
      const int north = y > 0 ? labels[i - width] : -1;
      if (west < 0 && north < 0) {
        labels[i] = eq.Make();
      } else if (west >= 0 && north >= 0) {
        labels[i] = std::min(west, north);
        eq.Union(west, north);
      } else {
        labels[i] = std::max(west, north);
      }
    }
  }

  // Second pass: resolve to roots and renumber in raster order.
  std::vector<int> final_id(eq.size(), 0);
  int next = 0;
  for (auto& label : labels) {
    if (label < 0) {
      label = 0;
      continue;
    }
    const int root = eq.Find(label);
    if (final_id[root] == 0) final_id[root] = ++next;
    label = final_id[root];
  }
  if (num_components != nullptr) *num_components = next;
  return labels;
}

std::vector<Detection> DetectBlobs(const GrayImage& image,
                                   const std::string& image_id,
                                   const BlobDetectorOptions& options) {
  if (!(options.intensity_threshold > 0 && options.intensity_threshold < 1)) {
    throw ValidationError("intensity threshold must lie in (0, 1)");
  }
  if (image.empty()) return {};
  const int width = image.width();
  const int height = image.height();
  std::vector<std::uint8_t> mask(image.pixels().size());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = image.pixels()[i] < options.intensity_threshold ? 1 : 0;
  }
  int n = 0;
  const auto labels = LabelComponents(mask, width, height, &n);

  struct Stats {
    int area = 0;
    double sum = 0;
    int xmin = 0, ymin = 0, xmax = -1, ymax = -1;
  };
  std::vector<Stats> stats(static_cast<std::size_t>(n) + 1);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int label = labels[static_cast<std::size_t>(y) * width + x];
      if (label == 0) continue;
      Stats& s = stats[label];
      if (s.area == 0) {
        s.xmin = s.xmax = x;
        s.ymin = s.ymax = y;
      }
      s.area++;
      s.sum += image.at(x, y);
      s.xmin = std::min(s.xmin, x);
      s.xmax = std::max(s.xmax, x);
      s.ymin = std::min(s.ymin, y);
      s.ymax = std::max(s.ymax, y);
    }
  }

  std::vector<Detection> out;
  for (int label = 1; label <= n; ++label) {
    const Stats& s = stats[label];
    if (s.area < options.min_area) continue;
    Detection d;
    d.image_id = image_id;
    d.bbox = {static_cast<double>(s.xmin), static_cast<double>(s.ymin),
              static_cast<double>(s.xmax + 1), static_cast<double>(s.ymax + 1)};
    d.label = s.area >= options.size_split ? ClassLabel::kWbc
                                           : ClassLabel::kTrophozoite;
    const double mean = s.sum / s.area;
    d.score = std::clamp(1.0 - mean / options.intensity_threshold, 0.0, 1.0);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace smearcount
