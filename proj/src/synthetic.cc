// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/synthetic.h"

#include <algorithm>
#include <vector>

#include "smearcount/errors.h"
#include "smearcount/rng.h"

namespace smearcount {
namespace {

constexpr int kMinGap = 2;

struct Disc {
  int cx, cy, r;
  ClassLabel label;

  BBox Box() const {
    return {static_cast<double>(cx - r), static_cast<double>(cy - r),
            static_cast<double>(cx + r + 1), static_cast<double>(cy + r + 1)};
  }
};

bool TooClose(const Disc& a, const Disc& b) {
  const int ax0 = a.cx - a.r, ax1 = a.cx + a.r;
  const int bx0 = b.cx - b.r, bx1 = b.cx + b.r;
  const int ay0 = a.cy - a.r, ay1 = a.cy + a.r;
  const int by0 = b.cy - b.r, by1 = b.cy + b.r;
  // Inclusive pixel extents; require kMinGap free pixels between them.
  const bool x_apart = ax1 + kMinGap < bx0 || bx1 + kMinGap < ax0;
  const bool y_apart = ay1 + kMinGap < by0 || by1 + kMinGap < ay0;
  return !(x_apart || y_apart);
}

}  // namespace

void ValidateSpec(const SyntheticSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0) {
    throw ValidationError("synthetic: image size must be positive");
  }
  if (spec.n_trophozoites < 0 || spec.n_wbcs < 0) {
    throw ValidationError("synthetic: counts must be non-negative");
  }
  for (const auto& range : {spec.trophozoite_radius, spec.wbc_radius}) {
    if (range.min < 1 || range.max < range.min) {
      throw ValidationError("synthetic: radius range must satisfy 1 <= min <= max");
    }
  }
  if (spec.wbc_radius.min <= spec.trophozoite_radius.max) {
    throw ValidationError(
        "synthetic: WBC radii must all exceed trophozoite radii");
  }
  const int needed = 2 * (spec.n_wbcs > 0 ? spec.wbc_radius.max
                                          : spec.trophozoite_radius.max) + 1;
  if ((spec.n_wbcs > 0 || spec.n_trophozoites > 0) &&
      (needed > spec.width || needed > spec.height)) {
    throw ValidationError("synthetic: largest disc does not fit in the image");
  }
  if (!(spec.noise >= 0 && spec.noise <= 1)) {
    throw ValidationError("synthetic: noise level must lie in [0, 1]");
  }
  if (spec.max_attempts < 1) {
    throw ValidationError("synthetic: max_attempts must be positive");
  }
}

int DiscArea(int radius) {
  int area = 0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) ++area;
    }
  }
  return area;
}

int SuggestedSizeSplit(const SyntheticSpec& spec) {
  return (DiscArea(spec.trophozoite_radius.max) + DiscArea(spec.wbc_radius.min)) / 2;
}

std::pair<GrayImage, ImageRecord> Generate(const SyntheticSpec& spec,
                                           const std::string& image_id) {
  ValidateSpec(spec);
  Rng rng(spec.seed);

  std::vector<Disc> discs;
  auto place = [&](ClassLabel label, const RadiusRange& range) {
    for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
      Disc d;
      d.r = static_cast<int>(rng.Between(range.min, range.max));
      if (2 * d.r + 1 > spec.width || 2 * d.r + 1 > spec.height) continue;
      d.cx = static_cast<int>(rng.Between(d.r, spec.width - 1 - d.r));
      d.cy = static_cast<int>(rng.Between(d.r, spec.height - 1 - d.r));
      d.label = label;
      if (spec.overlap == OverlapPolicy::kForbid &&
          std::any_of(discs.begin(), discs.end(),
                      [&](const Disc& o) { return TooClose(d, o); })) {
        continue;
      }
      discs.push_back(d);
      return;
    }
    throw ValidationError("synthetic: could not place disc " +
                          std::to_string(discs.size() + 1) + " after " +
                          std::to_string(spec.max_attempts) + " attempts");
  };
  // Larger discs first so they find room.
  for (int i = 0; i < spec.n_wbcs; ++i) place(ClassLabel::kWbc, spec.wbc_radius);
  for (int i = 0; i < spec.n_trophozoites; ++i) {
    place(ClassLabel::kTrophozoite, spec.trophozoite_radius);
  }

  GrayImage image(spec.width, spec.height, spec.background);
  for (const auto& d : discs) {
    for (int y = d.cy - d.r; y <= d.cy + d.r; ++y) {
      for (int x = d.cx - d.r; x <= d.cx + d.r; ++x) {
        const int dx = x - d.cx, dy = y - d.cy;
        if (dx * dx + dy * dy <= d.r * d.r) image.at(x, y) = spec.foreground;
      }
    }
  }
  if (spec.noise > 0) {
    const double sigma = spec.noise / 4.0;
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        const double v = image.at(x, y) + sigma * rng.Normal();
        image.at(x, y) = static_cast<float>(std::clamp(v, 0.0, 1.0));
      }
    }
  }

  ImageRecord record;
  record.image_id = image_id;
  record.width = spec.width;
  record.height = spec.height;
  record.metadata.slide_id = "synthetic";
  for (const auto& d : discs) record.objects.push_back({d.Box(), d.label});
  return {std::move(image), std::move(record)};
}

}  // namespace smearcount
