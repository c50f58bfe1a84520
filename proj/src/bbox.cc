// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/bbox.h"

#include <algorithm>
#include <sstream>

#include "smearcount/errors.h"

namespace smearcount {

bool BBox::IsValid() const {
  return xmin >= 0 && ymin >= 0 && xmin < xmax && ymin < ymax;
}

bool BBox::FitsIn(double image_width, double image_height) const {
  return IsValid() && xmax <= image_width && ymax <= image_height;
}

std::string BBox::ToString() const {
  std::ostringstream out;
  out << "(" << xmin << "," << ymin << "," << xmax << "," << ymax << ")";
  return out.str();
}

void ValidateBox(const BBox& box, const std::string& context) {
  if (!(box.xmin < box.xmax) || !(box.ymin < box.ymax)) {
    throw ValidationError(context + ": degenerate box " + box.ToString());
  }
  if (box.xmin < 0 || box.ymin < 0) {
    throw ValidationError(context + ": negative coordinate in box " +
                          box.ToString());
  }
}

void ValidateBoxInImage(const BBox& box, double image_width,
                        double image_height, const std::string& context) {
  ValidateBox(box, context);
  if (box.xmax > image_width || box.ymax > image_height) {
    std::ostringstream out;
    out << context << ": box " << box.ToString() << " exceeds image "
        << image_width << "x" << image_height;
    throw ValidationError(out.str());
  }
}

double Iou(const BBox& a, const BBox& b) {
  const double iw = std::min(a.xmax, b.xmax) - std::max(a.xmin, b.xmin);
  const double ih = std::min(a.ymax, b.ymax) - std::max(a.ymin, b.ymin);
  if (iw <= 0 || ih <= 0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni > 0 ? inter / uni : 0.0;
}

}  // namespace smearcount
