// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>

namespace smearcount {

// Axis-aligned pixel rectangle. Minimum edges are inclusive and maximum edges
// exclusive, so width() == xmax - xmin is the pixel extent.
struct BBox {
  double xmin = 0;
  double ymin = 0;
  double xmax = 0;
  double ymax = 0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }

  // xmin < xmax, ymin < ymax and all coordinates non-negative.
  bool IsValid() const;
  // IsValid() and the box fits in a width x height image.
  bool FitsIn(double image_width, double image_height) const;

  std::string ToString() const;

  friend bool operator==(const BBox&, const BBox&) = default;
};

// Throws ValidationError naming `context` when the box is degenerate or
// negative.
void ValidateBox(const BBox& box, const std::string& context);

// Throws ValidationError when the box does not fit in the image.
void ValidateBoxInImage(const BBox& box, double image_width,
                        double image_height, const std::string& context);

// Intersection over union with half-open pixel areas. 0 for disjoint boxes.
double Iou(const BBox& a, const BBox& b);

}  // namespace smearcount
