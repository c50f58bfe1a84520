// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <string>
#include <vector>

namespace smearcount {

// Row-major grayscale image with intensities in [0, 1] (0 = black).
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, float fill = 0.0f);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  float at(int x, int y) const { return pixels_[Index(x, y)]; }
  float& at(int x, int y) { return pixels_[Index(x, y)]; }

  const std::vector<float>& pixels() const { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t Index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> pixels_;
};

// Portable graymap. Intensities are quantized to round(v * maxval); reading
// yields value / maxval. Binary (P5) and plain (P2) variants are supported
// for reading; maxval up to 65535.
enum class PgmFormat { kBinary, kPlain };

std::string EncodePgm(const GrayImage& image, PgmFormat format = PgmFormat::kBinary,
                      int maxval = 255);
GrayImage DecodePgm(const std::string& bytes);

void WritePgm(const GrayImage& image, const std::string& path,
              PgmFormat format = PgmFormat::kBinary, int maxval = 255);
GrayImage ReadPgm(const std::string& path);

}  // namespace smearcount
