// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/image.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "smearcount/errors.h"
#include "smearcount/text.h"

namespace smearcount {

GrayImage::GrayImage(int width, int height, float fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw ValidationError("image dimensions must be positive");
  }
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                 fill);
}

std::string EncodePgm(const GrayImage& image, PgmFormat format, int maxval) {
  if (maxval < 1 || maxval > 65535) throw ValidationError("PGM maxval out of range");
  std::ostringstream out;
  out << (format == PgmFormat::kBinary ? "P5" : "P2") << "\n"
      << image.width() << " " << image.height() << "\n"
      << maxval << "\n";
  int column = 0;
  for (float v : image.pixels()) {
    const auto q = static_cast<unsigned>(
        std::lround(std::clamp(v, 0.0f, 1.0f) * static_cast<float>(maxval)));
    if (format == PgmFormat::kBinary) {
      if (maxval > 255) out.put(static_cast<char>(q >> 8));
      out.put(static_cast<char>(q & 0xff));
    } else {
      out << q << (++column % 16 == 0 ? '\n' : ' ');
    }
  }
  if (format == PgmFormat::kPlain && column % 16 != 0) out << '\n';
  return out.str();
}

namespace {

class PgmReader {
 public:
  explicit PgmReader(const std::string& bytes) : bytes_(bytes) {}

  // Next whitespace-delimited header token, skipping '#' comments.
  std::string Token() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() &&
           !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) throw ParseError("PGM: unexpected end of data");
    return bytes_.substr(start, pos_ - start);
  }

  long Number() {
    const std::string t = Token();
    auto v = text::ParseInt(t);
    if (!v || *v < 0) throw ParseError("PGM: bad number '" + t + "'");
    return static_cast<long>(*v);
  }

  // Binary raster starts after exactly one whitespace byte.
  std::size_t RasterStart() {
    if (pos_ >= bytes_.size()) throw ParseError("PGM: missing raster");
    return pos_ + 1;
  }

 private:
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage DecodePgm(const std::string& bytes) {
  PgmReader reader(bytes);
  const std::string magic = reader.Token();
  if (magic != "P5" && magic != "P2") {
    throw ParseError("PGM: unsupported magic '" + magic + "'");
  }
  const long width = reader.Number();
  const long height = reader.Number();
  const long maxval = reader.Number();
  if (width <= 0 || height <= 0 || maxval < 1 || maxval > 65535) {
    throw ParseError("PGM: invalid header");
  }
  GrayImage image(static_cast<int>(width), static_cast<int>(height));
  const float denom = static_cast<float>(maxval);
  const std::size_t count = static_cast<std::size_t>(width) * height;

  if (magic == "P5") {
    const std::size_t bpp = maxval > 255 ? 2 : 1;
    const std::size_t start = reader.RasterStart();
    if (bytes.size() < start + count * bpp) throw ParseError("PGM: truncated raster");
    for (std::size_t i = 0; i < count; ++i) {
      unsigned q = static_cast<unsigned char>(bytes[start + i * bpp]);
      if (bpp == 2) {
        q = (q << 8) | static_cast<unsigned char>(bytes[start + i * bpp + 1]);
      }
      if (q > static_cast<unsigned>(maxval)) throw ParseError("PGM: sample exceeds maxval");
      image.at(static_cast<int>(i % width), static_cast<int>(i / width)) = static_cast<float>(q) / denom;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long q = reader.Number();
      if (q > maxval) throw ParseError("PGM: sample exceeds maxval");
      image.at(static_cast<int>(i % width), static_cast<int>(i / width)) =
          static_cast<float>(q) / denom;
    }
  }
  return image;
}

void WritePgm(const GrayImage& image, const std::string& path, PgmFormat format,
              int maxval) {
  text::WriteFile(path, EncodePgm(image, format, maxval));
}

GrayImage ReadPgm(const std::string& path) {
  try {
    return DecodePgm(text::ReadFile(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace smearcount
