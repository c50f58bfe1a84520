// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/voc.h"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "smearcount/errors.h"
#include "smearcount/text.h"

namespace smearcount {
namespace {

namespace pt = boost::property_tree;

const pt::ptree& RequireChild(const pt::ptree& node, const std::string& path) {
  auto child = node.get_child_optional(path);
  if (!child) throw ParseError("missing required element <" + path + ">");
  return *child;
}

double RequireNumber(const pt::ptree& node, const std::string& path) {
  const auto& child = RequireChild(node, path);
  auto value = text::ParseDouble(child.data());
  if (!value) {
    throw ParseError("element <" + path + "> is not a number: '" +
                     child.data() + "'");
  }
  return *value;
}

int RequireDimension(const pt::ptree& size, const std::string& name) {
  const double value = RequireNumber(size, name);
  if (value <= 0 || value != static_cast<int>(value)) {
    throw ParseError("size/" + name + " must be a positive integer");
  }
  return static_cast<int>(value);
}

std::string CsvOptional(const std::optional<double>& v) {
  return v ? text::FormatDouble(*v) : "";
}

}  // namespace

VocAnnotation ParseVoc(const std::string& xml_text,
                       const VocParseOptions& options) {
  pt::ptree doc;
  try {
    std::istringstream in(xml_text);
    pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string("malformed XML: ") + e.message() +
                     " (line " + std::to_string(e.line()) + ")");
  }

  const auto& annotation = RequireChild(doc, "annotation");
  const auto& size = RequireChild(annotation, "size");

  VocAnnotation out;
  out.width = RequireDimension(size, "width");
  out.height = RequireDimension(size, "height");

  int index = 0;
  for (const auto& [tag, node] : annotation) {
    if (tag != "object") continue;
    const std::string where = "object #" + std::to_string(index++);
    const std::string name = RequireChild(node, "name").data();
    auto label = options.labels.Lookup(name);
    if (!label) {
      if (options.strict) {
        throw ValidationError(where + ": unknown label '" + name + "'");
      }
      out.warnings.push_back(where + ": skipped unknown label '" + name + "'");
      continue;
    }
    const auto& bndbox = RequireChild(node, "bndbox");
    BBox box{RequireNumber(bndbox, "xmin"), RequireNumber(bndbox, "ymin"),
             RequireNumber(bndbox, "xmax"), RequireNumber(bndbox, "ymax")};
    if (options.one_based) {
      box.xmin -= 1;
      box.ymin -= 1;
    }
    ValidateBoxInImage(box, out.width, out.height, where);
    out.objects.push_back({box, *label});
  }
  return out;
}

std::string WriteVoc(const std::string& filename, int width, int height,
                     const std::vector<GroundTruthObject>& objects) {
  pt::ptree annotation;
  annotation.put("filename", filename);
  annotation.put("size.width", width);
  annotation.put("size.height", height);
  annotation.put("size.depth", 1);
  for (const auto& object : objects) {
    pt::ptree node;
    node.put("name", std::string(ClassName(object.label)));
    node.put("bndbox.xmin", text::FormatDouble(object.bbox.xmin));
    node.put("bndbox.ymin", text::FormatDouble(object.bbox.ymin));
    node.put("bndbox.xmax", text::FormatDouble(object.bbox.xmax));
    node.put("bndbox.ymax", text::FormatDouble(object.bbox.ymax));
    annotation.add_child("object", node);
  }
  pt::ptree doc;
  doc.add_child("annotation", annotation);
  std::ostringstream out;
  pt::write_xml(out, doc, pt::xml_writer_make_settings<std::string>(' ', 2));
  return out.str();
}

std::map<std::string, CaptureMetadata> ReadMetadataCsv(const std::string& path) {
  std::istringstream in(text::ReadFile(path));
  std::string line;
  if (!std::getline(in, line)) return {};
  const auto header = text::Split(text::Trim(line), ',');
  const std::vector<std::string> expected = {
      "image_id",   "slide_id", "stage_x", "stage_y",
      "phone_zoom", "objective_magnification", "stain"};
  if (header != expected) {
    throw ParseError(path + ":1: unexpected metadata header");
  }

  std::map<std::string, CaptureMetadata> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    auto cells = text::Split(line, ',');
    if (cells.size() != expected.size()) {
      throw ParseError(where + ": expected 7 fields");
    }
    for (auto& cell : cells) cell = text::Trim(cell);

    auto optional_number = [&](const std::string& cell, const char* name) {
      std::optional<double> value;
      if (cell.empty()) return value;
      value = text::ParseDouble(cell);
      if (!value) throw ParseError(where + ": bad " + name + " '" + cell + "'");
      return value;
    };

    CaptureMetadata meta;
    meta.slide_id = cells[1];
    meta.stage_x = optional_number(cells[2], "stage_x");
    meta.stage_y = optional_number(cells[3], "stage_y");
    meta.phone_zoom = optional_number(cells[4], "phone_zoom");
    if (!cells[5].empty()) {
      auto mag = text::ParseInt(cells[5]);
      if (!mag) throw ParseError(where + ": bad objective_magnification");
      meta.objective_magnification = static_cast<int>(*mag);
    }
    if (!cells[6].empty()) meta.stain = cells[6];
    ValidateMetadata(meta, where);
    if (!out.emplace(cells[0], meta).second) {
      throw ValidationError(where + ": duplicate image_id '" + cells[0] + "'");
    }
  }
  return out;
}

std::string WriteMetadataCsv(const Dataset& dataset) {
  std::ostringstream out;
  out << "image_id,slide_id,stage_x,stage_y,phone_zoom,"
         "objective_magnification,stain\n";
  for (const auto& r : dataset.records) {
    const auto& m = r.metadata;
    out << r.image_id << ',' << m.slide_id << ',' << CsvOptional(m.stage_x)
        << ',' << CsvOptional(m.stage_y) << ',' << CsvOptional(m.phone_zoom)
        << ','
        << (m.objective_magnification
                ? std::to_string(*m.objective_magnification)
                : "")
        << ',' << m.stain.value_or("") << '\n';
  }
  return out.str();
}

IngestResult IngestVocDirectory(
    const std::string& voc_dir, const VocParseOptions& options,
    const std::map<std::string, CaptureMetadata>& metadata) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(voc_dir, ec)) {
    throw IoError("not a directory: '" + voc_dir + "'");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(voc_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) {
    throw IoError("no annotation files found in '" + voc_dir + "'");
  }
  std::sort(files.begin(), files.end());

  IngestResult result;
  for (const auto& file : files) {
    const std::string name = file.filename().string();
    ImageRecord record;
    record.image_id = file.stem().string();
    try {
      VocAnnotation parsed = ParseVoc(text::ReadFile(file.string()), options);
      record.width = parsed.width;
      record.height = parsed.height;
      record.objects = std::move(parsed.objects);
      for (const auto& w : parsed.warnings) {
        result.warnings.push_back(name + ": " + w);
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kValidation) {
        throw ValidationError(name + ": " + e.what());
      }
      if (e.kind() == ErrorKind::kIo) throw IoError(name + ": " + e.what());
      throw ParseError(name + ": " + e.what());
    }
    auto meta = metadata.find(record.image_id);
    if (meta != metadata.end()) {
      record.metadata = meta->second;
    } else {
      record.metadata.slide_id = kUnknownSlide;
      if (!metadata.empty()) {
        result.warnings.push_back(name + ": no metadata row; slide_id '" +
                                  std::string(kUnknownSlide) + "'");
      }
    }
    result.dataset.records.push_back(std::move(record));
  }
  ValidateDataset(result.dataset);
  return result;
}

}  // namespace smearcount
