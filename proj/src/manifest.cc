// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/manifest.h"

#include <set>
#include <sstream>

#include "json.hpp"
#include "smearcount/errors.h"
#include "smearcount/text.h"

namespace smearcount {
namespace {

using ordered_json = nlohmann::ordered_json;

template <typename T>
ordered_json OptionalJson(const std::optional<T>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

template <typename T>
std::optional<T> OptionalField(const ordered_json& node, const char* key) {
  if (!node.contains(key) || node.at(key).is_null()) return std::nullopt;
  return node.at(key).get<T>();
}

ordered_json RecordToJson(const ImageRecord& record) {
  const auto& m = record.metadata;
  ordered_json metadata = {
      {"slide_id", m.slide_id},
      {"stage_x", OptionalJson(m.stage_x)},
      {"stage_y", OptionalJson(m.stage_y)},
      {"phone_zoom", OptionalJson(m.phone_zoom)},
      {"objective_magnification", OptionalJson(m.objective_magnification)},
      {"stain", OptionalJson(m.stain)},
  };
  ordered_json objects = ordered_json::array();
  for (const auto& o : record.objects) {
    objects.push_back({{"label", std::string(ClassName(o.label))},
                       {"xmin", o.bbox.xmin},
                       {"ymin", o.bbox.ymin},
                       {"xmax", o.bbox.xmax},
                       {"ymax", o.bbox.ymax}});
  }
  return {{"image_id", record.image_id},
          {"width", record.width},
          {"height", record.height},
          {"metadata", metadata},
          {"objects", objects}};
}

ImageRecord RecordFromJson(const ordered_json& node) {
  ImageRecord record;
  record.image_id = node.at("image_id").get<std::string>();
  record.width = node.at("width").get<int>();
  record.height = node.at("height").get<int>();
  const auto& m = node.at("metadata");
  record.metadata.slide_id = m.at("slide_id").get<std::string>();
  record.metadata.stage_x = OptionalField<double>(m, "stage_x");
  record.metadata.stage_y = OptionalField<double>(m, "stage_y");
  record.metadata.phone_zoom = OptionalField<double>(m, "phone_zoom");
  record.metadata.objective_magnification =
      OptionalField<int>(m, "objective_magnification");
  record.metadata.stain = OptionalField<std::string>(m, "stain");
  for (const auto& o : node.at("objects")) {
    const std::string name = o.at("label").get<std::string>();
    auto label = ClassFromName(name);
    if (!label) throw ParseError("unknown label '" + name + "'");
    record.objects.push_back(
        {BBox{o.at("xmin").get<double>(), o.at("ymin").get<double>(),
              o.at("xmax").get<double>(), o.at("ymax").get<double>()},
         *label});
  }
  return record;
}

}  // namespace

std::string SerializeManifest(const Dataset& dataset) {
  std::string out = ordered_json{{"format", kManifestFormat},
                                 {"version", kManifestVersion}}
                        .dump();
  out += '\n';
  for (const auto& record : dataset.records) {
    out += RecordToJson(record).dump();
    out += '\n';
  }
  return out;
}

Dataset ParseManifest(const std::string& contents) {
  std::istringstream in(contents);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("manifest: missing header line");

  try {
    const auto header = ordered_json::parse(line);
    if (header.value("format", "") != kManifestFormat) {
      throw ParseError("manifest: not a smearcount manifest");
    }
    const int version = header.value("version", -1);
    if (version != kManifestVersion) {
      throw ParseError("manifest: schema version " + std::to_string(version) +
                       " unsupported (expected " +
                       std::to_string(kManifestVersion) + ")");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest line 1: ") + e.what());
  }

  Dataset dataset;
  std::set<std::string> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    const std::string where = "manifest line " + std::to_string(line_no);
    ImageRecord record;
    try {
      record = RecordFromJson(ordered_json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!seen.insert(record.image_id).second) {
      throw ValidationError(where + ": duplicate image_id '" +
                            record.image_id + "'");
    }
    ValidateRecord(record);
    dataset.records.push_back(std::move(record));
  }
  return dataset;
}

void WriteManifest(const Dataset& dataset, const std::string& path) {
  text::WriteFile(path, SerializeManifest(dataset));
}

Dataset ReadManifest(const std::string& path) {
  return ParseManifest(text::ReadFile(path));
}

}  // namespace smearcount
