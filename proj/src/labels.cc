// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include "smearcount/labels.h"

#include <sstream>

#include "smearcount/errors.h"
#include "smearcount/text.h"

namespace smearcount {

std::string_view ClassName(ClassLabel label) {
  switch (label) {
    case ClassLabel::kTrophozoite:
      return "trophozoite";
    case ClassLabel::kWbc:
      return "wbc";
  }
  return "unknown";
}

std::optional<ClassLabel> ClassFromName(std::string_view name) {
  const std::string key = text::ToLower(text::Trim(name));
  if (key == "trophozoite") return ClassLabel::kTrophozoite;
  if (key == "wbc") return ClassLabel::kWbc;
  return std::nullopt;
}

LabelMap::LabelMap() {
  AddAlias("trophozoite", ClassLabel::kTrophozoite);
  AddAlias("wbc", ClassLabel::kWbc);
  AddAlias("white blood cell", ClassLabel::kWbc);
}

void LabelMap::AddAlias(std::string_view alias, ClassLabel label) {
  aliases_[text::ToLower(text::Trim(alias))] = label;
}

std::optional<ClassLabel> LabelMap::Lookup(std::string_view name) const {
  auto it = aliases_.find(text::ToLower(text::Trim(name)));
  if (it == aliases_.end()) return std::nullopt;
  return it->second;
}

LabelMap LabelMap::FromConfigFile(const std::string& path) {
  LabelMap map;
  std::istringstream in(text::ReadFile(path));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = text::Trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const auto label =
        eq == std::string::npos ? std::nullopt : ClassFromName(body.substr(eq + 1));
    if (!label || text::Trim(body.substr(0, eq)).empty()) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected 'alias = trophozoite|wbc'");
    }
    map.AddAlias(body.substr(0, eq), *label);
  }
  return map;
}

}  // namespace smearcount
