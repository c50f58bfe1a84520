// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace smearcount {

enum class ClassLabel { kTrophozoite = 0, kWbc = 1 };

inline constexpr std::array<ClassLabel, 2> kAllClasses = {
    ClassLabel::kTrophozoite, ClassLabel::kWbc};
inline constexpr std::size_t kNumClasses = kAllClasses.size();

inline std::size_t ClassIndex(ClassLabel label) {
  return static_cast<std::size_t>(label);
}

// Canonical token used in every file format this project writes.
std::string_view ClassName(ClassLabel label);

// Parses a canonical token ("trophozoite" / "wbc"). Case-insensitive.
std::optional<ClassLabel> ClassFromName(std::string_view name);

// Maps free-form annotation names onto the two classes. Lookup is
// case-insensitive and ignores surrounding whitespace.
class LabelMap {
 public:
  // trophozoite -> Trophozoite; wbc, white blood cell -> WBC.
  LabelMap();

  void AddAlias(std::string_view alias, ClassLabel label);
  std::optional<ClassLabel> Lookup(std::string_view name) const;

  // Reads "alias = trophozoite|wbc" lines; '#' starts a comment. Aliases are
  // added on top of the defaults.
  static LabelMap FromConfigFile(const std::string& path);

 private:
  std::map<std::string, ClassLabel> aliases_;
};

}  // namespace smearcount
