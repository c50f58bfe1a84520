// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small string helpers shared by the line-oriented readers.
namespace smearcount::text {

std::string Trim(std::string_view s);
std::string ToLower(std::string_view s);
std::vector<std::string> Split(std::string_view s, char sep);

// Strict numeric parsing: the whole (trimmed) field must be consumed.
std::optional<double> ParseDouble(std::string_view s);
std::optional<long long> ParseInt(std::string_view s);

// Shortest representation that parses back to the identical double.
std::string FormatDouble(double value);

std::string ReadFile(const std::string& path);
// Truncates and writes. Throws IoError on failure.
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace smearcount::text
