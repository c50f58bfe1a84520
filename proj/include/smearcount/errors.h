// Copyright 2026 The smearcount Authors
//
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>

namespace smearcount {

// Failure categories. Each maps to a distinct process exit status in the CLI.
enum class ErrorKind {
  kParse = 3,
  kValidation = 4,
  kIo = 5,
  kUndefined = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::kParse, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::kValidation, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

// A quantity that has no defined value for the given input (e.g. a density
// with zero counted WBCs).
class UndefinedError : public Error {
 public:
  explicit UndefinedError(const std::string& what)
      : Error(ErrorKind::kUndefined, what) {}
};

}  // namespace smearcount
