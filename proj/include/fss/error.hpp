// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#pragma once

#include <stdexcept>
#include <string>

namespace fss {

/// Malformed input, bad configuration or a broken referential constraint.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A row-level parse problem, located by file, 1-based line and 1-based column.
class ParseError : public ValidationError {
 public:
  ParseError(std::string file, std::size_t line, std::size_t column, const std::string& what)
      : ValidationError(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                        what),
        file_(std::move(file)),
        line_(line),
        column_(column) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

/// Inputs are individually valid but disagree with each other
/// (e.g. a cited publication without any citation baseline).
class DataInconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A statistic is undefined on the given sample (zero variance, empty group, ...).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fss
