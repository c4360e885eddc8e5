// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fss::csv {

struct Row {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> cells;
};

/// A parsed RFC-4180 file. The header row is mandatory and is not part of `rows`.
struct Table {
  std::string source;  // file name used in error messages
  std::vector<std::string> header;
  std::vector<Row> rows;

  /// Index of `name` in the header; throws ValidationError if absent.
  std::size_t column(std::string_view name) const;
};

Table parse(std::string_view text, std::string source);

/// Reads and parses `path`. When `expected_header` is nonempty the header must
/// match it exactly (same names, same order).
Table read(const std::filesystem::path& path, std::span<const std::string_view> expected_header = {});

/// Quotes a cell when it contains a delimiter, a quote or a line break.
std::string escape(std::string_view cell);

void write_row(std::ostream& out, std::span<const std::string> cells);
void write_row(std::ostream& out, std::initializer_list<std::string_view> cells);

enum class Precision { six_significant, full };

/// Numeric cell text. Six significant digits (round-half-even on exact decimal
/// ties) or the shortest representation that round-trips. Negative zero prints as 0.
std::string format_number(double value, Precision precision);

}  // namespace fss::csv
