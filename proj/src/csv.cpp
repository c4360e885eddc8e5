// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#include "fss/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fss/error.hpp"

namespace fss::csv {

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ValidationError(source + ": missing column '" + std::string(name) + "'");
}

Table parse(std::string_view text, std::string source) {
  Table table;
  table.source = std::move(source);

  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<Row> records;
  Row current;
  std::string cell;
  std::size_t line = 1;
  std::size_t column = 1;
  bool in_quotes = false;
  bool cell_was_quoted = false;
  bool record_open = false;
  current.line = 1;

  auto finish_cell = [&] {
    current.cells.push_back(std::move(cell));
    cell.clear();
    cell_was_quoted = false;
    ++column;
  };
  auto finish_record = [&] {
    finish_cell();
    records.push_back(std::move(current));
    current = Row{};
    record_open = false;
    column = 1;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        cell.push_back(c);
      }
      continue;
    }
    if (!record_open) {
      current.line = line;
      record_open = true;
    }
    switch (c) {
      case '"':
        if (!cell.empty() || cell_was_quoted) {
          throw ParseError(table.source, line, column, "unexpected quote inside unquoted field");
        }
        in_quotes = true;
        cell_was_quoted = true;
        break;
      case ',':
        finish_cell();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        finish_record();
        ++line;
        break;
      default:
        if (cell_was_quoted) {
          throw ParseError(table.source, line, column, "characters after closing quote");
        }
        cell.push_back(c);
    }
  }
  if (in_quotes) throw ParseError(table.source, line, column, "unterminated quoted field");
  if (record_open) finish_record();

  if (records.empty()) throw ParseError(table.source, 1, 1, "missing header row");
  table.header = std::move(records.front().cells);
  for (std::size_t r = 1; r < records.size(); ++r) {
    auto& rec = records[r];
    // A lone empty line is not a record.
    if (rec.cells.size() == 1 && rec.cells.front().empty()) continue;
    if (rec.cells.size() != table.header.size()) {
      throw ParseError(table.source, rec.line,
                       std::min(rec.cells.size(), table.header.size()) + 1,
                       "expected " + std::to_string(table.header.size()) + " fields, found " +
                           std::to_string(rec.cells.size()));
    }
    table.rows.push_back(std::move(rec));
  }
  return table;
}

Table read(const std::filesystem::path& path, std::span<const std::string_view> expected_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Table table = parse(buffer.str(), path.filename().string());
  if (!expected_header.empty()) {
    bool same = table.header.size() == expected_header.size();
    for (std::size_t i = 0; same && i < expected_header.size(); ++i) {
      same = table.header[i] == expected_header[i];
    }
    if (!same) {
      std::string want;
      for (auto name : expected_header) {
        if (!want.empty()) want += ',';
        want += name;
      }
      throw ParseError(table.source, 1, 1, "header must be '" + want + "'");
    }
  }
  return table;
}

std::string escape(std::string_view cell) {
  if (cell.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(cell);
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& out, std::span<const std::string> cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << escape(cells[i]);
  }
  out << '\n';
}

void write_row(std::ostream& out, std::initializer_list<std::string_view> cells) {
  bool first = true;
  for (auto cell : cells) {
    if (!first) out << ',';
    first = false;
    out << escape(cell);
  }
  out << '\n';
}

std::string format_number(double value, Precision precision) {
  if (value == 0.0) return "0";
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  if (precision == Precision::full) {
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
  }
  // printf rounds the exact binary value to nearest, ties to even.
  std::snprintf(buf.data(), buf.size(), "%.6g", value);
  std::string text(buf.data());
  if (text == "-0") return "0";
  return text;
}

}  // namespace fss::csv
