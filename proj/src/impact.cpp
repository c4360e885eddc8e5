// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#include "fss/impact.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "fss/csv.hpp"
#include "fss/error.hpp"

namespace fss {

const BaselineCell* CitationBaseline::find(int year, const std::string& category) const {
  auto it = cells_.find(CellKey{year, category});
  return it == cells_.end() ? nullptr : &it->second;
}

void CitationBaseline::set(CellKey key, BaselineCell cell) {
  if (!(cell.mean > 0.0) || !std::isfinite(cell.mean)) {
    throw ValidationError("baseline for " + std::to_string(key.year) + "/" + key.subject_category +
                          " must be positive");
  }
  cells_[std::move(key)] = cell;
}

void CitationBaseline::apply(const CitationBaseline& overrides) {
  for (const auto& [key, cell] : overrides.cells_) cells_[key] = cell;
}

CitationBaseline compute_baselines(const Corpus& corpus) {
  std::map<CellKey, std::pair<std::size_t, std::int64_t>> acc;
  for (const auto& pub : corpus.publications()) {
    if (pub.citations <= 0) continue;
    for (const auto& cat : pub.subject_categories) {
      auto& [count, sum] = acc[CellKey{pub.year, cat}];
      ++count;
      sum += pub.citations;
    }
  }
  CitationBaseline out;
  for (const auto& [key, cs] : acc) {
    const auto [count, sum] = cs;
    out.set(key, BaselineCell{static_cast<double>(sum) / static_cast<double>(count), count, sum});
  }
  return out;
}

CitationBaseline read_baseline_override(const std::filesystem::path& path) {
  static constexpr std::array<std::string_view, 3> header = {"year", "subject_category",
                                                             "mean_cited_citations"};
  auto table = csv::read(path, header);
  CitationBaseline out;
  for (const auto& row : table.rows) {
    int year = 0;
    double mean = 0;
    const auto& y = row.cells[0];
    const auto& m = row.cells[2];
    auto r1 = std::from_chars(y.data(), y.data() + y.size(), year);
    if (y.empty() || r1.ec != std::errc{} || r1.ptr != y.data() + y.size()) {
      throw ParseError(table.source, row.line, 1, "year: '" + y + "' is not an integer");
    }
    if (row.cells[1].empty()) throw ParseError(table.source, row.line, 2, "subject_category: must not be empty");
    auto r2 = std::from_chars(m.data(), m.data() + m.size(), mean);
    if (m.empty() || r2.ec != std::errc{} || r2.ptr != m.data() + m.size() || !(mean > 0.0) ||
        !std::isfinite(mean)) {
      throw ParseError(table.source, row.line, 3, "mean_cited_citations: '" + m + "' must be a positive number");
    }
    CellKey key{year, row.cells[1]};
    if (out.find(year, key.subject_category)) {
      throw ParseError(table.source, row.line, 1, "duplicate cell " + y + "/" + key.subject_category);
    }
    out.set(std::move(key), BaselineCell{mean, 0, std::nullopt});
  }
  return out;
}

double normalized_impact(const Publication& publication, const CitationBaseline& baselines) {
  if (publication.citations == 0) return 0.0;
  const double c = static_cast<double>(publication.citations);
  double total = 0.0;
  std::size_t used = 0;
  for (const auto& cat : publication.subject_categories) {
    const auto* cell = baselines.find(publication.year, cat);
    if (!cell) continue;
    // c * count / sum is invariant under scaling every citation in the cell.
    total += cell->cited_sum ? (c * static_cast<double>(cell->cited_count)) /
                                   static_cast<double>(*cell->cited_sum)
                             : c / cell->mean;
    ++used;
  }
  if (used == 0) {
    throw DataInconsistencyError("publication '" + publication.id + "' is cited but no baseline exists for " +
                                 std::to_string(publication.year) + " in any of its subject categories");
  }
  return total / static_cast<double>(used);
}

}  // namespace fss
