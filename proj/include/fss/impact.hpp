// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "fss/corpus.hpp"

namespace fss {

struct CellKey {
  int year = 0;
  std::string subject_category;

  auto operator<=>(const CellKey&) const = default;
};

/// Mean citations over cited publications of one (year, category) cell.
/// Cells computed from a corpus keep the integer sum so that normalization is
/// an exact ratio of integers; override cells carry only the mean.
struct BaselineCell {
  double mean = 0.0;
  std::size_t cited_count = 0;
  std::optional<std::int64_t> cited_sum;
};

class CitationBaseline {
 public:
  const BaselineCell* find(int year, const std::string& category) const;
  const std::map<CellKey, BaselineCell>& cells() const { return cells_; }

  /// Adds or replaces a cell; `mean` must be positive.
  void set(CellKey key, BaselineCell cell);

  /// Cells of `overrides` replace same-key cells of this baseline.
  void apply(const CitationBaseline& overrides);

 private:
  std::map<CellKey, BaselineCell> cells_;
};

/// One cell per (year, category) holding at least one publication with
/// citations > 0; the cell value is the mean over those cited publications.
CitationBaseline compute_baselines(const Corpus& corpus);

/// Reads `year,subject_category,mean_cited_citations`.
CitationBaseline read_baseline_override(const std::filesystem::path& path);

/// citations / baseline, averaged over the publication's categories that have a
/// baseline. Zero for uncited publications. Throws DataInconsistencyError when a
/// cited publication has no baseline in any of its categories.
double normalized_impact(const Publication& publication, const CitationBaseline& baselines);

}  // namespace fss
