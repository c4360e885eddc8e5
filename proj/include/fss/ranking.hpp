// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fss/corpus.hpp"
#include "fss/fss.hpp"

namespace fss {

/// Relative gap below which two scores count as tied.
inline constexpr double kTieTolerance = 1e-12;

/// Percentiles on a 0 (worst) to 100 (best) scale:
/// 100 * (midrank - 1) / (n - 1), ties sharing their average rank. Adjacent
/// sorted scores within kTieTolerance (relative) form one tie group.
/// Throws DegenerateError for fewer than two scores.
std::vector<double> percentile_ranks(std::span<const double> scores);

/// Mean FSS over productive members of a field, overall and per gender.
struct FieldMeans {
  double pooled = 0.0;
  double female = 0.0;
  double male = 0.0;
};

/// Throws DegenerateError when the field, or either gender within it, has no
/// productive member.
FieldMeans productive_means(std::span<const FssScore> scores);

struct RankEntry {
  std::string researcher_id;
  std::string field_code;
  Gender gender = Gender::female;
  double fss = 0.0;
  double ratio_pooled = 0.0;  // fss / productive field mean
  double ratio_gender = 0.0;  // fss / productive same-gender field mean
  double percentile_pooled = 0.0;
  double percentile_gender = 0.0;
};

/// Distance-from-mean ratios against the field's own productive means.
std::vector<RankEntry> distance_ratios(std::span<const FssScore> scores);

/// Same, against externally supplied means.
std::vector<RankEntry> distance_ratios(std::span<const FssScore> scores, const FieldMeans& means);

enum class StratifiedRanking {
  merged,         // gender ratios ranked together on one field list
  within_gender,  // gender ratios ranked inside each gender's own list
};

struct RankShift {
  std::string researcher_id;
  std::string field_code;
  Gender gender = Gender::female;
  double shift = 0.0;  // percentile_gender - percentile_pooled
};

struct RankedField {
  std::vector<RankEntry> entries;  // percentiles filled in
  std::vector<RankShift> shifts;   // aligned with entries
};

/// Ranks one field's entries by ratio_pooled and by ratio_gender and returns the
/// per-researcher percentile difference. Needs two members; the within-gender
/// variant also needs two members of each gender present.
RankedField rank_shifts(std::span<const RankEntry> entries,
                        StratifiedRanking variant = StratifiedRanking::merged);

enum class ShiftClass { cl1 = 1, cl2, cl3, cl4, cl5, cl6 };

std::string_view to_string(ShiftClass c);

/// Bins a mean shift, every boundary belonging to the class on its right:
/// Cl-1 < -8 <= Cl-2 < -4 <= Cl-3 < 0 <= Cl-4 < 4 <= Cl-5 < 8 <= Cl-6.
ShiftClass classify_shift(double mean_shift);

struct GenderShiftClass {
  double mean_shift = 0.0;
  ShiftClass shift_class = ShiftClass::cl4;
};

struct FieldShiftClasses {
  std::string field_code;
  std::optional<GenderShiftClass> female;
  std::optional<GenderShiftClass> male;
};

/// Mean shift of one gender and its class. Throws DegenerateError if that
/// gender has no shifts.
GenderShiftClass classify_gender_shifts(std::span<const RankShift> shifts, Gender gender);

/// Both genders of one field; a gender without members is left empty.
FieldShiftClasses classify_field_shifts(std::span<const RankShift> shifts);

struct ShiftSummaryRow {
  std::string group;
  Gender gender = Gender::female;
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double stdev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Descriptive statistics of shifts per (group, gender), ordered by group then
/// gender (M before F, as in the shift tables). `group_of` maps a field code to
/// its group label.
std::vector<ShiftSummaryRow> shift_summary(std::span<const RankShift> shifts,
                                           const std::function<std::string(const std::string&)>& group_of);

}  // namespace fss
