// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#include "fss/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "fss/error.hpp"
#include "fss/stats.hpp"

namespace fss {

namespace {

bool same_score(double a, double b) {
  return a == b || std::abs(b - a) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::vector<double> percentile_ranks(std::span<const double> scores) {
  const std::size_t n = scores.size();
  if (n < 2) throw DegenerateError("percentile ranks need at least two scores");
  for (double s : scores) {
    if (std::isnan(s)) throw DegenerateError("percentile ranks of NaN");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  std::vector<double> out(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && (j == i || same_score(scores[order[j - 1]], scores[order[j]]))) ++j;
    // ordinal ranks i+1 .. j share their average
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    const double pct = 100.0 * (midrank - 1.0) / denom;
    for (std::size_t k = i; k < j; ++k) out[order[k]] = pct;
    i = j;
  }
  return out;
}

FieldMeans productive_means(std::span<const FssScore> scores) {
  double sum_all = 0.0, sum_f = 0.0, sum_m = 0.0;
  std::size_t n_all = 0, n_f = 0, n_m = 0;
  for (const auto& s : scores) {
    if (!(s.value > 0.0)) continue;
    sum_all += s.value;
    ++n_all;
    if (s.gender == Gender::female) {
      sum_f += s.value;
      ++n_f;
    } else {
      sum_m += s.value;
      ++n_m;
    }
  }
  const std::string field = scores.empty() ? std::string() : scores.front().field_code;
  if (n_all == 0) throw DegenerateError("field '" + field + "' has no productive members");
  if (n_f == 0) throw DegenerateError("field '" + field + "' has no productive female members");
  if (n_m == 0) throw DegenerateError("field '" + field + "' has no productive male members");
  return FieldMeans{sum_all / static_cast<double>(n_all), sum_f / static_cast<double>(n_f),
                    sum_m / static_cast<double>(n_m)};
}

std::vector<RankEntry> distance_ratios(std::span<const FssScore> scores) {
  return distance_ratios(scores, productive_means(scores));
}

std::vector<RankEntry> distance_ratios(std::span<const FssScore> scores, const FieldMeans& means) {
  if (!(means.pooled > 0.0) || !(means.female > 0.0) || !(means.male > 0.0)) {
    throw DegenerateError("distance ratios need positive productive means");
  }
  std::vector<RankEntry> out;
  out.reserve(scores.size());
  for (const auto& s : scores) {
    RankEntry e;
    e.researcher_id = s.researcher_id;
    e.field_code = s.field_code;
    e.gender = s.gender;
    e.fss = s.value;
    e.ratio_pooled = s.value / means.pooled;
    e.ratio_gender = s.value / (s.gender == Gender::female ? means.female : means.male);
    out.push_back(std::move(e));
  }
  return out;
}

RankedField rank_shifts(std::span<const RankEntry> entries, StratifiedRanking variant) {
  std::size_t n_f = 0;
  for (const auto& e : entries) n_f += e.gender == Gender::female;
  const std::size_t n_m = entries.size() - n_f;
  const std::string field = entries.empty() ? std::string() : entries.front().field_code;
  if (entries.size() < 2) throw DegenerateError("field '" + field + "' needs at least two members to rank");
  if (variant == StratifiedRanking::within_gender && (n_f == 1 || n_m == 1)) {
    throw DegenerateError("field '" + field + "' needs at least two members of each present gender to rank");
  }

  RankedField out;
  out.entries.assign(entries.begin(), entries.end());
  std::vector<double> pooled(entries.size());
  std::vector<double> stratified(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    pooled[i] = entries[i].ratio_pooled;
    stratified[i] = entries[i].ratio_gender;
  }
  const auto pct_pooled = percentile_ranks(pooled);
  std::vector<double> pct_gender(entries.size());
  if (variant == StratifiedRanking::merged) {
    pct_gender = percentile_ranks(stratified);
  } else {
    for (Gender g : {Gender::female, Gender::male}) {
      std::vector<std::size_t> idx;
      std::vector<double> sub;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].gender != g) continue;
        idx.push_back(i);
        sub.push_back(stratified[i]);
      }
      if (sub.empty()) continue;
      const auto p = percentile_ranks(sub);
      for (std::size_t k = 0; k < idx.size(); ++k) pct_gender[idx[k]] = p[k];
    }
  }

  out.shifts.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& e = out.entries[i];
    e.percentile_pooled = pct_pooled[i];
    e.percentile_gender = pct_gender[i];
    out.shifts.push_back(RankShift{e.researcher_id, e.field_code, e.gender,
                                   e.percentile_gender - e.percentile_pooled});
  }
  return out;
}

std::string_view to_string(ShiftClass c) {
  switch (c) {
    case ShiftClass::cl1: return "Cl-1";
    case ShiftClass::cl2: return "Cl-2";
    case ShiftClass::cl3: return "Cl-3";
    case ShiftClass::cl4: return "Cl-4";
    case ShiftClass::cl5: return "Cl-5";
    case ShiftClass::cl6: return "Cl-6";
  }
  return "?";
}

ShiftClass classify_shift(double mean_shift) {
  if (std::isnan(mean_shift)) throw DegenerateError("cannot classify a NaN shift");
  if (mean_shift < -8.0) return ShiftClass::cl1;
  if (mean_shift < -4.0) return ShiftClass::cl2;
  if (mean_shift < 0.0) return ShiftClass::cl3;
  if (mean_shift < 4.0) return ShiftClass::cl4;
  if (mean_shift < 8.0) return ShiftClass::cl5;
  return ShiftClass::cl6;
}

GenderShiftClass classify_gender_shifts(std::span<const RankShift> shifts, Gender gender) {
  std::vector<double> values;
  for (const auto& s : shifts) {
    if (s.gender == gender) values.push_back(s.shift);
  }
  if (values.empty()) {
    throw DegenerateError("no " + std::string(to_string(gender)) + " shifts to classify");
  }
  GenderShiftClass out;
  out.mean_shift = mean(values);
  out.shift_class = classify_shift(out.mean_shift);
  return out;
}

FieldShiftClasses classify_field_shifts(std::span<const RankShift> shifts) {
  FieldShiftClasses out;
  if (!shifts.empty()) out.field_code = shifts.front().field_code;
  auto has = [&](Gender g) {
    return std::any_of(shifts.begin(), shifts.end(), [&](const RankShift& s) { return s.gender == g; });
  };
  if (has(Gender::female)) out.female = classify_gender_shifts(shifts, Gender::female);
  if (has(Gender::male)) out.male = classify_gender_shifts(shifts, Gender::male);
  return out;
}

std::vector<ShiftSummaryRow> shift_summary(std::span<const RankShift> shifts,
                                           const std::function<std::string(const std::string&)>& group_of) {
  // male sorts first
  std::map<std::pair<std::string, int>, std::vector<double>> groups;
  for (const auto& s : shifts) {
    groups[{group_of(s.field_code), s.gender == Gender::male ? 0 : 1}].push_back(s.shift);
  }
  std::vector<ShiftSummaryRow> out;
  for (const auto& [key, values] : groups) {
    const auto d = descriptive_stats(values);
    ShiftSummaryRow row;
    row.group = key.first;
    row.gender = key.second == 0 ? Gender::male : Gender::female;
    row.count = d.count;
    row.mean = d.mean;
    row.median = d.median;
    row.stdev = d.stdev;
    row.min = d.min;
    row.max = d.max;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace fss
