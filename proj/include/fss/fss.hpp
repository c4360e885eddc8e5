// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fss/corpus.hpp"
#include "fss/credit.hpp"
#include "fss/impact.hpp"

namespace fss {

/// Yearly, wage-normalized fractional scientific strength of one researcher.
struct FssScore {
  std::string researcher_id;
  std::string field_code;
  Gender gender = Gender::female;
  double value = 0.0;
  bool productive = false;  // value > 0
};

/// FSS = 1/(wage * years_active) * sum over authored publications of
/// normalized_impact * own share. External co-authors' shares are never
/// redistributed.
FssScore compute_fss(const Researcher& researcher, const Corpus& corpus, const ShareIndex& shares,
                     const CitationBaseline& baselines, const WageTable& wages);

using FieldScores = std::map<std::string, std::vector<FssScore>, std::less<>>;

/// Scores grouped by field code, each group ordered by researcher id. When
/// `fields` is given only those fields are scored.
FieldScores compute_all_fss(const Corpus& corpus, const ShareIndex& shares,
                            const CitationBaseline& baselines, const WageTable& wages,
                            const std::set<std::string>* fields = nullptr);

}  // namespace fss
