// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#include "fss/fss.hpp"

#include <cmath>

#include "fss/error.hpp"

namespace fss {

FssScore compute_fss(const Researcher& researcher, const Corpus& corpus, const ShareIndex& shares,
                     const CitationBaseline& baselines, const WageTable& wages) {
  const double wage = wages.wage(researcher.rank);
  if (!(wage > 0.0)) throw ValidationError("wage for rank '" + researcher.rank + "' must be positive");
  if (researcher.years_active < 1) {
    throw ValidationError("researcher '" + researcher.id + "' has years_active < 1");
  }

  double weighted = 0.0;
  for (const auto& a : corpus.authorships(researcher.id)) {
    const auto& pub = corpus.publications()[a.publication];
    auto it = shares.find(pub.id);
    if (it == shares.end()) {
      throw DataInconsistencyError("no share vector for publication '" + pub.id + "' authored by '" +
                                   researcher.id + "'");
    }
    if (it->second.shares.size() != pub.byline.size()) {
      throw DataInconsistencyError("share vector for '" + pub.id + "' does not match its byline");
    }
    weighted += normalized_impact(pub, baselines) * it->second.shares[a.slot];
  }

  FssScore score;
  score.researcher_id = researcher.id;
  score.field_code = researcher.field_code;
  score.gender = researcher.gender;
  score.value = weighted / (wage * static_cast<double>(researcher.years_active));
  if (!std::isfinite(score.value)) {
    throw DataInconsistencyError("FSS of '" + researcher.id + "' is not finite");
  }
  score.productive = score.value > 0.0;
  return score;
}

FieldScores compute_all_fss(const Corpus& corpus, const ShareIndex& shares,
                            const CitationBaseline& baselines, const WageTable& wages,
                            const std::set<std::string>* fields) {
  FieldScores out;
  // Researchers are stored ordered by id, so each group comes out ordered too.
  for (const auto& r : corpus.researchers()) {
    if (fields && !fields->count(r.field_code)) continue;
    out[r.field_code].push_back(compute_fss(r, corpus, shares, baselines, wages));
  }
  return out;
}

}  // namespace fss
