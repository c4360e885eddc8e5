// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#pragma once

#include <cstdint>

#include "fss/corpus.hpp"

namespace fss {

/// Parameters of a seeded synthetic corpus. Field i is contribution-ordered
/// when i is odd, alphabetical otherwise; areas group fields in pairs.
struct SyntheticSpec {
  std::size_t fields = 2;
  std::size_t researchers_per_field = 64;
  double female_share = 0.5;
  double male_publication_rate = 4.0;    // expected papers over a full window
  double female_publication_rate = 4.0;
  double male_citation_mean = 8.0;
  double female_citation_mean = 8.0;
  double unproductive_share = 0.1;  // researchers forced to publish nothing
  double multi_category_share = 0.2;  // publications listed under both field categories
  YearWindow window{};
  std::uint64_t seed = 1;
};

/// Deterministic for a given spec on every platform: the generator uses
/// SplitMix64 and its own sampling routines rather than <random> distributions.
Corpus make_synthetic_corpus(const SyntheticSpec& spec);

}  // namespace fss
