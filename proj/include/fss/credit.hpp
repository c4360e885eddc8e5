// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fss/corpus.hpp"

namespace fss {

/// Positional credit weights for contribution-ordered bylines.
///
/// When first and last authors share an affiliation each receives
/// `shared_end` and the rest of the byline splits `shared_middle`. Otherwise
/// the ends receive `split_end`, second and penultimate receive
/// `split_inner`, and everyone else splits `split_rest`.
struct CreditWeights {
  double shared_end = 0.40;
  double shared_middle = 0.20;
  double split_end = 0.30;
  double split_inner = 0.15;
  double split_rest = 0.10;

  /// Throws ValidationError unless all weights are positive and each scheme sums to 1.
  void validate() const;

  /// Reads `key = value` lines; `#` starts a comment. Unknown keys are rejected.
  static CreditWeights from_file(const std::filesystem::path& path);
  static CreditWeights parse(std::string_view text, std::string_view source = "<weights>");
};

enum class ShareScheme {
  uniform,             // alphabetical byline: 1/N each
  shared_affiliation,  // first and last share an affiliation
  split_affiliation,   // first and last affiliated differently
  small_byline,        // contribution-ordered but too short for positional weights; 1/N each
};

std::string_view to_string(ShareScheme s);

struct ShareVector {
  std::string publication_id;
  std::vector<double> shares;  // aligned with byline slots
  ShareScheme scheme = ShareScheme::uniform;

  bool fallback() const { return scheme == ShareScheme::small_byline; }
};

/// Credit split over one byline. Throws ValidationError for an empty byline.
ShareVector fractional_shares(std::span<const BylineSlot> byline, BylineConvention convention,
                              const CreditWeights& weights = {});

using ShareIndex = std::map<std::string, ShareVector, std::less<>>;

/// Share vectors for every publication, keyed by publication id. The byline
/// convention of a publication is that of the field of its first in-corpus
/// author; all-external bylines use the alphabetical rule.
ShareIndex compute_all_shares(const Corpus& corpus, const CreditWeights& weights = {});

/// Convention governing a publication's byline (see compute_all_shares).
BylineConvention publication_convention(const Corpus& corpus, const Publication& pub);

}  // namespace fss
