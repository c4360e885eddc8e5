// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#include "fss/credit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fss/error.hpp"

namespace fss {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<double> uniform(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

}  // namespace

void CreditWeights::validate() const {
  for (double w : {shared_end, shared_middle, split_end, split_inner, split_rest}) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("credit weights must be positive");
  }
  if (std::abs(2 * shared_end + shared_middle - 1.0) > 1e-12) {
    throw ValidationError("shared-affiliation weights must satisfy 2*shared_end + shared_middle = 1");
  }
  if (std::abs(2 * split_end + 2 * split_inner + split_rest - 1.0) > 1e-12) {
    throw ValidationError(
        "split-affiliation weights must satisfy 2*split_end + 2*split_inner + split_rest = 1");
  }
}

CreditWeights CreditWeights::parse(std::string_view text, std::string_view source) {
  CreditWeights w;
  const std::map<std::string_view, double CreditWeights::*> keys = {
      {"shared_end", &CreditWeights::shared_end},   {"shared_middle", &CreditWeights::shared_middle},
      {"split_end", &CreditWeights::split_end},     {"split_inner", &CreditWeights::split_inner},
      {"split_rest", &CreditWeights::split_rest},
  };
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(std::string(source), line_no, 1, "expected key = value");
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    auto it = keys.find(key);
    if (it == keys.end()) {
      throw ParseError(std::string(source), line_no, 1, "unknown weight '" + std::string(key) + "'");
    }
    double v = 0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc{} || end != value.data() + value.size()) {
      throw ParseError(std::string(source), line_no, eq + 2, "'" + std::string(value) + "' is not a number");
    }
    w.*(it->second) = v;
  }
  w.validate();
  return w;
}

CreditWeights CreditWeights::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.filename().string());
}

std::string_view to_string(ShareScheme s) {
  switch (s) {
    case ShareScheme::uniform: return "uniform";
    case ShareScheme::shared_affiliation: return "shared_affiliation";
    case ShareScheme::split_affiliation: return "split_affiliation";
    case ShareScheme::small_byline: return "small_byline";
  }
  return "?";
}

ShareVector fractional_shares(std::span<const BylineSlot> byline, BylineConvention convention,
                              const CreditWeights& weights) {
  const std::size_t n = byline.size();
  if (n == 0) throw ValidationError("cannot split credit over an empty byline");

  ShareVector out;
  if (convention == BylineConvention::alphabetical) {
    out.scheme = ShareScheme::uniform;
    out.shares = uniform(n);
    return out;
  }

  const bool shared = byline.front().affiliation_id == byline.back().affiliation_id;
  if (shared && n >= 3) {
    out.scheme = ShareScheme::shared_affiliation;
    out.shares.assign(n, weights.shared_middle / static_cast<double>(n - 2));
    out.shares.front() = weights.shared_end;
    out.shares.back() = weights.shared_end;
  } else if (!shared && n >= 5) {
    out.scheme = ShareScheme::split_affiliation;
    out.shares.assign(n, weights.split_rest / static_cast<double>(n - 4));
    out.shares[0] = out.shares[n - 1] = weights.split_end;
    out.shares[1] = out.shares[n - 2] = weights.split_inner;
  } else {
    // Positions would collide or leave nobody to split the remainder.
    out.scheme = n == 1 ? ShareScheme::uniform : ShareScheme::small_byline;
    out.shares = uniform(n);
  }
  return out;
}

BylineConvention publication_convention(const Corpus& corpus, const Publication& pub) {
  for (const auto& slot : pub.byline) {
    if (slot.external()) continue;
    return corpus.field_of(*corpus.find_researcher(*slot.researcher_id)).convention;
  }
  return BylineConvention::alphabetical;
}

ShareIndex compute_all_shares(const Corpus& corpus, const CreditWeights& weights) {
  weights.validate();
  ShareIndex index;
  for (const auto& pub : corpus.publications()) {
    auto sv = fractional_shares(pub.byline, publication_convention(corpus, pub), weights);
    sv.publication_id = pub.id;
    index.emplace(pub.id, std::move(sv));
  }
  return index;
}

}  // namespace fss
