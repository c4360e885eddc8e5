// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fss {

enum class Gender { female, male };

std::string_view to_string(Gender g);
Gender parse_gender(std::string_view text);  // "F" or "M"

enum class BylineConvention { alphabetical, contribution_ordered };

std::string_view to_string(BylineConvention c);
BylineConvention parse_convention(std::string_view text);

/// Closed range of calendar years.
struct YearWindow {
  int first = 2006;
  int last = 2010;

  int length() const { return last - first + 1; }
  bool contains(int year) const { return year >= first && year <= last; }

  /// Parses "A:B"; throws ValidationError when malformed or empty.
  static YearWindow parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const YearWindow&, const YearWindow&) = default;
};

struct Researcher {
  std::string id;
  Gender gender = Gender::female;
  std::string rank;  // key into the wage table
  std::string field_code;
  int years_active = 1;
  std::string affiliation_id;

  friend bool operator==(const Researcher&, const Researcher&) = default;
};

struct Field {
  std::string code;
  std::string discipline_area;
  BylineConvention convention = BylineConvention::alphabetical;

  friend bool operator==(const Field&, const Field&) = default;
};

/// One byline position. An empty researcher id marks an external co-author.
struct BylineSlot {
  std::optional<std::string> researcher_id;
  std::string affiliation_id;

  bool external() const { return !researcher_id.has_value(); }
  friend bool operator==(const BylineSlot&, const BylineSlot&) = default;
};

struct Publication {
  std::string id;
  int year = 0;
  std::int64_t citations = 0;
  std::vector<std::string> subject_categories;
  std::vector<BylineSlot> byline;

  friend bool operator==(const Publication&, const Publication&) = default;
};

/// Average yearly wage per academic rank. All wages are strictly positive.
class WageTable {
 public:
  WageTable() = default;
  explicit WageTable(std::map<std::string, double, std::less<>> wages);

  double wage(std::string_view rank) const;
  bool contains(std::string_view rank) const { return wages_.find(rank) != wages_.end(); }
  const std::map<std::string, double, std::less<>>& entries() const { return wages_; }

  /// Returns a copy with every wage multiplied by `factor` (> 0).
  WageTable scaled(double factor) const;

  friend bool operator==(const WageTable&, const WageTable&) = default;

 private:
  std::map<std::string, double, std::less<>> wages_;
};

/// Position of a researcher in one publication's byline.
struct Authorship {
  std::size_t publication = 0;  // index into Corpus::publications()
  std::size_t slot = 0;
};

/// Row counts seen while loading. Publications outside the observation window
/// are dropped together with their byline rows.
struct LoadReport {
  std::size_t researchers = 0;
  std::size_t fields = 0;
  std::size_t publications = 0;
  std::size_t byline_rows = 0;
  std::size_t wage_rows = 0;
  std::size_t publications_outside_window = 0;
};

/// Immutable, cross-validated set of tables. Each table is ordered by its key.
class Corpus {
 public:
  /// Validates referential integrity and every per-row invariant. Publications
  /// must already lie inside `window`.
  static Corpus build(std::vector<Researcher> researchers, std::vector<Field> fields,
                      std::vector<Publication> publications, WageTable wages, YearWindow window);

  const std::vector<Researcher>& researchers() const { return researchers_; }
  const std::vector<Field>& fields() const { return fields_; }
  const std::vector<Publication>& publications() const { return publications_; }
  const WageTable& wages() const { return wages_; }
  const YearWindow& window() const { return window_; }

  const Researcher* find_researcher(std::string_view id) const;
  const Field* find_field(std::string_view code) const;
  const Field& field_of(const Researcher& r) const;

  /// Every byline position held by the researcher, in publication order.
  const std::vector<Authorship>& authorships(std::string_view researcher_id) const;

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.researchers_ == b.researchers_ && a.fields_ == b.fields_ &&
           a.publications_ == b.publications_ && a.wages_ == b.wages_ && a.window_ == b.window_;
  }

 private:
  std::vector<Researcher> researchers_;
  std::vector<Field> fields_;
  std::vector<Publication> publications_;
  WageTable wages_;
  YearWindow window_;
  std::map<std::string, std::vector<Authorship>, std::less<>> authorships_;
};

struct LoadedCorpus {
  Corpus corpus;
  LoadReport report;
};

/// Reads researchers.csv, fields.csv, publications.csv, bylines.csv and
/// wages.csv from `dir`.
LoadedCorpus load_corpus(const std::filesystem::path& dir, YearWindow window);

/// Writes the five tables in the same schemas `load_corpus` reads.
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Field eligibility

enum class Membership {
  all,          // every researcher listed for the field
  full_window,  // only researchers active for the whole observation window
};

struct EligibilityOptions {
  double min_productive_share = 0.5;
  int min_per_gender = 30;
  Membership membership = Membership::all;
};

struct FieldEligibility {
  std::string field_code;
  std::size_t members = 0;
  std::size_t female = 0;
  std::size_t male = 0;
  std::size_t productive = 0;  // members with at least one in-window publication
  double productive_share = 0.0;
  bool share_ok = false;
  bool gender_ok = false;

  bool eligible() const { return share_ok && gender_ok; }
};

/// One row per declared field, ordered by field code.
std::vector<FieldEligibility> assess_fields(const Corpus& corpus, const EligibilityOptions& options);

std::set<std::string> filter_eligible_fields(const Corpus& corpus,
                                             const EligibilityOptions& options = {});

// ---------------------------------------------------------------------------
// Gender incidence

enum class GroupBy { field, area, rank };

struct IncidenceRow {
  std::string group;
  std::size_t headcount = 0;
  std::size_t female = 0;
  std::size_t male = 0;
  double female_share = 0.0;
};

std::vector<IncidenceRow> gender_incidence_report(const Corpus& corpus, GroupBy group_by);

}  // namespace fss
