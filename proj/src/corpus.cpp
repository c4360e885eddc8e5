// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#include "fss/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include "fss/csv.hpp"
#include "fss/error.hpp"

namespace fss {

namespace {

constexpr std::array<std::string_view, 6> kResearcherHeader = {
    "researcher_id", "gender", "rank", "field_code", "years_active", "affiliation_id"};
constexpr std::array<std::string_view, 3> kFieldHeader = {"field_code", "discipline_area",
                                                          "byline_convention"};
constexpr std::array<std::string_view, 4> kPublicationHeader = {"publication_id", "year",
                                                                "citations", "subject_categories"};
constexpr std::array<std::string_view, 4> kBylineHeader = {"publication_id", "slot_index",
                                                           "researcher_id", "affiliation_id"};
constexpr std::array<std::string_view, 2> kWageHeader = {"rank", "avg_yearly_wage"};

// Cell accessor that knows where it is, so every conversion error carries
// file, line and column.
struct Cell {
  const csv::Table& table;
  const csv::Row& row;
  std::size_t index;

  const std::string& text() const { return row.cells[index]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(table.source, row.line, index + 1, table.header[index] + ": " + what);
  }

  const std::string& nonempty() const {
    if (text().empty()) fail("must not be empty");
    return text();
  }

  std::int64_t integer() const {
    const auto& s = text();
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
      fail("'" + s + "' is not an integer");
    }
    return value;
  }

  double real() const {
    const auto& s = text();
    double value = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(value)) {
      fail("'" + s + "' is not a finite number");
    }
    return value;
  }
};

Cell cell(const csv::Table& t, const csv::Row& r, std::size_t i) { return Cell{t, r, i}; }

template <typename T, typename Key>
void sort_and_check_unique(std::vector<T>& rows, Key key, std::string_view what) {
  std::sort(rows.begin(), rows.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
  auto dup = std::adjacent_find(rows.begin(), rows.end(),
                                [&](const T& a, const T& b) { return key(a) == key(b); });
  if (dup != rows.end()) {
    throw ValidationError("duplicate " + std::string(what) + " '" + key(*dup) + "'");
  }
}

std::vector<std::string> split_categories(const Cell& c) {
  std::vector<std::string> out;
  const std::string& s = c.nonempty();
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(';', start);
    auto item = s.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    if (item.empty()) c.fail("empty subject category in '" + s + "'");
    out.push_back(std::move(item));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(Gender g) { return g == Gender::female ? "F" : "M"; }

Gender parse_gender(std::string_view text) {
  if (text == "F") return Gender::female;
  if (text == "M") return Gender::male;
  throw ValidationError("gender must be F or M, got '" + std::string(text) + "'");
}

std::string_view to_string(BylineConvention c) {
  return c == BylineConvention::alphabetical ? "alphabetical" : "contribution_ordered";
}

BylineConvention parse_convention(std::string_view text) {
  if (text == "alphabetical") return BylineConvention::alphabetical;
  if (text == "contribution_ordered") return BylineConvention::contribution_ordered;
  throw ValidationError("byline_convention must be alphabetical or contribution_ordered, got '" +
                        std::string(text) + "'");
}

YearWindow YearWindow::parse(std::string_view text) {
  auto colon = text.find(':');
  auto bad = [&] { return ValidationError("window must look like 2006:2010, got '" + std::string(text) + "'"); };
  if (colon == std::string_view::npos) throw bad();
  YearWindow w;
  auto a = text.substr(0, colon);
  auto b = text.substr(colon + 1);
  auto r1 = std::from_chars(a.data(), a.data() + a.size(), w.first);
  auto r2 = std::from_chars(b.data(), b.data() + b.size(), w.last);
  if (a.empty() || b.empty() || r1.ec != std::errc{} || r2.ec != std::errc{} ||
      r1.ptr != a.data() + a.size() || r2.ptr != b.data() + b.size()) {
    throw bad();
  }
  if (w.last < w.first) throw ValidationError("window " + std::string(text) + " is empty");
  return w;
}

std::string YearWindow::str() const { return std::to_string(first) + ":" + std::to_string(last); }

WageTable::WageTable(std::map<std::string, double, std::less<>> wages) : wages_(std::move(wages)) {
  for (const auto& [rank, w] : wages_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError("wage for rank '" + rank + "' must be positive, got " +
                            std::to_string(w));
    }
  }
}

double WageTable::wage(std::string_view rank) const {
  auto it = wages_.find(rank);
  if (it == wages_.end()) throw ValidationError("no wage for rank '" + std::string(rank) + "'");
  return it->second;
}

WageTable WageTable::scaled(double factor) const {
  auto copy = wages_;
  for (auto& [rank, w] : copy) w *= factor;
  return WageTable(std::move(copy));
}

Corpus Corpus::build(std::vector<Researcher> researchers, std::vector<Field> fields,
                     std::vector<Publication> publications, WageTable wages, YearWindow window) {
  if (window.last < window.first) throw ValidationError("observation window is empty");
  Corpus c;
  sort_and_check_unique(fields, [](const Field& f) { return f.code; }, "field_code");
  sort_and_check_unique(researchers, [](const Researcher& r) { return r.id; }, "researcher_id");
  sort_and_check_unique(publications, [](const Publication& p) { return p.id; }, "publication_id");
  c.fields_ = std::move(fields);
  c.researchers_ = std::move(researchers);
  c.publications_ = std::move(publications);
  c.wages_ = std::move(wages);
  c.window_ = window;

  for (const auto& f : c.fields_) {
    if (f.code.empty()) throw ValidationError("empty field_code");
  }
  for (const auto& r : c.researchers_) {
    if (r.id.empty()) throw ValidationError("empty researcher_id");
    if (!c.find_field(r.field_code)) {
      throw ValidationError("researcher '" + r.id + "' references unknown field '" + r.field_code +
                            "'");
    }
    if (!c.wages_.contains(r.rank)) {
      throw ValidationError("researcher '" + r.id + "' has rank '" + r.rank +
                            "' with no entry in the wage table");
    }
    if (r.years_active < 1 || r.years_active > window.length()) {
      throw ValidationError("researcher '" + r.id + "' has years_active " +
                            std::to_string(r.years_active) + " outside 1.." +
                            std::to_string(window.length()));
    }
    c.authorships_[r.id];
  }
  for (std::size_t p = 0; p < c.publications_.size(); ++p) {
    const auto& pub = c.publications_[p];
    if (pub.id.empty()) throw ValidationError("empty publication_id");
    if (!window.contains(pub.year)) {
      throw ValidationError("publication '" + pub.id + "' year " + std::to_string(pub.year) +
                            " lies outside window " + window.str());
    }
    if (pub.citations < 0) throw ValidationError("publication '" + pub.id + "' has negative citations");
    if (pub.subject_categories.empty()) {
      throw ValidationError("publication '" + pub.id + "' has no subject category");
    }
    if (pub.byline.empty()) throw ValidationError("publication '" + pub.id + "' has an empty byline");
    std::set<std::string_view> seen;
    for (std::size_t s = 0; s < pub.byline.size(); ++s) {
      const auto& slot = pub.byline[s];
      if (slot.external()) continue;
      const auto& rid = *slot.researcher_id;
      auto it = c.authorships_.find(rid);
      if (it == c.authorships_.end()) {
        throw ValidationError("publication '" + pub.id + "' byline references unknown researcher_id '" +
                              rid + "'");
      }
      if (!seen.insert(rid).second) {
        throw ValidationError("researcher '" + rid + "' appears twice in byline of '" + pub.id + "'");
      }
      it->second.push_back(Authorship{p, s});
    }
  }
  return c;
}

const Researcher* Corpus::find_researcher(std::string_view id) const {
  auto it = std::lower_bound(researchers_.begin(), researchers_.end(), id,
                             [](const Researcher& r, std::string_view key) { return r.id < key; });
  return it != researchers_.end() && it->id == id ? &*it : nullptr;
}

const Field* Corpus::find_field(std::string_view code) const {
  auto it = std::lower_bound(fields_.begin(), fields_.end(), code,
                             [](const Field& f, std::string_view key) { return f.code < key; });
  return it != fields_.end() && it->code == code ? &*it : nullptr;
}

const Field& Corpus::field_of(const Researcher& r) const { return *find_field(r.field_code); }

const std::vector<Authorship>& Corpus::authorships(std::string_view researcher_id) const {
  static const std::vector<Authorship> none;
  auto it = authorships_.find(researcher_id);
  return it == authorships_.end() ? none : it->second;
}

LoadedCorpus load_corpus(const std::filesystem::path& dir, YearWindow window) {
  LoadReport report;

  auto ftable = csv::read(dir / "fields.csv", kFieldHeader);
  std::vector<Field> fields;
  for (const auto& row : ftable.rows) {
    Field f;
    f.code = cell(ftable, row, 0).nonempty();
    f.discipline_area = cell(ftable, row, 1).nonempty();
    try {
      f.convention = parse_convention(row.cells[2]);
    } catch (const ValidationError& e) {
      cell(ftable, row, 2).fail(e.what());
    }
    fields.push_back(std::move(f));
  }
  report.fields = fields.size();

  auto wtable = csv::read(dir / "wages.csv", kWageHeader);
  std::map<std::string, double, std::less<>> wages;
  for (const auto& row : wtable.rows) {
    const auto& rank = cell(wtable, row, 0).nonempty();
    double w = cell(wtable, row, 1).real();
    if (!(w > 0.0)) cell(wtable, row, 1).fail("wage must be positive");
    if (!wages.emplace(rank, w).second) {
      cell(wtable, row, 0).fail("duplicate rank '" + rank + "'");
    }
  }
  report.wage_rows = wages.size();

  auto rtable = csv::read(dir / "researchers.csv", kResearcherHeader);
  std::vector<Researcher> researchers;
  for (const auto& row : rtable.rows) {
    Researcher r;
    r.id = cell(rtable, row, 0).nonempty();
    try {
      r.gender = parse_gender(row.cells[1]);
    } catch (const ValidationError& e) {
      cell(rtable, row, 1).fail(e.what());
    }
    r.rank = cell(rtable, row, 2).nonempty();
    r.field_code = cell(rtable, row, 3).nonempty();
    auto years = cell(rtable, row, 4).integer();
    if (years < 1 || years > window.length()) {
      cell(rtable, row, 4).fail("must lie in 1.." + std::to_string(window.length()));
    }
    r.years_active = static_cast<int>(years);
    r.affiliation_id = cell(rtable, row, 5).text();
    researchers.push_back(std::move(r));
  }
  report.researchers = researchers.size();

  auto ptable = csv::read(dir / "publications.csv", kPublicationHeader);
  std::vector<Publication> publications;
  std::map<std::string, std::size_t, std::less<>> pub_index;
  std::set<std::string, std::less<>> dropped;
  for (const auto& row : ptable.rows) {
    Publication p;
    p.id = cell(ptable, row, 0).nonempty();
    p.year = static_cast<int>(cell(ptable, row, 1).integer());
    p.citations = cell(ptable, row, 2).integer();
    if (p.citations < 0) cell(ptable, row, 2).fail("must be nonnegative");
    p.subject_categories = split_categories(cell(ptable, row, 3));
    if (pub_index.count(p.id) || dropped.count(p.id)) {
      cell(ptable, row, 0).fail("duplicate publication_id '" + p.id + "'");
    }
    if (!window.contains(p.year)) {
      dropped.insert(p.id);
      continue;
    }
    pub_index.emplace(p.id, publications.size());
    publications.push_back(std::move(p));
  }
  report.publications = publications.size();
  report.publications_outside_window = dropped.size();

  auto btable = csv::read(dir / "bylines.csv", kBylineHeader);
  std::map<std::string, std::map<std::int64_t, BylineSlot>, std::less<>> slots;
  for (const auto& row : btable.rows) {
    const auto& pid = cell(btable, row, 0).nonempty();
    auto idx = cell(btable, row, 1).integer();
    if (idx < 0) cell(btable, row, 1).fail("must be nonnegative");
    if (dropped.count(pid)) continue;
    if (!pub_index.count(pid)) cell(btable, row, 0).fail("unknown publication_id '" + pid + "'");
    BylineSlot slot;
    if (!row.cells[2].empty()) slot.researcher_id = row.cells[2];
    slot.affiliation_id = row.cells[3];
    if (!slots[pid].emplace(idx, std::move(slot)).second) {
      cell(btable, row, 1).fail("duplicate slot " + std::to_string(idx) + " for '" + pid + "'");
    }
    ++report.byline_rows;
  }
  for (auto& [pid, by_index] : slots) {
    auto& pub = publications[pub_index.at(pid)];
    std::int64_t expected = 0;
    for (auto& [idx, slot] : by_index) {
      if (idx != expected) {
        throw ValidationError("byline of '" + pid + "' is missing slot " + std::to_string(expected));
      }
      ++expected;
      pub.byline.push_back(std::move(slot));
    }
  }

  Corpus corpus = Corpus::build(std::move(researchers), std::move(fields), std::move(publications),
                                WageTable(std::move(wages)), window);
  return LoadedCorpus{std::move(corpus), report};
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + (dir / name).string());
    return out;
  };
  const auto full = csv::Precision::full;

  auto fields = open("fields.csv");
  csv::write_row(fields, {"field_code", "discipline_area", "byline_convention"});
  for (const auto& f : corpus.fields()) {
    csv::write_row(fields, {f.code, f.discipline_area, to_string(f.convention)});
  }

  auto wages = open("wages.csv");
  csv::write_row(wages, {"rank", "avg_yearly_wage"});
  for (const auto& [rank, w] : corpus.wages().entries()) {
    csv::write_row(wages, {rank, csv::format_number(w, full)});
  }

  auto researchers = open("researchers.csv");
  csv::write_row(researchers, {"researcher_id", "gender", "rank", "field_code", "years_active",
                               "affiliation_id"});
  for (const auto& r : corpus.researchers()) {
    csv::write_row(researchers, {r.id, to_string(r.gender), r.rank, r.field_code,
                                 std::to_string(r.years_active), r.affiliation_id});
  }

  auto pubs = open("publications.csv");
  auto bylines = open("bylines.csv");
  csv::write_row(pubs, {"publication_id", "year", "citations", "subject_categories"});
  csv::write_row(bylines, {"publication_id", "slot_index", "researcher_id", "affiliation_id"});
  for (const auto& p : corpus.publications()) {
    std::string cats;
    for (const auto& c : p.subject_categories) {
      if (!cats.empty()) cats += ';';
      cats += c;
    }
    csv::write_row(pubs, {p.id, std::to_string(p.year), std::to_string(p.citations), cats});
    for (std::size_t s = 0; s < p.byline.size(); ++s) {
      const auto& slot = p.byline[s];
      csv::write_row(bylines, {p.id, std::to_string(s), slot.researcher_id.value_or(""),
                               slot.affiliation_id});
    }
  }
}

std::vector<FieldEligibility> assess_fields(const Corpus& corpus, const EligibilityOptions& options) {
  std::map<std::string, FieldEligibility, std::less<>> by_field;
  for (const auto& f : corpus.fields()) by_field[f.code].field_code = f.code;

  for (const auto& r : corpus.researchers()) {
    if (options.membership == Membership::full_window &&
        r.years_active != corpus.window().length()) {
      continue;
    }
    auto& row = by_field[r.field_code];
    ++row.members;
    ++(r.gender == Gender::female ? row.female : row.male);
    if (!corpus.authorships(r.id).empty()) ++row.productive;
  }

  std::vector<FieldEligibility> out;
  for (auto& [code, row] : by_field) {
    row.productive_share =
        row.members ? static_cast<double>(row.productive) / static_cast<double>(row.members) : 0.0;
    row.share_ok = row.members > 0 && row.productive_share >= options.min_productive_share;
    const auto need = static_cast<std::size_t>(std::max(options.min_per_gender, 0));
    row.gender_ok = row.female >= need && row.male >= need;
    out.push_back(row);
  }
  return out;
}

std::set<std::string> filter_eligible_fields(const Corpus& corpus, const EligibilityOptions& options) {
  std::set<std::string> out;
  for (const auto& row : assess_fields(corpus, options)) {
    if (row.eligible()) out.insert(row.field_code);
  }
  return out;
}

std::vector<IncidenceRow> gender_incidence_report(const Corpus& corpus, GroupBy group_by) {
  std::map<std::string, IncidenceRow> groups;
  for (const auto& r : corpus.researchers()) {
    std::string key;
    switch (group_by) {
      case GroupBy::field: key = r.field_code; break;
      case GroupBy::area: key = corpus.field_of(r).discipline_area; break;
      case GroupBy::rank: key = r.rank; break;
    }
    auto& row = groups[key];
    row.group = key;
    ++row.headcount;
    ++(r.gender == Gender::female ? row.female : row.male);
  }
  std::vector<IncidenceRow> out;
  for (auto& [key, row] : groups) {
    row.female_share = static_cast<double>(row.female) / static_cast<double>(row.headcount);
    out.push_back(row);
  }
  return out;
}

}  // namespace fss
