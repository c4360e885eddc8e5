// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#include <charconv>
#include <map>
#include <sstream>

#include "fss/csv.hpp"
#include "fss/error.hpp"
#include "fss/pipeline.hpp"

namespace fss {

namespace {

namespace fs = std::filesystem;

// Rows of an upstream CSV as column-name -> cell maps.
std::vector<std::map<std::string, std::string>> records(const fs::path& dir, const char* name) {
  const auto path = dir / name;
  if (!fs::exists(path)) throw ValidationError("missing upstream file " + std::string(name));
  const auto table = csv::read(path);
  std::vector<std::map<std::string, std::string>> out;
  for (const auto& row : table.rows) {
    std::map<std::string, std::string> rec;
    for (std::size_t i = 0; i < table.header.size(); ++i) rec[table.header[i]] = row.cells[i];
    out.push_back(std::move(rec));
  }
  return out;
}

std::string stars_for(const std::string& p_text) {
  double p = 1.0;
  auto [end, ec] = std::from_chars(p_text.data(), p_text.data() + p_text.size(), p);
  if (p_text.empty() || ec != std::errc{}) return "";
  return std::string(significance_stars(p));
}

std::string or_dash(const std::string& s) { return s.empty() ? "-" : s; }

std::string starred(const std::string& value, const std::string& p_text) {
  const auto stars = stars_for(p_text);
  return or_dash(value) + (stars.empty() ? "" : " " + stars);
}

}  // namespace

std::string render_summary(const fs::path& dir) {
  const auto eligibility = records(dir, "eligibility.csv");
  const auto incidence = records(dir, "incidence_by_area.csv");
  const auto area_stats = records(dir, "stats_by_area.csv");
  const auto correlations = records(dir, "pbc_by_field.csv");
  const auto shift_rows = records(dir, "shift_summary_by_area.csv");
  const auto classes = records(dir, "field_classes.csv");

  std::size_t eligible = 0;
  for (const auto& e : eligibility) eligible += e.at("eligible") == "true";

  std::ostringstream out;
  out << "FSS gender ranking summary\n";
  out << "eligible fields: " << eligible << " of " << eligibility.size() << "\n";
  if (eligible == 0) {
    out << "no eligible fields\n";
    return out.str();
  }

  std::map<std::string, const std::map<std::string, std::string>*> incidence_by_area;
  for (const auto& r : incidence) incidence_by_area[r.at("group")] = &r;
  std::map<std::string, const std::map<std::string, std::string>*> correlation_by_area;
  for (const auto& r : correlations) correlation_by_area[r.at("discipline_area")] = &r;
  std::map<std::pair<std::string, std::string>, std::string> mean_shift;
  for (const auto& r : shift_rows) mean_shift[{r.at("group"), r.at("gender")}] = r.at("mean");
  // area -> gender -> class -> count
  std::map<std::string, std::map<std::string, std::map<std::string, int>>> class_counts;
  for (const auto& r : classes) ++class_counts[r.at("discipline_area")][r.at("gender")][r.at("class")];

  for (const auto& s : area_stats) {
    const auto& area = s.at("group");
    out << "\n[" << area << "]\n";
    if (auto it = incidence_by_area.find(area); it != incidence_by_area.end()) {
      const auto& inc = *it->second;
      out << "  female incidence: " << inc.at("female_share") << " (" << inc.at("female") << " of "
          << inc.at("headcount") << ")\n";
    }
    out << "  mean FSS: M " << or_dash(s.at("mean_M")) << ", F " << or_dash(s.at("mean_F")) << " ("
        << or_dash(s.at("mean_test")) << " " << or_dash(s.at("mean_statistic")) << ", p "
        << starred(s.at("p_mean"), s.at("p_mean")) << ")\n";
    out << "  unproductive %: M " << or_dash(s.at("pct_zero_M")) << ", F " << or_dash(s.at("pct_zero_F"))
        << " (z " << or_dash(s.at("z_unproductive")) << ", p "
        << starred(s.at("p_unproductive"), s.at("p_unproductive")) << ")\n";
    if (auto it = correlation_by_area.find(area); it != correlation_by_area.end()) {
      const auto& c = *it->second;
      out << "  point-biserial r: " << starred(c.at("r_pb"), c.at("p")) << " (fields "
          << c.at("fields") << ", significant " << or_dash(c.at("pct_significant")) << "%)\n";
    }
    out << "  mean rank shift: M " << or_dash(mean_shift[{area, "M"}]) << ", F "
        << or_dash(mean_shift[{area, "F"}]) << "\n";
    for (const char* g : {"M", "F"}) {
      out << "  classes " << g << ":";
      const auto& counts = class_counts[area][g];
      if (counts.empty()) out << " -";
      for (const auto& [cls, n] : counts) out << " " << cls << "=" << n;
      out << "\n";
    }
  }
  if (auto it = correlation_by_area.find("Total"); it != correlation_by_area.end()) {
    const auto& c = *it->second;
    out << "\n[Total]\n  point-biserial r: " << starred(c.at("r_pb"), c.at("p"))
        << " (fields " << c.at("fields") << ", significant " << or_dash(c.at("pct_significant")) << "%)\n";
  }
  out << "\n** p-value < 0.05; *** p-value < 0.01\n";
  return out.str();
}

}  // namespace fss
