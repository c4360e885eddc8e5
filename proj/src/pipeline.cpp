// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#include "fss/pipeline.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fss/error.hpp"

namespace fss {

namespace fs = std::filesystem;

namespace {

constexpr std::array<const char*, 5> kInputFiles = {"researchers.csv", "fields.csv", "publications.csv",
                                                    "bylines.csv", "wages.csv"};

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string sanitize(std::string_view name) {
  std::string out;
  for (char c : name) {
    const bool keep = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '_';
    out += keep ? c : '_';
  }
  return out;
}

class Writer {
 public:
  Writer(const fs::path& path, csv::Precision precision)
      : out_(path, std::ios::binary), precision_(precision) {
    if (!out_) throw ValidationError("cannot write " + path.string());
  }

  std::string num(double v) const { return csv::format_number(v, precision_); }

  void row(std::initializer_list<std::string_view> cells) { csv::write_row(out_, cells); }
  void row(const std::vector<std::string>& cells) { csv::write_row(out_, cells); }

 private:
  std::ofstream out_;
  csv::Precision precision_;
};

// Stats -------------------------------------------------------------------

GroupStats group_stats(const std::string& group, const std::string& area,
                       const std::vector<const FssScore*>& members, TestKind mean_test,
                       std::vector<std::string>& warnings) {
  GroupStats gs;
  gs.group = group;
  gs.area = area;
  std::vector<double> m, f;
  for (const auto* s : members) (s->gender == Gender::male ? m : f).push_back(s->value);
  if (!m.empty()) gs.male = descriptive_stats(m);
  if (!f.empty()) gs.female = descriptive_stats(f);
  auto zeros = [](const std::vector<double>& v) {
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), 0.0));
  };
  try {
    gs.unproductive_test = z_test_proportions(zeros(m), m.size(), zeros(f), f.size());
  } catch (const DegenerateError& e) {
    warnings.push_back("stats " + group + ": unproductive z-test: " + e.what());
  }
  try {
    gs.mean_test = mean_test == TestKind::mann_whitney_u ? mann_whitney_u(m, f) : t_test_independent(m, f);
  } catch (const DegenerateError& e) {
    warnings.push_back("stats " + group + ": " + std::string(to_string(mean_test)) + ": " + e.what());
  }
  return gs;
}

std::optional<PointBiserialResult> try_point_biserial(const std::vector<const FssScore*>& members,
                                                      const std::string& label,
                                                      std::vector<std::string>& warnings) {
  std::vector<double> values;
  std::vector<Gender> genders;
  for (const auto* s : members) {
    values.push_back(s->value);
    genders.push_back(s->gender);
  }
  try {
    return point_biserial(values, genders);
  } catch (const DegenerateError& e) {
    warnings.push_back("point-biserial " + label + ": " + e.what());
    return std::nullopt;
  }
}

void compute_stats(Analysis& a) {
  const auto& cfg = a.config;
  std::map<std::string, std::vector<const FssScore*>> by_area;
  std::vector<const FssScore*> everyone;
  std::map<std::string, AreaCorrelation> areas;

  for (const auto& code : a.eligible) {
    const auto it = a.scores.find(code);
    if (it == a.scores.end()) continue;
    std::vector<const FssScore*> members;
    for (const auto& s : it->second) members.push_back(&s);
    const auto area = a.area_of(code);
    a.field_stats.push_back(group_stats(code, area, members, cfg.mean_test, a.warnings));
    by_area[area].insert(by_area[area].end(), members.begin(), members.end());
    everyone.insert(everyone.end(), members.begin(), members.end());
    auto& ac = areas[area];
    ac.area = area;
    if (auto r = try_point_biserial(members, code, a.warnings)) {
      a.field_correlations.push_back(FieldPointBiserial{code, area, *r});
      ac.min_r = ac.fields ? std::min(ac.min_r, r->r_pb) : r->r_pb;
      ac.max_r = ac.fields ? std::max(ac.max_r, r->r_pb) : r->r_pb;
      ++ac.fields;
      ac.significant += r->p_value < 0.05;
    }
  }

  for (auto& [area, members] : by_area) {
    a.area_stats.push_back(group_stats(area, area, members, cfg.mean_test, a.warnings));
    auto& ac = areas[area];
    ac.pooled = try_point_biserial(members, area, a.warnings);
    a.area_correlations.push_back(ac);

    for (Gender g : {Gender::male, Gender::female}) {
      std::vector<double> positive;
      for (const auto* s : members) {
        if (s->gender == g && s->value > 0.0) positive.push_back(s->value);
      }
      try {
        KdeGroup k;
        k.area = area;
        k.gender = g;
        k.n = positive.size();
        k.curve = epanechnikov_kde(positive, cfg.kde_grid, cfg.kde_bandwidth);
        a.densities.push_back(std::move(k));
      } catch (const DegenerateError& e) {
        a.warnings.push_back("kde " + area + "/" + std::string(to_string(g)) + ": " + e.what());
      }
    }
  }

  if (!everyone.empty()) {
    AreaCorrelation total;
    total.area = "Total";
    for (const auto& fc : a.field_correlations) {
      total.min_r = total.fields ? std::min(total.min_r, fc.result.r_pb) : fc.result.r_pb;
      total.max_r = total.fields ? std::max(total.max_r, fc.result.r_pb) : fc.result.r_pb;
      ++total.fields;
      total.significant += fc.result.p_value < 0.05;
    }
    total.pooled = try_point_biserial(everyone, "Total", a.warnings);
    a.area_correlations.push_back(std::move(total));
  }
}

// Writers -----------------------------------------------------------------

void write_ingest(const Analysis& a, const fs::path& dir) {
  const auto p = a.config.precision;
  {
    Writer w(dir / "eligibility.csv", p);
    w.row({"field_code", "members", "female", "male", "productive", "productive_share", "share_ok",
           "gender_ok", "eligible"});
    for (const auto& e : a.eligibility) {
      w.row({e.field_code, std::to_string(e.members), std::to_string(e.female), std::to_string(e.male),
             std::to_string(e.productive), w.num(e.productive_share), yes_no(e.share_ok),
             yes_no(e.gender_ok), yes_no(e.eligible())});
    }
  }
  const std::pair<GroupBy, const char*> groups[] = {{GroupBy::field, "incidence_by_field.csv"},
                                                    {GroupBy::area, "incidence_by_area.csv"},
                                                    {GroupBy::rank, "incidence_by_rank.csv"}};
  for (const auto& [by, name] : groups) {
    Writer w(dir / name, p);
    w.row({"group", "headcount", "female", "male", "female_share"});
    for (const auto& r : gender_incidence_report(a.data(), by)) {
      w.row({r.group, std::to_string(r.headcount), std::to_string(r.female), std::to_string(r.male),
             w.num(r.female_share)});
    }
  }
}

void write_shares(const Analysis& a, const fs::path& dir) {
  Writer w(dir / "shares.csv", a.config.precision);
  Writer s(dir / "share_schemes.csv", a.config.precision);
  w.row({"publication_id", "slot_index", "share"});
  s.row({"publication_id", "convention", "scheme"});
  for (const auto& pub : a.data().publications()) {
    const auto& sv = a.shares.at(pub.id);
    for (std::size_t i = 0; i < sv.shares.size(); ++i) {
      w.row({pub.id, std::to_string(i), w.num(sv.shares[i])});
    }
    s.row({pub.id, to_string(publication_convention(a.data(), pub)), to_string(sv.scheme)});
  }
}

void write_baselines(const Analysis& a, const fs::path& dir) {
  Writer w(dir / "baselines.csv", a.config.precision);
  w.row({"year", "subject_category", "mean_cited_citations"});
  for (const auto& [key, cell] : a.baselines.cells()) {
    w.row({std::to_string(key.year), key.subject_category, w.num(cell.mean)});
  }
}

void write_compute(const Analysis& a, const fs::path& dir) {
  Writer w(dir / "fss.csv", a.config.precision);
  w.row({"researcher_id", "field_code", "gender", "fss", "productive"});
  // one row per researcher, ordered by researcher id
  std::vector<const FssScore*> all;
  for (const auto& [field, scores] : a.scores) {
    for (const auto& s : scores) all.push_back(&s);
  }
  std::sort(all.begin(), all.end(),
            [](const FssScore* l, const FssScore* r) { return l->researcher_id < r->researcher_id; });
  for (const auto* s : all) {
    w.row({s->researcher_id, s->field_code, to_string(s->gender), w.num(s->value), yes_no(s->productive)});
  }
}

void write_rank(const Analysis& a, const fs::path& dir) {
  const auto p = a.config.precision;
  {
    Writer w(dir / "rank_entries.csv", p);
    w.row({"researcher_id", "field_code", "gender", "fss", "ratio_pooled", "ratio_gender",
           "percentile_pooled", "percentile_gender"});
    for (const auto& rf : a.ranked) {
      for (const auto& e : rf.entries) {
        w.row({e.researcher_id, e.field_code, to_string(e.gender), w.num(e.fss), w.num(e.ratio_pooled),
               w.num(e.ratio_gender), w.num(e.percentile_pooled), w.num(e.percentile_gender)});
      }
    }
  }
  std::vector<RankShift> all_shifts;
  {
    Writer w(dir / "shifts.csv", p);
    w.row({"researcher_id", "field_code", "gender", "shift"});
    for (const auto& rf : a.ranked) {
      for (const auto& s : rf.shifts) {
        w.row({s.researcher_id, s.field_code, to_string(s.gender), w.num(s.shift)});
        all_shifts.push_back(s);
      }
    }
  }
  {
    Writer w(dir / "field_classes.csv", p);
    w.row({"field_code", "discipline_area", "gender", "mean_shift", "class"});
    for (const auto& fc : a.classes) {
      for (auto [g, c] : {std::pair{Gender::male, &fc.male}, std::pair{Gender::female, &fc.female}}) {
        if (!*c) continue;
        w.row({fc.field_code, a.area_of(fc.field_code), to_string(g), w.num((*c)->mean_shift),
               to_string((*c)->shift_class)});
      }
    }
  }
  {
    Writer w(dir / "scatter_data.csv", p);
    w.row({"field_code", "ratio_pooled", "ratio_gender", "gender"});
    for (const auto& rf : a.ranked) {
      for (const auto& e : rf.entries) {
        w.row({e.field_code, w.num(e.ratio_pooled), w.num(e.ratio_gender), to_string(e.gender)});
      }
    }
  }
  const std::pair<const char*, std::function<std::string(const std::string&)>> summaries[] = {
      {"shift_summary_by_field.csv", [](const std::string& f) { return f; }},
      {"shift_summary_by_area.csv", [&](const std::string& f) { return a.area_of(f); }}};
  for (const auto& [name, group_of] : summaries) {
    Writer w(dir / name, p);
    w.row({"group", "gender", "count", "mean", "median", "stdev", "min", "max"});
    for (const auto& r : shift_summary(all_shifts, group_of)) {
      w.row({r.group, to_string(r.gender), std::to_string(r.count), w.num(r.mean), w.num(r.median),
             w.num(r.stdev), w.num(r.min), w.num(r.max)});
    }
  }
  {
    Writer w(dir / "ranking_skipped.csv", p);
    w.row({"field_code", "reason"});
    for (const auto& s : a.skipped) w.row({s.field_code, s.reason});
  }
}

void write_group_stats(const std::vector<GroupStats>& rows, const fs::path& path, csv::Precision p) {
  Writer w(path, p);
  w.row({"group", "discipline_area", "n_M", "n_F", "pct_zero_M", "pct_zero_F", "mean_M", "mean_F",
         "median_M", "median_F", "max_M", "max_F", "stdev_M", "stdev_F", "iqr_M", "iqr_F",
         "z_unproductive", "p_unproductive", "mean_test", "mean_statistic", "p_mean"});
  for (const auto& g : rows) {
    auto field = [&](const std::optional<Descriptive>& d, auto member) {
      return d ? w.num((*d).*member) : std::string();
    };
    auto count = [](const std::optional<Descriptive>& d) { return d ? std::to_string(d->count) : "0"; };
    std::vector<std::string> cells = {g.group, g.area, count(g.male), count(g.female)};
    for (auto member : {&Descriptive::pct_zero, &Descriptive::mean, &Descriptive::median, &Descriptive::max,
                        &Descriptive::stdev, &Descriptive::iqr}) {
      cells.push_back(field(g.male, member));
      cells.push_back(field(g.female, member));
    }
    cells.push_back(g.unproductive_test ? w.num(g.unproductive_test->statistic) : "");
    cells.push_back(g.unproductive_test ? w.num(g.unproductive_test->p_value) : "");
    cells.push_back(g.mean_test ? std::string(to_string(g.mean_test->kind)) : "");
    cells.push_back(g.mean_test ? w.num(g.mean_test->statistic) : "");
    cells.push_back(g.mean_test ? w.num(g.mean_test->p_value) : "");
    w.row(cells);
  }
}

void write_stats(const Analysis& a, const fs::path& dir) {
  const auto p = a.config.precision;
  write_group_stats(a.field_stats, dir / "stats_by_field.csv", p);
  write_group_stats(a.area_stats, dir / "stats_by_area.csv", p);
  {
    Writer w(dir / "pbc_fields.csv", p);
    w.row({"field_code", "discipline_area", "n_M", "n_F", "r_pb", "t", "p"});
    for (const auto& fc : a.field_correlations) {
      const auto& r = fc.result;
      w.row({fc.field_code, fc.area, std::to_string(r.n_male), std::to_string(r.n_female), w.num(r.r_pb),
             w.num(r.t_stat), w.num(r.p_value)});
    }
  }
  {
    Writer w(dir / "pbc_by_field.csv", p);
    w.row({"discipline_area", "fields", "pct_significant", "min_r", "max_r", "r_pb", "p", "stars"});
    for (const auto& ac : a.area_correlations) {
      const bool any = ac.fields > 0;
      w.row({ac.area, std::to_string(ac.fields),
             any ? w.num(100.0 * static_cast<double>(ac.significant) / static_cast<double>(ac.fields)) : "",
             any ? w.num(ac.min_r) : "", any ? w.num(ac.max_r) : "", ac.pooled ? w.num(ac.pooled->r_pb) : "",
             ac.pooled ? w.num(ac.pooled->p_value) : "",
             ac.pooled ? std::string(significance_stars(ac.pooled->p_value)) : ""});
    }
  }
  {
    Writer w(dir / "kde_bandwidths.csv", p);
    w.row({"group", "gender", "n", "bandwidth", "file"});
    for (const auto& k : a.densities) {
      const auto name = "kde_" + sanitize(k.area) + "_" + std::string(to_string(k.gender)) + ".csv";
      w.row({k.area, to_string(k.gender), std::to_string(k.n), w.num(k.curve.bandwidth), name});
      Writer curve(dir / name, p);
      curve.row({"log_fss", "density"});
      for (std::size_t i = 0; i < k.curve.grid.size(); ++i) {
        curve.row({curve.num(k.curve.grid[i]), curve.num(k.curve.density[i])});
      }
    }
  }
}

void write_report(const fs::path& dir) {
  const auto text = render_summary(dir);
  std::ofstream out(dir / "summary.txt", std::ios::binary);
  if (!out) throw ValidationError("cannot write " + (dir / "summary.txt").string());
  out << text;
}

// Staging -----------------------------------------------------------------

class StagingDir {
 public:
  explicit StagingDir(const fs::path& out_dir) : out_dir_(out_dir) {
    fs::create_directories(out_dir_);
    path_ = out_dir_ / (".fss-staging-" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  StagingDir(const StagingDir&) = delete;
  StagingDir& operator=(const StagingDir&) = delete;
  ~StagingDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }

  const fs::path& path() const { return path_; }

  /// Moves every staged file into the output directory; returns their names, sorted.
  std::vector<std::string> commit() {
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(path_)) names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    for (const auto& n : names) fs::rename(path_ / n, out_dir_ / n);
    return names;
  }

 private:
  fs::path out_dir_;
  fs::path path_;
};

std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"); sde && *sde) {
    t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Re-throws with the failing stage named, keeping the error category.
template <typename F>
void in_stage(Stage stage, F&& body) {
  const std::string prefix = "stage " + std::string(to_string(stage)) + ": ";
  try {
    body();
  } catch (const ValidationError& e) {
    throw ValidationError(prefix + e.what());
  } catch (const DataInconsistencyError& e) {
    throw DataInconsistencyError(prefix + e.what());
  } catch (const DegenerateError& e) {
    throw DegenerateError(prefix + e.what());
  }
}

void check_strict(const Analysis& a) {
  if (!a.config.strict || a.warnings.empty()) return;
  std::string msg = "degenerate statistics (--strict):";
  for (const auto& w : a.warnings) msg += "\n  " + w;
  throw DegenerateError(msg);
}

}  // namespace

// -------------------------------------------------------------------------

void RunConfig::validate() const {
  if (corpus_dir.empty()) throw ValidationError("--corpus-dir is required");
  if (window.last < window.first) throw ValidationError("observation window is empty");
  if (!(eligibility.min_productive_share >= 0.0 && eligibility.min_productive_share <= 1.0)) {
    throw ValidationError("--min-share must lie in [0, 1]");
  }
  if (eligibility.min_per_gender < 0) throw ValidationError("--min-per-gender must be nonnegative");
  if (kde_grid < 2) throw ValidationError("--kde-grid must be at least 2");
  if (kde_bandwidth && !(*kde_bandwidth > 0.0)) throw ValidationError("--kde-bandwidth must be positive");
}

std::map<std::string, std::string> RunConfig::snapshot() const {
  std::map<std::string, std::string> m;
  m["corpus_dir"] = corpus_dir.string();
  m["window"] = window.str();
  m["min_share"] = csv::format_number(eligibility.min_productive_share, csv::Precision::full);
  m["min_per_gender"] = std::to_string(eligibility.min_per_gender);
  m["membership"] = eligibility.membership == Membership::all ? "all" : "full_window";
  m["weights_file"] = weights_file ? weights_file->string() : "";
  m["baseline_override"] = baseline_override ? baseline_override->string() : "";
  m["kde_grid"] = std::to_string(kde_grid);
  m["kde_bandwidth"] = kde_bandwidth ? csv::format_number(*kde_bandwidth, csv::Precision::full) : "silverman";
  m["mean_test"] = std::string(to_string(mean_test));
  m["ranking"] = ranking == StratifiedRanking::merged ? "merged" : "within_gender";
  m["precision"] = precision == csv::Precision::full ? "full" : "6";
  m["strict"] = yes_no(strict);
  m["seed"] = std::to_string(seed);
  return m;
}

std::string Analysis::area_of(const std::string& field_code) const {
  const auto* f = data().find_field(field_code);
  return f ? f->discipline_area : std::string();
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::ingest: return "ingest";
    case Stage::shares: return "shares";
    case Stage::baselines: return "baselines";
    case Stage::compute: return "compute";
    case Stage::rank: return "rank";
    case Stage::stats: return "stats";
    case Stage::report: return "report";
  }
  return "?";
}

Analysis analyze(const RunConfig& config, Stage last) {
  config.validate();
  Analysis a;
  a.config = config;
  auto at_least = [&](Stage s) { return static_cast<int>(last) >= static_cast<int>(s); };

  in_stage(Stage::ingest, [&] {
    auto loaded = load_corpus(config.corpus_dir, config.window);
    a.load_report = loaded.report;
    a.corpus.emplace(std::move(loaded.corpus));
    a.eligibility = assess_fields(a.data(), config.eligibility);
    for (const auto& e : a.eligibility) {
      if (e.eligible()) a.eligible.insert(e.field_code);
    }
  });
  if (!at_least(Stage::shares)) return a;

  in_stage(Stage::shares, [&] {
    a.weights = config.weights_file ? CreditWeights::from_file(*config.weights_file) : CreditWeights{};
    a.shares = compute_all_shares(a.data(), a.weights);
  });
  if (!at_least(Stage::baselines)) return a;

  in_stage(Stage::baselines, [&] {
    a.baselines = compute_baselines(a.data());
    if (config.baseline_override) a.baselines.apply(read_baseline_override(*config.baseline_override));
  });
  if (!at_least(Stage::compute)) return a;

  in_stage(Stage::compute, [&] { a.scores = compute_all_fss(a.data(), a.shares, a.baselines, a.data().wages()); });
  if (!at_least(Stage::rank)) return a;

  // Degenerate fields are skipped with a warning rather than aborting the run.
  for (const auto& code : a.eligible) {
    const auto it = a.scores.find(code);
    if (it == a.scores.end()) continue;
    try {
      auto ranked = rank_shifts(distance_ratios(it->second), config.ranking);
      a.classes.push_back(classify_field_shifts(ranked.shifts));
      a.ranked.push_back(std::move(ranked));
    } catch (const DegenerateError& e) {
      a.skipped.push_back(SkippedField{code, e.what()});
      a.warnings.push_back(std::string("rank ") + code + ": " + e.what());
    }
  }
  if (!at_least(Stage::stats)) return a;

  in_stage(Stage::stats, [&] { compute_stats(a); });
  return a;
}

const std::vector<std::string>& stage_outputs(Stage s) {
  static const std::map<Stage, std::vector<std::string>> outputs = {
      {Stage::ingest, {"eligibility.csv", "incidence_by_field.csv", "incidence_by_area.csv", "incidence_by_rank.csv"}},
      {Stage::shares, {"shares.csv", "share_schemes.csv"}},
      {Stage::baselines, {"baselines.csv"}},
      {Stage::compute, {"fss.csv"}},
      {Stage::rank,
       {"rank_entries.csv", "shifts.csv", "field_classes.csv", "scatter_data.csv", "shift_summary_by_field.csv",
        "shift_summary_by_area.csv", "ranking_skipped.csv"}},
      {Stage::stats, {"stats_by_field.csv", "stats_by_area.csv", "pbc_fields.csv", "pbc_by_field.csv",
                      "kde_bandwidths.csv"}},
      {Stage::report, {"summary.txt"}},
  };
  return outputs.at(s);
}

void write_stage(const Analysis& analysis, Stage stage, const fs::path& dir) {
  switch (stage) {
    case Stage::ingest: write_ingest(analysis, dir); break;
    case Stage::shares: write_shares(analysis, dir); break;
    case Stage::baselines: write_baselines(analysis, dir); break;
    case Stage::compute: write_compute(analysis, dir); break;
    case Stage::rank: write_rank(analysis, dir); break;
    case Stage::stats: write_stats(analysis, dir); break;
    case Stage::report: write_report(dir); break;
  }
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool_version"] = tool_version;
  j["generated_at"] = generated_at;
  j["config"] = config;
  j["input_digests"] = input_digests;
  j["row_counts"] = row_counts;
  j["output_digests"] = output_digests;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

RunManifest run_pipeline(const RunConfig& config) {
  const Analysis a = analyze(config, Stage::stats);
  check_strict(a);

  StagingDir staging(config.out_dir);
  for (Stage s : {Stage::ingest, Stage::shares, Stage::baselines, Stage::compute, Stage::rank, Stage::stats,
                  Stage::report}) {
    in_stage(s, [&] { write_stage(a, s, staging.path()); });
  }

  RunManifest m;
  m.tool_version = kToolVersion;
  m.generated_at = utc_timestamp();
  m.config = config.snapshot();
  m.warnings = a.warnings;
  for (const char* name : kInputFiles) m.input_digests[name] = sha256_file(config.corpus_dir / name);
  if (config.weights_file) m.input_digests["weights_file"] = sha256_file(*config.weights_file);
  if (config.baseline_override) m.input_digests["baseline_override"] = sha256_file(*config.baseline_override);

  const auto& rep = a.load_report;
  m.row_counts["researchers"] = rep.researchers;
  m.row_counts["fields"] = rep.fields;
  m.row_counts["publications"] = rep.publications;
  m.row_counts["publications_outside_window"] = rep.publications_outside_window;
  m.row_counts["byline_rows"] = rep.byline_rows;
  m.row_counts["wage_rows"] = rep.wage_rows;
  m.row_counts["eligible_fields"] = a.eligible.size();
  m.row_counts["baseline_cells"] = a.baselines.cells().size();
  m.row_counts["ranked_fields"] = a.ranked.size();
  m.row_counts["skipped_fields"] = a.skipped.size();
  std::size_t fss_rows = 0, shift_rows = 0;
  for (const auto& [f, s] : a.scores) fss_rows += s.size();
  for (const auto& rf : a.ranked) shift_rows += rf.shifts.size();
  m.row_counts["fss_rows"] = fss_rows;
  m.row_counts["shift_rows"] = shift_rows;

  for (const auto& entry : fs::directory_iterator(staging.path())) {
    m.output_digests[entry.path().filename().string()] = sha256_file(entry.path());
  }
  {
    std::ofstream out(staging.path() / "manifest.json", std::ios::binary);
    out << m.to_json();
    if (!out) throw ValidationError("cannot write manifest.json");
  }
  staging.commit();
  return m;
}

std::vector<std::string> run_stage(const RunConfig& config, Stage stage) {
  if (stage == Stage::report) {
    config.validate();
    StagingDir staging(config.out_dir);
    {
      std::ofstream out(staging.path() / "summary.txt", std::ios::binary);
      out << render_summary(config.out_dir);
      if (!out) throw ValidationError("cannot write summary.txt");
    }
    staging.commit();
    return {};
  }
  const Analysis a = analyze(config, stage);
  check_strict(a);
  StagingDir staging(config.out_dir);
  in_stage(stage, [&] { write_stage(a, stage, staging.path()); });
  staging.commit();
  return a.warnings;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

std::string_view significance_stars(double p_value) {
  if (p_value < 0.01) return "***";
  if (p_value < 0.05) return "**";
  return "";
}

}  // namespace fss
