// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fss/corpus.hpp"
#include "fss/credit.hpp"
#include "fss/csv.hpp"
#include "fss/fss.hpp"
#include "fss/impact.hpp"
#include "fss/ranking.hpp"
#include "fss/stats.hpp"

namespace fss {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path out_dir = "out";
  YearWindow window{};
  EligibilityOptions eligibility{};
  std::optional<std::filesystem::path> weights_file;
  std::optional<std::filesystem::path> baseline_override;
  std::size_t kde_grid = 512;
  std::optional<double> kde_bandwidth;
  TestKind mean_test = TestKind::t_independent;
  StratifiedRanking ranking = StratifiedRanking::merged;
  csv::Precision precision = csv::Precision::six_significant;
  bool strict = false;
  std::uint64_t seed = 0;

  /// Throws ValidationError on out-of-range settings.
  void validate() const;

  /// Stable key/value view used in the run manifest.
  std::map<std::string, std::string> snapshot() const;
};

/// A field excluded from ranking because a statistic was undefined.
struct SkippedField {
  std::string field_code;
  std::string reason;
};

/// Gender comparison of FSS within one field or area (zeros included).
struct GroupStats {
  std::string group;
  std::string area;
  std::optional<Descriptive> male;
  std::optional<Descriptive> female;
  std::optional<TestResult> unproductive_test;  // z-test, male share minus female share
  std::optional<TestResult> mean_test;          // male minus female
};

struct FieldPointBiserial {
  std::string field_code;
  std::string area;
  PointBiserialResult result;
};

/// Correlation overview of one area: per-field spread plus the pooled
/// area-level coefficient.
struct AreaCorrelation {
  std::string area;  // "Total" for the all-fields row
  std::size_t fields = 0;
  std::size_t significant = 0;  // fields with p < 0.05
  double min_r = 0.0;
  double max_r = 0.0;
  std::optional<PointBiserialResult> pooled;
};

struct KdeGroup {
  std::string area;
  Gender gender = Gender::female;
  std::size_t n = 0;
  DensityCurve curve;
};

/// Every in-memory product of the pipeline, filled stage by stage.
struct Analysis {
  RunConfig config;
  LoadReport load_report;
  std::optional<Corpus> corpus;
  std::vector<FieldEligibility> eligibility;
  std::set<std::string> eligible;
  CreditWeights weights;
  ShareIndex shares;
  CitationBaseline baselines;
  FieldScores scores;  // every researcher, grouped by field
  std::vector<RankedField> ranked;
  std::vector<FieldShiftClasses> classes;
  std::vector<SkippedField> skipped;
  std::vector<GroupStats> field_stats;
  std::vector<GroupStats> area_stats;
  std::vector<FieldPointBiserial> field_correlations;
  std::vector<AreaCorrelation> area_correlations;
  std::vector<KdeGroup> densities;
  std::vector<std::string> warnings;

  const Corpus& data() const { return *corpus; }
  std::string area_of(const std::string& field_code) const;
};

enum class Stage { ingest, shares, baselines, compute, rank, stats, report };

std::string_view to_string(Stage s);

/// Runs every computation up to and including `last`.
Analysis analyze(const RunConfig& config, Stage last);

/// Output files written by each stage, in emission order. `kde_*.csv` files
/// of the stats stage are named per group and not listed.
const std::vector<std::string>& stage_outputs(Stage s);

/// Writes the files of one stage into `dir`. The report stage reads the
/// files earlier stages wrote in `dir`.
void write_stage(const Analysis& analysis, Stage stage, const std::filesystem::path& dir);

/// Plain-text summary built from the CSV outputs in `dir`. Throws
/// ValidationError when a required upstream file is missing.
std::string render_summary(const std::filesystem::path& dir);

struct RunManifest {
  std::map<std::string, std::string> config;
  std::map<std::string, std::string> input_digests;   // file -> sha256
  std::map<std::string, std::string> output_digests;  // file -> sha256
  std::map<std::string, std::size_t> row_counts;
  std::vector<std::string> warnings;
  std::string tool_version;
  std::string generated_at;  // UTC; honours SOURCE_DATE_EPOCH

  std::string to_json() const;
};

/// Full pipeline into config.out_dir. Files are staged in a scratch directory
/// and moved into place only when every stage succeeded, so a failed run
/// leaves no partial outputs behind. Writes manifest.json.
RunManifest run_pipeline(const RunConfig& config);

/// Runs the stages needed for `stage` and writes only that stage's files into
/// config.out_dir, staged the same way as run_pipeline. Returns the
/// degenerate-statistics warnings collected on the way.
std::vector<std::string> run_stage(const RunConfig& config, Stage stage);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// "***" for p < 0.01, "**" for p < 0.05, otherwise empty.
std::string_view significance_stars(double p_value);

}  // namespace fss
