// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

// fss-rank: fractional scientific strength and gender rank-shift analysis.
//
// Exit codes: 0 success, 1 validation error, 2 data inconsistency,
// 3 degenerate statistics under --strict.

#include <CLI11.hpp>
#include <iostream>

#include "fss/error.hpp"
#include "fss/pipeline.hpp"
#include "fss/synthetic.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kInconsistent = 2, kDegenerate = 3 };

void print_ingest(const fss::RunConfig& config) {
  const auto a = fss::analyze(config, fss::Stage::ingest);
  const auto& r = a.load_report;
  std::cout << "researchers: " << r.researchers << "\n"
            << "fields: " << r.fields << "\n"
            << "publications: " << r.publications << "\n"
            << "publications outside window: " << r.publications_outside_window << "\n"
            << "byline rows: " << r.byline_rows << "\n"
            << "wage rows: " << r.wage_rows << "\n"
            << "eligible fields: " << a.eligible.size() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional scientific strength and gender-stratified rank shifts"};
  app.set_version_flag("--version", std::string(fss::kToolVersion));
  app.set_config("--config", "", "key=value file supplying option values");
  app.require_subcommand(1);
  app.fallthrough();

  fss::RunConfig config;
  std::string window = "2006:2010";
  std::string membership = "all";
  std::string median_test = "t";
  std::string stratified = "merged";
  std::string precision = "6";
  std::string weights_file;
  std::string override_file;
  double kde_bandwidth = 0.0;

  app.add_option("--corpus-dir", config.corpus_dir, "Directory holding the five input CSV files");
  app.add_option("--out-dir", config.out_dir, "Output directory")->capture_default_str();
  app.add_option("--window", window, "Observation window A:B")->capture_default_str();
  app.add_option("--min-share", config.eligibility.min_productive_share,
                 "Minimum share of members with a publication")
      ->capture_default_str();
  app.add_option("--min-per-gender", config.eligibility.min_per_gender, "Minimum headcount of each gender")
      ->capture_default_str();
  app.add_option("--membership", membership, "Members counted by the eligibility filters")
      ->check(CLI::IsMember({"all", "full_window"}))
      ->capture_default_str();
  app.add_option("--weights-file", weights_file, "key=value credit weights");
  app.add_option("--override", override_file, "baselines.csv overriding computed citation baselines");
  app.add_option("--kde-bandwidth", kde_bandwidth, "Fixed KDE bandwidth in log units (default: Silverman)");
  app.add_option("--kde-grid", config.kde_grid, "KDE grid points")->capture_default_str();
  app.add_option("--median-test", median_test, "Gender test on FSS level: t (Student) or mann-whitney")
      ->check(CLI::IsMember({"t", "mann-whitney"}))
      ->capture_default_str();
  app.add_option("--stratified", stratified, "Gender-stratified ranking: merged or within-gender")
      ->check(CLI::IsMember({"merged", "within-gender"}))
      ->capture_default_str();
  app.add_option("--precision", precision, "Numeric output: 6 significant digits or full")
      ->check(CLI::IsMember({"6", "full"}))
      ->capture_default_str();
  app.add_flag("--strict", config.strict, "Fail (exit 3) on degenerate statistics");
  app.add_option("--seed", config.seed, "Seed for synthetic data")->capture_default_str();

  auto* ingest = app.add_subcommand("ingest", "Validate the corpus, report row counts and field eligibility");
  auto* shares = app.add_subcommand("shares", "Fractional author shares per byline slot");
  auto* baselines = app.add_subcommand("baselines", "Citation baselines per (year, subject category)");
  auto* compute = app.add_subcommand("compute", "FSS for every researcher");
  auto* rank = app.add_subcommand("rank", "Pooled vs gender-stratified percentile ranks and shifts");
  auto* stats = app.add_subcommand("stats", "Descriptive statistics, tests, correlations and densities");
  auto* report = app.add_subcommand("report", "Plain-text summary of outputs in --out-dir");
  auto* run = app.add_subcommand("run", "Full pipeline with manifest");

  fss::SyntheticSpec synth_spec;
  auto* synth = app.add_subcommand("synth", "Write a seeded synthetic corpus to --out-dir");
  synth->add_option("--fields", synth_spec.fields)->capture_default_str();
  synth->add_option("--researchers", synth_spec.researchers_per_field, "Researchers per field")
      ->capture_default_str();
  synth->add_option("--female-share", synth_spec.female_share)->capture_default_str();
  synth->add_option("--male-rate", synth_spec.male_publication_rate)->capture_default_str();
  synth->add_option("--female-rate", synth_spec.female_publication_rate)->capture_default_str();
  synth->add_option("--male-citations", synth_spec.male_citation_mean)->capture_default_str();
  synth->add_option("--female-citations", synth_spec.female_citation_mean)->capture_default_str();
  synth->add_option("--unproductive-share", synth_spec.unproductive_share)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    config.window = fss::YearWindow::parse(window);
    config.eligibility.membership = membership == "all" ? fss::Membership::all : fss::Membership::full_window;
    config.mean_test = median_test == "t" ? fss::TestKind::t_independent : fss::TestKind::mann_whitney_u;
    config.ranking =
        stratified == "merged" ? fss::StratifiedRanking::merged : fss::StratifiedRanking::within_gender;
    config.precision = precision == "full" ? fss::csv::Precision::full : fss::csv::Precision::six_significant;
    if (!weights_file.empty()) config.weights_file = weights_file;
    if (!override_file.empty()) config.baseline_override = override_file;
    if (app.count("--kde-bandwidth")) config.kde_bandwidth = kde_bandwidth;

    if (*synth) {
      synth_spec.window = config.window;
      synth_spec.seed = config.seed;
      fss::write_corpus(fss::make_synthetic_corpus(synth_spec), config.out_dir);
      return kOk;
    }
    std::vector<std::string> warnings;
    const std::pair<CLI::App*, fss::Stage> stages[] = {
        {ingest, fss::Stage::ingest}, {shares, fss::Stage::shares}, {baselines, fss::Stage::baselines},
        {compute, fss::Stage::compute}, {rank, fss::Stage::rank}, {stats, fss::Stage::stats}};
    for (const auto& [sub, stage] : stages) {
      if (!*sub) continue;
      if (stage == fss::Stage::ingest) print_ingest(config);
      warnings = fss::run_stage(config, stage);
    }
    if (*report) {
      if (config.corpus_dir.empty()) config.corpus_dir = ".";  // the report reads outputs only
      fss::run_stage(config, fss::Stage::report);
      std::cout << fss::render_summary(config.out_dir);
    } else if (*run) {
      warnings = fss::run_pipeline(config).warnings;
    }
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  } catch (const fss::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const fss::DataInconsistencyError& e) {
    std::cerr << "data inconsistency: " << e.what() << "\n";
    return kInconsistent;
  } catch (const fss::DegenerateError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kOk;
}
