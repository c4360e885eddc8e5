// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>

#include "fss/error.hpp"
#include "fss/pipeline.hpp"
#include "fss/synthetic.hpp"
#include "support/test_support.hpp"

using namespace fss;
using namespace fss::test;
namespace fs = std::filesystem;

namespace {

void write_two_researchers(const fs::path& dir) {
  write_file(dir / "fields.csv", "field_code,discipline_area,byline_convention\nF1,Area,alphabetical\n");
  write_file(dir / "researchers.csv",
             "researcher_id,gender,rank,field_code,years_active,affiliation_id\n"
             "a,F,assistant,F1,5,U\nb,M,full,F1,5,U\n");
  write_file(dir / "wages.csv", "rank,avg_yearly_wage\nassistant,1\nfull,2\n");
  write_file(dir / "publications.csv", "publication_id,year,citations,subject_categories\np1,2007,4,C\np2,2008,2,C\n");
  write_file(dir / "bylines.csv",
             "publication_id,slot_index,researcher_id,affiliation_id\np1,0,a,U\np1,1,b,U\np2,0,b,U\n");
}

RunConfig config_for(const fs::path& corpus, const fs::path& out) {
  RunConfig c;
  c.corpus_dir = corpus;
  c.out_dir = out;
  c.eligibility.min_per_gender = 1;
  return c;
}

std::vector<std::string> listing(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  const std::string cmd = std::string("'") + FSS_CLI_PATH + "' " + args;
  if (!output) return WEXITSTATUS(std::system((cmd + " >/dev/null 2>&1").c_str()));
  std::string text;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
  *output = text;
  return WEXITSTATUS(pclose(pipe));
}

struct SyntheticCorpus {
  TempDir dir{"synthetic"};
  SyntheticCorpus() {
    SyntheticSpec spec;
    spec.fields = 3;
    spec.researchers_per_field = 24;
    spec.seed = 4;
    write_corpus(make_synthetic_corpus(spec), dir.path());
  }
};

}  // namespace

TEST_CASE("minimal two-researcher run produces the full output set") {
  TempDir corpus("two"), out("two-out");
  write_two_researchers(corpus.path());
  setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  const auto m = run_pipeline(config_for(corpus.path(), out.path()));
  CHECK(count_data_lines(out / "fss.csv") == 2);
  for (Stage s : {Stage::ingest, Stage::shares, Stage::baselines, Stage::compute, Stage::rank, Stage::stats,
                  Stage::report}) {
    for (const auto& f : stage_outputs(s)) CHECK_MESSAGE(fs::exists(out / f), f);
  }
  CHECK(fs::exists(out / "manifest.json"));
  CHECK(m.generated_at == "2023-11-14T22:13:20Z");
  CHECK(m.row_counts.at("fss_rows") == 2);
  CHECK(m.input_digests.at("researchers.csv") == sha256_file(corpus / "researchers.csv"));
  CHECK(m.output_digests.at("fss.csv") == sha256_file(out / "fss.csv"));
  const auto names = listing(out.path());
  CHECK(std::none_of(names.begin(), names.end(), [](const std::string& n) { return n.rfind(".fss", 0) == 0; }));

  // one publication per cell, so every impact is 1: a = 0.5 / 5, b = (0.5 + 1) / (2 * 5)
  const auto fss = csv::read(out / "fss.csv");
  CHECK(fss.rows[0].cells[3] == "0.1");
  CHECK(fss.rows[1].cells[3] == "0.15");
}

TEST_CASE("sha256 of a known string") {
  TempDir dir("sha");
  write_file(dir / "abc", "abc");
  CHECK(sha256_file(dir / "abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("identical runs are byte-identical") {
  SyntheticCorpus corpus;
  TempDir a("det-a"), b("det-b");
  setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  auto ca = config_for(corpus.dir.path(), a.path());
  auto cb = config_for(corpus.dir.path(), b.path());
  run_pipeline(ca);
  run_pipeline(cb);
  const auto names = listing(a.path());
  REQUIRE(names == listing(b.path()));
  for (const auto& n : names) {
    if (n == "manifest.json") continue;  // embeds the out-dir-independent config only
    CHECK_MESSAGE(read_file(a / n) == read_file(b / n), n);
  }
  CHECK(read_file(a / "manifest.json") == read_file(b / "manifest.json"));
}

TEST_CASE("individual stages reproduce the full run") {
  SyntheticCorpus corpus;
  TempDir full("full"), staged("staged");
  const auto cf = config_for(corpus.dir.path(), full.path());
  const auto cs = config_for(corpus.dir.path(), staged.path());
  run_pipeline(cf);
  for (Stage s : {Stage::ingest, Stage::shares, Stage::baselines, Stage::compute, Stage::rank, Stage::stats,
                  Stage::report}) {
    run_stage(cs, s);
  }
  auto names = listing(full.path());
  names.erase(std::remove(names.begin(), names.end(), "manifest.json"), names.end());
  CHECK(names == listing(staged.path()));
  for (const auto& n : names) CHECK_MESSAGE(read_file(full / n) == read_file(staged / n), n);

  SUBCASE("subcommands through the CLI") {
    TempDir cli("cli");
    const std::string common = "--corpus-dir '" + corpus.dir.path().string() + "' --out-dir '" + cli.path().string() +
                               "' --min-per-gender 1";
    for (const char* sub : {"ingest", "shares", "baselines", "compute", "rank", "stats", "report"}) {
      CHECK(run_cli(std::string(sub) + " " + common) == 0);
    }
    for (const auto& n : names) CHECK_MESSAGE(read_file(full / n) == read_file(cli / n), n);
  }
}

TEST_CASE("no eligible fields") {
  TempDir corpus("none"), out("none-out");
  write_two_researchers(corpus.path());
  std::string text;
  const std::string args =
      "--corpus-dir '" + corpus.path().string() + "' --out-dir '" + out.path().string() + "' --min-per-gender 30 ";
  CHECK(run_cli(args + "run") == 0);
  CHECK(read_file(out / "summary.txt").find("no eligible fields") != std::string::npos);
  CHECK(count_data_lines(out / "rank_entries.csv") == 0);
  CHECK(count_data_lines(out / "fss.csv") == 2);
  CHECK(run_cli("report --out-dir '" + out.path().string() + "'", &text) == 0);
  CHECK(text.find("no eligible fields") != std::string::npos);
}

TEST_CASE("summary stars follow the legend") {
  CHECK(significance_stars(0.009) == "***");
  CHECK(significance_stars(0.01) == "**");
  CHECK(significance_stars(0.049) == "**");
  CHECK(significance_stars(0.05) == "");
  CHECK(significance_stars(0.5) == "");

  TempDir dir("stars");
  write_file(dir / "eligibility.csv",
             "field_code,members,female,male,productive,productive_share,share_ok,gender_ok,eligible\n"
             "F1,60,30,30,50,0.833333,true,true,true\n");
  write_file(dir / "incidence_by_area.csv", "group,headcount,female,male,female_share\nArea,60,30,30,0.5\n");
  write_file(dir / "stats_by_area.csv",
             "group,discipline_area,n_M,n_F,pct_zero_M,pct_zero_F,mean_M,mean_F,median_M,median_F,max_M,max_F,"
             "stdev_M,stdev_F,iqr_M,iqr_F,z_unproductive,p_unproductive,mean_test,mean_statistic,p_mean\n"
             "Area,Area,30,30,10,20,2,1,1.5,0.8,9,4,1.2,0.9,1,0.7,-1.1,0.03,t_independent,3.2,0.004\n");
  write_file(dir / "pbc_by_field.csv",
             "discipline_area,fields,pct_significant,min_r,max_r,r_pb,p,stars\nArea,1,100,0.3,0.3,0.3,0.02,**\n"
             "Total,1,100,0.3,0.3,0.3,0.02,**\n");
  write_file(dir / "shift_summary_by_area.csv",
             "group,gender,count,mean,median,stdev,min,max\nArea,M,30,-3,-2,4,-10,5\nArea,F,30,3,2,4,-5,10\n");
  write_file(dir / "field_classes.csv",
             "field_code,discipline_area,gender,mean_shift,class\nF1,Area,M,-3,Cl-3\nF1,Area,F,3,Cl-4\n");
  const auto text = render_summary(dir.path());
  CHECK(text.find("p 0.004 ***") != std::string::npos);
  CHECK(text.find("p 0.03 **") != std::string::npos);
  CHECK(text.find("point-biserial r: 0.3 **") != std::string::npos);
  CHECK(text.find("classes M: Cl-3=1") != std::string::npos);
  CHECK(text.find("** p-value < 0.05; *** p-value < 0.01") != std::string::npos);

  fs::remove(dir / "pbc_by_field.csv");
  CHECK_THROWS_WITH_AS(render_summary(dir.path()), doctest::Contains("pbc_by_field.csv"), ValidationError);
}

TEST_CASE("a failing stage names itself and leaves no partial outputs") {
  TempDir corpus("fail"), out("fail-out");
  write_two_researchers(corpus.path());
  write_file(corpus / "weights.txt", "shared_end = 0.9\n");
  auto c = config_for(corpus.path(), out.path());
  c.weights_file = corpus / "weights.txt";
  CHECK_THROWS_WITH_AS(run_pipeline(c), doctest::Contains("stage shares"), ValidationError);
  CHECK(listing(out.path()).empty());
}

TEST_CASE("degenerate statistics become errors under strict mode") {
  TempDir out("strict");
  auto c = config_for(fixture("small"), out.path());
  CHECK_FALSE(run_pipeline(c).warnings.empty());
  TempDir out2("strict2");
  c.out_dir = out2.path();
  c.strict = true;
  CHECK_THROWS_AS(run_pipeline(c), DegenerateError);
  CHECK(listing(out2.path()).empty());
}

TEST_CASE("configuration validation") {
  RunConfig c;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.corpus_dir = "x";
  c.validate();
  c.eligibility.min_productive_share = 1.5;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.eligibility.min_productive_share = 0.5;
  c.kde_bandwidth = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("exit codes") {
  const std::string small = "--corpus-dir '" + fixture("small").string() + "' ";
  TempDir out("exit");
  const std::string to = "--out-dir '" + out.path().string() + "' ";
  CHECK(run_cli(small + to + "ingest") == 0);
  CHECK(run_cli(small + to + "--min-per-gender 1 run") == 0);
  CHECK(run_cli(small + to + "--min-per-gender 1 --strict run") == 3);
  CHECK(run_cli("--corpus-dir /nonexistent/dir " + to + "run") == 1);
  CHECK(run_cli(small + to + "--window 2010:2006 run") == 1);
  CHECK(run_cli(small + to + "--precision 3 run") == 1);
  CHECK(run_cli(small + to) == 1);  // no subcommand

  std::string text;
  CHECK(run_cli(small + to + "ingest", &text) == 0);
  CHECK(text.find("researchers: 4") != std::string::npos);
  CHECK(text.find("publications: 4") != std::string::npos);

  write_file(out / "cfg.txt", "min-per-gender = 1\nprecision = full\n");
  TempDir cfg_out("exit-cfg");
  CHECK(run_cli(small + "--config '" + (out / "cfg.txt").string() + "' --out-dir '" + cfg_out.path().string() +
                "' compute") == 0);
  CHECK(csv::read(cfg_out / "fss.csv").rows[2].cells[3] == "0.1111111111111111");
}

TEST_CASE("data inconsistency is a distinct error category") {
  CitationBaseline empty;
  const auto p = publication("p", 2007, 3, {"C"}, {{"a", "U"}});
  CHECK_THROWS_AS(normalized_impact(p, empty), DataInconsistencyError);
  static_assert(!std::is_base_of_v<ValidationError, DataInconsistencyError>);
}

TEST_CASE("golden fixture reproduces the committed outputs") {
  const auto golden = fixture("golden");
  TempDir out("golden");
  auto c = config_for(golden / "corpus", out.path());
  c.eligibility.min_per_gender = 10;
  const auto m = run_pipeline(c);
  const auto expected = listing(golden / "expected");
  auto produced = listing(out.path());
  produced.erase(std::remove(produced.begin(), produced.end(), "manifest.json"), produced.end());
  CHECK(produced == expected);
  for (const auto& n : expected) {
    CHECK_MESSAGE(read_file(out / n) == read_file(golden / "expected" / n), n);
    CHECK(m.output_digests.at(n) == sha256_file(golden / "expected" / n));
  }

  std::string text;
  CHECK(run_cli("report --out-dir '" + out.path().string() + "'", &text) == 0);
  CHECK(text == read_file(golden / "expected" / "summary.txt"));
}
