// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fss/error.hpp"
#include "fss/impact.hpp"
#include "support/test_support.hpp"

using namespace fss;
using namespace fss::test;

namespace {

Corpus with_publications(std::vector<Publication> pubs) {
  for (auto& p : pubs) p.byline = publication("", 0, 0, {}, {{"a", "U"}}).byline;
  return Corpus::build({researcher("a", Gender::female, "F")}, {Field{"F", "A", BylineConvention::alphabetical}},
                       std::move(pubs), default_wages(), {});
}

Publication pub(std::string id, int year, std::int64_t cites, std::vector<std::string> cats) {
  return publication(std::move(id), year, cites, std::move(cats), {});
}

}  // namespace

TEST_CASE("baselines average cited publications only") {
  const auto c = with_publications({pub("p1", 2007, 3, {"C"}), pub("p2", 2007, 0, {"C"}), pub("p3", 2007, 5, {"C"}),
                                    pub("p4", 2007, 0, {"C"}), pub("p5", 2007, 4, {"C"}),
                                    pub("q1", 2008, 0, {"D"}), pub("q2", 2008, 0, {"D"})});
  const auto b = compute_baselines(c);
  REQUIRE(b.find(2007, "C") != nullptr);
  CHECK(b.find(2007, "C")->mean == 4.0);
  CHECK(b.find(2007, "C")->cited_count == 3);
  CHECK(b.find(2008, "D") == nullptr);
  CHECK(b.cells().size() == 1);
}

TEST_CASE("two-year, two-category fixture") {
  // hand computation:
  //   (2007,A): cited {2, 6}        -> 4
  //   (2007,B): cited {6, 9}        -> 7.5
  //   (2008,A): cited {1}           -> 1
  //   (2008,B): cited {10, 20, 30}  -> 20
  const auto c = with_publications({pub("p1", 2007, 2, {"A"}), pub("p2", 2007, 6, {"A", "B"}),
                                    pub("p3", 2007, 9, {"B"}), pub("p4", 2007, 0, {"A", "B"}),
                                    pub("p5", 2008, 1, {"A"}), pub("p6", 2008, 10, {"B"}),
                                    pub("p7", 2008, 20, {"B"}), pub("p8", 2008, 30, {"B"})});
  const auto b = compute_baselines(c);
  CHECK(b.cells().size() == 4);
  CHECK(b.find(2007, "A")->mean == 4.0);
  CHECK(b.find(2007, "B")->mean == 7.5);
  CHECK(b.find(2008, "A")->mean == 1.0);
  CHECK(b.find(2008, "B")->mean == 20.0);
  // p2: mean(6/4, 6/7.5) = mean(1.5, 0.8)
  CHECK(normalized_impact(c.publications()[1], b) == doctest::Approx(1.15).epsilon(1e-14));
}

TEST_CASE("normalized impact examples") {
  CitationBaseline b;
  b.set({2007, "X"}, {5.0, 0, std::nullopt});
  b.set({2007, "Y"}, {3.0, 0, std::nullopt});
  b.set({2007, "Z"}, {6.0, 0, std::nullopt});
  CHECK(normalized_impact(pub("p", 2007, 10, {"X"}), b) == 2.0);
  CHECK(normalized_impact(pub("p", 2007, 0, {"X", "Y"}), b) == 0.0);
  CHECK(normalized_impact(pub("p", 2007, 6, {"Y", "Z"}), b) == 1.5);
  CHECK(normalized_impact(pub("p", 2007, 6, {"Y", "missing"}), b) == 2.0);
  CHECK_THROWS_AS(normalized_impact(pub("p", 2007, 6, {"missing"}), b), DataInconsistencyError);
  CHECK_THROWS_AS(b.set({2007, "W"}, {0.0, 0, std::nullopt}), ValidationError);
}

TEST_CASE("overrides replace matching cells") {
  TempDir dir("override");
  write_file(dir / "o.csv", "year,subject_category,mean_cited_citations\n2007,C,8\n2009,New,2.5\n");
  const auto c = with_publications({pub("p1", 2007, 4, {"C"}), pub("p2", 2008, 4, {"C"})});
  auto b = compute_baselines(c);
  b.apply(read_baseline_override(dir / "o.csv"));
  CHECK(b.find(2007, "C")->mean == 8.0);
  CHECK(b.find(2008, "C")->mean == 4.0);
  CHECK(b.find(2009, "New")->mean == 2.5);
  CHECK(normalized_impact(c.publications()[0], b) == 0.5);

  write_file(dir / "bad.csv", "year,subject_category,mean_cited_citations\n2007,C,-1\n");
  CHECK_THROWS_AS(read_baseline_override(dir / "bad.csv"), ValidationError);
}

TEST_CASE("impact is zero exactly for uncited publications") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> cites(0, 6);
  std::vector<Publication> pubs;
  for (int i = 0; i < 200; ++i) pubs.push_back(pub("p" + std::to_string(1000 + i), 2006 + i % 5, cites(rng), {"C"}));
  const auto c = with_publications(pubs);
  const auto b = compute_baselines(c);
  for (const auto& p : c.publications()) CHECK((normalized_impact(p, b) == 0.0) == (p.citations == 0));
}

TEST_CASE("cell scaling and mean-one properties") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> cites(0, 50);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Publication> pubs;
    for (int i = 0; i < 60; ++i) {
      pubs.push_back(pub("p" + std::to_string(100 + i), 2006 + i % 3, cites(rng), {i % 2 ? "A" : "B"}));
    }
    const auto c = with_publications(pubs);
    const auto b = compute_baselines(c);

    // mean over cited publications of each cell is 1
    std::map<CellKey, std::pair<double, int>> acc;
    for (const auto& p : c.publications()) {
      if (p.citations == 0) continue;
      auto& [s, n] = acc[{p.year, p.subject_categories[0]}];
      s += normalized_impact(p, b);
      ++n;
    }
    for (const auto& [key, sn] : acc) CHECK(std::abs(sn.first / sn.second - 1.0) < 1e-9);

    const int k = 2 + trial % 5;
    auto scaled = pubs;
    for (auto& p : scaled) {
      if (p.year == 2007 && p.subject_categories[0] == "A") p.citations *= k;
    }
    const auto cs = with_publications(scaled);
    const auto bs = compute_baselines(cs);
    if (const auto* cell = b.find(2007, "A")) CHECK(bs.find(2007, "A")->mean == doctest::Approx(cell->mean * k));
    for (std::size_t i = 0; i < pubs.size(); ++i) {
      CHECK(normalized_impact(c.publications()[i], b) == normalized_impact(cs.publications()[i], bs));
    }
  }
}
