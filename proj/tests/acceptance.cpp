// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include "fss/pipeline.hpp"
#include "fss/synthetic.hpp"
#include "support/test_support.hpp"

using namespace fss;
using namespace fss::test;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.ok) {
    o.ok = false;
    o.detail = what;
  }
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Percentile vectors of every ranked field, concatenated in field order.
std::pair<std::vector<double>, std::vector<double>> percentiles(const Corpus& c) {
  const auto shares = compute_all_shares(c);
  const auto scores = compute_all_fss(c, shares, compute_baselines(c), c.wages());
  std::vector<double> pooled, gender;
  for (const auto& [field, list] : scores) {
    const auto ranked = rank_shifts(distance_ratios(list));
    for (const auto& e : ranked.entries) {
      pooled.push_back(e.percentile_pooled);
      gender.push_back(e.percentile_gender);
    }
  }
  return {pooled, gender};
}

Outcome worked_example() {
  Outcome o;
  const std::vector<FssScore> scores = {{"female", "F", Gender::female, 2.0, true},
                                        {"male", "F", Gender::male, 2.2, true}};
  const auto ranked = rank_shifts(distance_ratios(scores, FieldMeans{2.0, 1.8, 2.2}));
  const auto& f = ranked.entries[0];
  const auto& m = ranked.entries[1];
  require(o, std::abs(f.ratio_pooled - 1.0) < 1e-9, "female ratio_pooled " + num(f.ratio_pooled));
  require(o, std::abs(m.ratio_pooled - 1.1) < 1e-9, "male ratio_pooled " + num(m.ratio_pooled));
  require(o, std::abs(f.ratio_gender - 10.0 / 9.0) < 1e-9, "female ratio_gender " + num(f.ratio_gender));
  require(o, std::abs(m.ratio_gender - 1.0) < 1e-9, "male ratio_gender " + num(m.ratio_gender));
  require(o, m.percentile_pooled > f.percentile_pooled, "pooled ranking should place the male first");
  require(o, f.percentile_gender > m.percentile_gender, "stratified ranking should place the female first");
  return o;
}

Outcome share_completeness() {
  Outcome o;
  for (std::size_t n = 1; n <= 50; ++n) {
    for (auto conv : {BylineConvention::alphabetical, BylineConvention::contribution_ordered}) {
      for (bool same_ends : {true, false}) {
        std::vector<BylineSlot> byline(n);
        for (std::size_t i = 0; i < n; ++i) byline[i].affiliation_id = "U" + std::to_string(i);
        if (same_ends) byline.back().affiliation_id = byline.front().affiliation_id;
        const auto s = fractional_shares(byline, conv).shares;
        double total = 0.0;
        for (double x : s) total += x;
        const std::string tag = "N=" + std::to_string(n) + (same_ends ? " shared" : " split");
        require(o, std::abs(total - 1.0) < 1e-12, tag + " sum " + num(total));
        if (conv != BylineConvention::contribution_ordered || n < 5) continue;
        if (same_ends) {
          require(o, s.front() == 0.40 && s.back() == 0.40, tag + " ends");
        } else {
          require(o, s[0] == 0.30 && s[n - 1] == 0.30 && s[1] == 0.15 && s[n - 2] == 0.15, tag + " positions");
        }
      }
    }
  }
  return o;
}

Outcome point_biserial_oracle() {
  Outcome o;
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> size(4, 500);
  std::lognormal_distribution<double> value(0.0, 1.2);
  std::bernoulli_distribution zero(0.15), male(0.5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = size(rng);
    std::vector<double> x(n), ind(n);
    std::vector<Gender> g(n);
    for (int i = 0; i < n; ++i) {
      const bool m = i < 2 ? true : i < 4 ? false : male(rng);
      g[i] = m ? Gender::male : Gender::female;
      ind[i] = m ? 1.0 : 0.0;
      x[i] = zero(rng) ? 0.0 : value(rng) * (m ? 1.2 : 1.0);
    }
    double mx = 0, mi = 0;
    for (int i = 0; i < n; ++i) {
      mx += x[i] / n;
      mi += ind[i] / n;
    }
    double sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
      sxy += (x[i] - mx) * (ind[i] - mi);
      sxx += (x[i] - mx) * (x[i] - mx);
      syy += (ind[i] - mi) * (ind[i] - mi);
    }
    const double r = sxy / std::sqrt(sxx * syy);
    const double t = r * std::sqrt((n - 2) / (1 - r * r));
    const boost::math::students_t dist(n - 2);
    const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));

    const auto got = point_biserial(x, g);
    require(o, std::abs(got.r_pb - r) < 1e-12, "trial " + std::to_string(trial) + " r " + num(got.r_pb - r));
    require(o, std::abs(got.p_value - p) < 1e-10, "trial " + std::to_string(trial) + " p " + num(got.p_value - p));
  }
  return o;
}

Outcome scale_invariance() {
  Outcome o;
  std::size_t cells_checked = 0;
  for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
    SyntheticSpec spec;
    spec.fields = 4;
    spec.researchers_per_field = 60;
    spec.seed = seed;
    // odd seeds: single-category publications only
    spec.multi_category_share = seed % 2 ? 0.0 : 0.2;
    const auto base = make_synthetic_corpus(spec);
    const auto [pooled, gender] = percentiles(base);

    const auto wages = Corpus::build(base.researchers(), base.fields(), base.publications(), base.wages().scaled(7.0),
                                     base.window());
    const auto [wp, wg] = percentiles(wages);
    require(o, wp == pooled && wg == gender, "wages x7 changed percentiles (seed " + std::to_string(seed) + ")");

    // every populated cell, one at a time
    std::map<CellKey, bool> cells;  // cell -> every publication in it is single-category
    for (const auto& p : base.publications()) {
      for (const auto& cat : p.subject_categories) {
        auto [it, fresh] = cells.try_emplace({p.year, cat}, true);
        it->second = it->second && p.subject_categories.size() == 1;
      }
    }
    for (const auto& [key, single] : cells) {
      if (!single) continue;
      ++cells_checked;
      auto pubs = base.publications();
      for (auto& p : pubs) {
        if (p.year == key.year && p.subject_categories[0] == key.subject_category) {
          p.citations *= 3;
        }
      }
      const auto scaled = Corpus::build(base.researchers(), base.fields(), pubs, base.wages(),
                                        base.window());
      const auto [cp, cg] = percentiles(scaled);
      require(o, cp == pooled && cg == gender,
              "citations x3 in (" + std::to_string(key.year) + ", " + key.subject_category + ") changed percentiles");
    }
  }
  require(o, cells_checked >= 20, "too few cells checked");
  if (o.ok) o.detail = std::to_string(cells_checked) + " cells scaled";
  return o;
}

Outcome class_boundaries() {
  Outcome o;
  const std::pair<double, ShiftClass> cases[] = {{-8.0, ShiftClass::cl2}, {-4.0, ShiftClass::cl3},
                                                 {0.0, ShiftClass::cl4},  {4.0, ShiftClass::cl5},
                                                 {8.0, ShiftClass::cl6},  {-8.0001, ShiftClass::cl1}};
  for (const auto& [shift, cls] : cases) {
    require(o, classify_shift(shift) == cls,
            num(shift) + " -> " + std::string(to_string(classify_shift(shift))) + ", want " +
                std::string(to_string(cls)));
  }
  return o;
}

Outcome directional_property() {
  Outcome o;
  SyntheticSpec spec;
  spec.fields = 20;
  spec.researchers_per_field = 80;
  spec.male_publication_rate = 8.0;
  spec.female_publication_rate = 4.0;
  spec.male_citation_mean = 12.0;
  spec.female_citation_mean = 8.0;
  spec.seed = 2010;
  const auto c = make_synthetic_corpus(spec);
  const auto eligible = filter_eligible_fields(c);
  require(o, eligible.size() == 20, "only " + std::to_string(eligible.size()) + " eligible fields");
  const auto scores = compute_all_fss(c, compute_all_shares(c), compute_baselines(c), c.wages(), &eligible);

  double male_sum = 0, female_sum = 0;
  int males = 0, females = 0, directional = 0, significant = 0;
  for (const auto& [field, list] : scores) {
    std::vector<double> values;
    std::vector<Gender> genders;
    for (const auto& s : list) {
      values.push_back(s.value);
      genders.push_back(s.gender);
      (s.gender == Gender::male ? male_sum : female_sum) += s.value;
      ++(s.gender == Gender::male ? males : females);
    }
    const auto classes = classify_field_shifts(rank_shifts(distance_ratios(list)).shifts);
    directional += classes.female->mean_shift > 0.0 && classes.male->mean_shift < 0.0;
    const auto pb = point_biserial(values, genders);
    significant += pb.r_pb > 0.0 && pb.p_value < 0.05;
  }
  require(o, male_sum / males > female_sum / females, "male mean FSS not above female");
  require(o, directional >= 18, std::to_string(directional) + "/20 fields with the expected shift signs");
  require(o, significant >= 16, std::to_string(significant) + "/20 fields with r_pb > 0, p < 0.05");
  if (o.ok) {
    o.detail = std::to_string(directional) + "/20 directional, " + std::to_string(significant) + "/20 significant";
  }
  return o;
}

Outcome kde_mass_and_shape() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::lognormal_distribution<double> value(-12.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> xs(100);
    for (auto& x : xs) x = value(rng);
    const auto c = epanechnikov_kde(xs);
    const double mass = trapezoid(c.grid, c.density);
    require(o, std::abs(mass - 1.0) < 1e-3, "mass " + num(mass));
    for (std::size_t i = 0; i < c.grid.size(); ++i) {
      require(o, c.density[i] >= 0.0, "negative density");
      double nearest = INFINITY;
      for (double x : xs) nearest = std::min(nearest, std::abs(c.grid[i] - std::log(x)));
      if (nearest > c.bandwidth) require(o, c.density[i] == 0.0, "density outside kernel support");
    }
    // beyond the grid the density is zero by construction
    std::vector<double> far = {c.grid.front() - 1e-9, c.grid.back() + 1e-9};
    for (double g : far) {
      double sum = 0.0;
      for (double x : xs) sum += epanechnikov((g - std::log(x)) / c.bandwidth);
      require(o, sum == 0.0, "nonzero density beyond support");
    }
  }
  return o;
}

Outcome pipeline_determinism() {
  Outcome o;
  setenv("SOURCE_DATE_EPOCH", "1767225600", 1);
  TempDir a("accept-a"), b("accept-b");
  RunConfig config;
  config.corpus_dir = fixture("golden") / "corpus";
  config.eligibility.min_per_gender = 10;
  config.out_dir = a.path();
  run_pipeline(config);
  config.out_dir = b.path();
  run_pipeline(config);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a.path())) {
    const auto name = e.path().filename().string();
    require(o, fs::exists(b / name), name + " missing from second run");
    require(o, read_file(e.path()) == read_file(b / name), name + " differs");
    ++files;
  }
  for (const auto& e : fs::directory_iterator(b.path())) {
    require(o, fs::exists(a / e.path().filename().string()), "extra file in second run");
  }
  if (o.ok) o.detail = std::to_string(files) + " files identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;  // run a single criterion when given
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "worked example ratios and ranking reversal", 1.0, worked_example},
      {2, "fractional-share completeness N=1..50", 1.0, share_completeness},
      {3, "point-biserial equals Pearson on 1000 samples", 5.0, point_biserial_oracle},
      {4, "wage and citation-cell scale invariance", 2.0, scale_invariance},
      {5, "shift class boundaries", 1.0, class_boundaries},
      {6, "directional shifts on 20x80 synthetic corpus", 10.0, directional_property},
      {7, "KDE mass and support", 1.0, kde_mass_and_shape},
      {8, "pipeline determinism on golden fixture", 5.0, pipeline_determinism},
  };
  int failures = 0, ran = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit_seconds) {
      o.ok = false;
      o.detail = "took " + num(secs) + " s";
    }
    failures += !o.ok;
    std::printf("%s [%d] %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", ran - failures, ran);
  if (ran == 0) return 1;
  return failures == 0 ? 0 : 1;
}
