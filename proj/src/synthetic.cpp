// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#include "fss/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace fss {

namespace {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  // Knuth's multiplication method; fine for the small means used here.
  int poisson(double mean) {
    const double limit = std::exp(-mean);
    int k = 0;
    double p = uniform();
    while (p > limit) {
      ++k;
      p *= uniform();
    }
    return k;
  }

  // Geometric on {0, 1, ...} with the given mean.
  std::int64_t geometric(double mean) {
    const double q = mean / (1.0 + mean);
    const double u = 1.0 - uniform();
    return static_cast<std::int64_t>(std::floor(std::log(u) / std::log(q)));
  }

 private:
  std::uint64_t state_;
};

std::string padded(const char* prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, n);
  return buf;
}

}  // namespace

Corpus make_synthetic_corpus(const SyntheticSpec& spec) {
  SplitMix64 rng(spec.seed);
  const char* ranks[] = {"assistant", "associate", "full"};
  const int window_len = spec.window.length();

  std::vector<Field> fields;
  std::vector<Researcher> researchers;
  std::vector<Publication> publications;

  for (std::size_t f = 0; f < spec.fields; ++f) {
    Field field;
    field.code = padded("FLD/", f + 1, 2);
    field.discipline_area = padded("AREA-", f / 2 + 1, 2);
    field.convention = f % 2 == 1 ? BylineConvention::contribution_ordered : BylineConvention::alphabetical;
    fields.push_back(field);

    const std::string cat_a = padded("CAT", 2 * f + 1, 3);
    const std::string cat_b = padded("CAT", 2 * f + 2, 3);
    const auto n_female =
        static_cast<std::size_t>(std::lround(spec.female_share * static_cast<double>(spec.researchers_per_field)));

    for (std::size_t i = 0; i < spec.researchers_per_field; ++i) {
      Researcher r;
      r.id = padded("R", researchers.size() + 1, 5);
      r.gender = i < n_female ? Gender::female : Gender::male;
      r.rank = ranks[rng.below(3)];
      r.field_code = field.code;
      r.years_active = rng.uniform() < 0.75 ? window_len : 1 + static_cast<int>(rng.below(window_len));
      r.affiliation_id = padded("U", rng.below(8) + 1, 2);

      const bool female = r.gender == Gender::female;
      const double rate = (female ? spec.female_publication_rate : spec.male_publication_rate) *
                          r.years_active / window_len;
      const double cites = female ? spec.female_citation_mean : spec.male_citation_mean;
      const int n_pubs = rng.uniform() < spec.unproductive_share ? 0 : rng.poisson(rate);

      for (int k = 0; k < n_pubs; ++k) {
        Publication p;
        p.id = padded("P", publications.size() + 1, 6);
        p.year = spec.window.first + static_cast<int>(rng.below(static_cast<std::size_t>(window_len)));
        p.citations = rng.uniform() < 0.15 ? 0 : rng.geometric(cites);
        p.subject_categories.push_back(rng.uniform() < 0.5 ? cat_a : cat_b);
        if (rng.uniform() < spec.multi_category_share) {
          p.subject_categories.push_back(p.subject_categories.front() == cat_a ? cat_b : cat_a);
        }

        const std::size_t authors = 1 + rng.below(7);
        const std::size_t own_slot = rng.below(authors);
        const bool shared_ends = rng.uniform() < 0.5;
        for (std::size_t s = 0; s < authors; ++s) {
          BylineSlot slot;
          if (s == own_slot) {
            slot.researcher_id = r.id;
            slot.affiliation_id = r.affiliation_id;
          } else {
            slot.affiliation_id = padded("X", rng.below(20) + 1, 2);
          }
          p.byline.push_back(std::move(slot));
        }
        if (authors > 1 && shared_ends) p.byline.back().affiliation_id = p.byline.front().affiliation_id;
        publications.push_back(std::move(p));
      }
      researchers.push_back(std::move(r));
    }
  }

  // Occasional co-authorship between two in-corpus researchers of the same field.
  for (auto& p : publications) {
    if (p.byline.size() < 2 || rng.uniform() >= 0.1) continue;
    const auto& owner = *std::find_if(p.byline.begin(), p.byline.end(),
                                      [](const BylineSlot& s) { return !s.external(); });
    const std::string owner_id = *owner.researcher_id;
    const std::size_t first = (std::stoul(owner_id.substr(1)) - 1) / spec.researchers_per_field *
                              spec.researchers_per_field;
    const auto& partner = researchers[first + rng.below(spec.researchers_per_field)];
    if (partner.id == owner_id) continue;
    for (auto& slot : p.byline) {
      if (slot.external()) {
        slot.researcher_id = partner.id;
        slot.affiliation_id = partner.affiliation_id;
        break;
      }
    }
  }

  WageTable wages({{"assistant", 38000.0}, {"associate", 52000.0}, {"full", 75000.0}});
  return Corpus::build(std::move(researchers), std::move(fields), std::move(publications),
                       std::move(wages), spec.window);
}

}  // namespace fss
