// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#include "fss/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fss/error.hpp"

namespace fss {

namespace {

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  return h;
}

// I_x(a, b) given both x and y = 1 - x, so callers can pass an accurate y.
double incomplete_beta_xy(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(y);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

std::vector<double> sorted_copy(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  return v;
}

double sorted_quantile(const std::vector<double>& v, double p) {
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

double normal_two_sided_p(double z) {
  if (std::isnan(z)) return std::numeric_limits<double>::quiet_NaN();
  return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
}

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw DegenerateError("incomplete beta needs a, b > 0");
  if (x < 0.0 || x > 1.0) throw DegenerateError("incomplete beta needs 0 <= x <= 1");
  return incomplete_beta_xy(a, b, x, 1.0 - x);
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw DegenerateError("Student t needs df > 0");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const double t2 = t * t;
  // P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2)
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  return std::clamp(incomplete_beta_xy(df / 2.0, 0.5, x, y), 0.0, 1.0);
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw DegenerateError("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  const double m = mean(xs);
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double sample_stdev(std::span<const double> xs) { return std::sqrt(sample_variance(xs)); }

double median(std::span<const double> xs) { return quantile(xs, 0.5); }

double quantile(std::span<const double> xs, double p) {
  if (xs.empty()) throw DegenerateError("quantile of an empty sample");
  if (p < 0.0 || p > 1.0) throw DegenerateError("quantile level must lie in [0, 1]");
  return sorted_quantile(sorted_copy(xs), p);
}

Descriptive descriptive_stats(std::span<const double> sample) {
  if (sample.empty()) throw DegenerateError("descriptive statistics of an empty sample");
  const auto v = sorted_copy(sample);
  Descriptive d;
  d.count = v.size();
  const auto zeros = std::count(v.begin(), v.end(), 0.0);
  d.pct_zero = 100.0 * static_cast<double>(zeros) / static_cast<double>(v.size());
  d.mean = mean(v);
  d.median = sorted_quantile(v, 0.5);
  d.min = v.front();
  d.max = v.back();
  d.stdev = sample_stdev(v);
  d.iqr = sorted_quantile(v, 0.75) - sorted_quantile(v, 0.25);
  return d;
}

std::string_view to_string(TestKind k) {
  switch (k) {
    case TestKind::z_proportions: return "z_proportions";
    case TestKind::t_independent: return "t_independent";
    case TestKind::mann_whitney_u: return "mann_whitney_u";
  }
  return "?";
}

TestResult z_test_proportions(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2) {
  if (n1 == 0 || n2 == 0) throw DegenerateError("z-test needs nonempty groups");
  if (k1 > n1 || k2 > n2) throw ValidationError("z-test needs k <= n");
  const double p1 = static_cast<double>(k1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(k2) / static_cast<double>(n2);
  const double pooled = static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
  if (pooled <= 0.0 || pooled >= 1.0) {
    throw DegenerateError("z-test undefined: pooled proportion is " + std::to_string(pooled));
  }
  const double se = std::sqrt(pooled * (1.0 - pooled) *
                              (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
  TestResult r;
  r.kind = TestKind::z_proportions;
  r.statistic = (p1 - p2) / se;
  r.p_value = normal_two_sided_p(r.statistic);
  return r;
}

TestResult t_test_independent(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw DegenerateError("t-test needs at least two values per sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double df = na + nb - 2.0;
  const double pooled = ((na - 1.0) * sample_variance(a) + (nb - 1.0) * sample_variance(b)) / df;
  if (!(pooled > 0.0)) throw DegenerateError("t-test undefined: pooled variance is zero");
  TestResult r;
  r.kind = TestKind::t_independent;
  r.statistic = (mean(a) - mean(b)) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  r.p_value = student_t_two_sided_p(r.statistic, df);
  return r;
}

TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DegenerateError("Mann-Whitney U needs nonempty samples");
  struct Tagged {
    double value;
    bool from_a;
  };
  std::vector<Tagged> all;
  all.reserve(a.size() + b.size());
  for (double x : a) all.push_back({x, true});
  for (double x : b) all.push_back({x, false});
  std::sort(all.begin(), all.end(), [](const Tagged& l, const Tagged& r) { return l.value < r.value; });

  const double n = static_cast<double>(all.size());
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].value == all[i].value) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k) {
      if (all[k].from_a) rank_sum_a += midrank;
    }
    i = j;
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double u = rank_sum_a - na * (na + 1.0) / 2.0;
  const double var = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (!(var > 0.0)) throw DegenerateError("Mann-Whitney U undefined: all values tied");
  TestResult r;
  r.kind = TestKind::mann_whitney_u;
  r.statistic = (u - na * nb / 2.0) / std::sqrt(var);
  r.p_value = normal_two_sided_p(r.statistic);
  return r;
}

PointBiserialResult point_biserial(std::span<const double> values, std::span<const Gender> genders) {
  if (values.size() != genders.size()) throw DegenerateError("point-biserial: length mismatch");
  PointBiserialResult r;
  double sum_m = 0.0;
  double sum_f = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (genders[i] == Gender::male) {
      ++r.n_male;
      sum_m += values[i];
    } else {
      ++r.n_female;
      sum_f += values[i];
    }
  }
  r.n = r.n_male + r.n_female;
  if (r.n_male < 2 || r.n_female < 2) {
    throw DegenerateError("point-biserial needs at least two researchers of each gender");
  }
  const double sd = sample_stdev(values);
  if (!(sd > 0.0)) throw DegenerateError("point-biserial undefined: FSS has zero spread");

  const double nm = static_cast<double>(r.n_male);
  const double nf = static_cast<double>(r.n_female);
  const double n = static_cast<double>(r.n);
  r.r_pb = (sum_m / nm - sum_f / nf) / sd * std::sqrt(nm * nf / (n * (n - 1.0)));
  r.r_pb = std::clamp(r.r_pb, -1.0, 1.0);
  const double one_minus = 1.0 - r.r_pb * r.r_pb;
  if (one_minus <= 0.0) {
    r.t_stat = std::copysign(std::numeric_limits<double>::infinity(), r.r_pb);
    r.p_value = 0.0;
  } else {
    r.t_stat = r.r_pb * std::sqrt((n - 2.0) / one_minus);
    r.p_value = student_t_two_sided_p(r.t_stat, n - 2.0);
  }
  return r;
}

double epanechnikov(double u) { return std::abs(u) < 1.0 ? 0.75 * (1.0 - u * u) : 0.0; }

double silverman_bandwidth(std::span<const double> xs) {
  if (xs.size() < 2) throw DegenerateError("bandwidth selection needs at least two values");
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if (*lo == *hi) throw DegenerateError("all values are equal; supply a bandwidth explicitly");
  const double sd = sample_stdev(xs);
  const double iqr = quantile(xs, 0.75) - quantile(xs, 0.25);
  double spread = sd;
  if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) {
    throw DegenerateError("all values are equal; supply a bandwidth explicitly");
  }
  return 0.9 * spread * std::pow(static_cast<double>(xs.size()), -0.2);
}

DensityCurve epanechnikov_kde(std::span<const double> values, std::size_t grid_points,
                              std::optional<double> bandwidth) {
  if (grid_points < 2) throw DegenerateError("density grid needs at least two points");
  if (values.empty()) throw DegenerateError("density estimate of an empty sample");
  std::vector<double> logs;
  logs.reserve(values.size());
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError("density estimate needs strictly positive finite values");
    }
    logs.push_back(std::log(v));
  }
  if (bandwidth) {
    if (!(*bandwidth > 0.0) || !std::isfinite(*bandwidth)) {
      throw ValidationError("bandwidth must be positive");
    }
  } else if (logs.size() < 2) {
    throw DegenerateError("density estimate needs at least two values or an explicit bandwidth");
  }

  DensityCurve curve;
  curve.bandwidth = bandwidth ? *bandwidth : silverman_bandwidth(logs);
  const double h = curve.bandwidth;
  const auto [lo_it, hi_it] = std::minmax_element(logs.begin(), logs.end());
  const double lo = *lo_it - h;
  const double hi = *hi_it + h;
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  const double norm = 1.0 / (static_cast<double>(logs.size()) * h);

  curve.grid.resize(grid_points);
  curve.density.resize(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = i + 1 == grid_points ? hi : lo + step * static_cast<double>(i);
    double sum = 0.0;
    for (double xi : logs) sum += epanechnikov((x - xi) / h);
    curve.grid[i] = x;
    curve.density[i] = sum * norm;
  }
  return curve;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DegenerateError("trapezoid: length mismatch");
  double total = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) total += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return total;
}

}  // namespace fss
