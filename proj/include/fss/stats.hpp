// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 fss-rank Contributors

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fss/corpus.hpp"

namespace fss {

// ---------------------------------------------------------------------------
// Distribution tails

/// Two-sided tail probability of a standard normal: P(|Z| >= |z|).
double normal_two_sided_p(double z);

/// Regularized incomplete beta I_x(a, b), evaluated with a continued fraction.
double incomplete_beta(double a, double b, double x);

/// Two-sided tail probability of Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

// ---------------------------------------------------------------------------
// Descriptive statistics

double mean(std::span<const double> xs);
/// Unbiased (n - 1) variance; 0 for a single value.
double sample_variance(std::span<const double> xs);
double sample_stdev(std::span<const double> xs);
double median(std::span<const double> xs);
/// Linear-interpolation quantile (h = (n - 1) p) over an unsorted sample.
double quantile(std::span<const double> xs, double p);

struct Descriptive {
  std::size_t count = 0;
  double pct_zero = 0.0;  // percentage (0-100) of values exactly 0
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  double stdev = 0.0;  // sample (n - 1)
  double iqr = 0.0;
};

/// Throws DegenerateError on an empty sample.
Descriptive descriptive_stats(std::span<const double> sample);

// ---------------------------------------------------------------------------
// Hypothesis tests

enum class TestKind { z_proportions, t_independent, mann_whitney_u };

std::string_view to_string(TestKind k);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;  // two-sided
  TestKind kind = TestKind::t_independent;
};

/// Pooled two-proportion z-test of k1/n1 against k2/n2.
TestResult z_test_proportions(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2);

/// Student's pooled-variance t-test, df = na + nb - 2.
TestResult t_test_independent(std::span<const double> a, std::span<const double> b);

/// Mann-Whitney U with midranks and tie-corrected normal approximation. The
/// statistic reported is the standardized z of U for sample `a`.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

struct PointBiserialResult {
  double r_pb = 0.0;
  std::size_t n_male = 0;
  std::size_t n_female = 0;
  std::size_t n = 0;
  double t_stat = 0.0;
  double p_value = 1.0;
};

/// (mean_M - mean_F) / SD * sqrt(n_M n_F / (N (N - 1))) with SD the sample
/// standard deviation of the whole distribution; positive when men score
/// higher. Significance uses t = r sqrt((N - 2) / (1 - r^2)) on N - 2 df.
PointBiserialResult point_biserial(std::span<const double> values, std::span<const Gender> genders);

// ---------------------------------------------------------------------------
// Density estimation

struct DensityCurve {
  std::vector<double> grid;  // ascending, in log(value) units
  std::vector<double> density;
  double bandwidth = 0.0;
};

/// Epanechnikov kernel 0.75 (1 - u^2) on |u| <= 1.
double epanechnikov(double u);

/// 0.9 * min(sd, IQR / 1.34) * n^(-1/5); falls back to sd when IQR is 0.
/// Throws DegenerateError when the sample has no spread.
double silverman_bandwidth(std::span<const double> xs);

/// Density of log(values) on `grid_points` equally spaced points covering
/// [min - h, max + h]. Values must be strictly positive.
DensityCurve epanechnikov_kde(std::span<const double> values, std::size_t grid_points = 512,
                              std::optional<double> bandwidth = std::nullopt);

/// Trapezoid rule over paired samples.
double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace fss
