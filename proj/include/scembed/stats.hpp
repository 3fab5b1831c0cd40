// Copyright 2026 The scembed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace scembed::stats {

/// Fractional ranks (1-based); tied values share the mean of their ranks.
std::vector<double> midranks(std::span<const double> x);

/// Pearson correlation of mid-ranks. Throws InvalidInput on length
/// mismatch, fewer than 2 points, or a constant input.
double spearman(std::span<const double> x, std::span<const double> y);

struct Correlation {
  double r = 0.0;
  double p_value = 1.0;  // two-sided
  std::size_t n = 0;
};

/// Product-moment r with a two-sided p from t = r sqrt((n-2)/(1-r^2)) on
/// n-2 degrees of freedom. Needs n >= 3 and non-constant inputs.
Correlation pearson(std::span<const double> x, std::span<const double> y);

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double pearson_r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// Least squares of log10(y) on x; r and p are computed on (x, log10 y).
/// Throws InvalidInput when y <= 0 anywhere or n < 3.
RegressionFit loglinear_fit(std::span<const double> x, std::span<const double> y);

struct KsResult {
  double statistic = 0.0;  // sup |ECDF_a - ECDF_b|
  double p_value = 1.0;    // asymptotic
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

/// Two-sample Kolmogorov-Smirnov. D is exact; p uses the asymptotic
/// Kolmogorov distribution at sqrt(n1 n2 / (n1 + n2)) * D, which is only
/// approximate for small samples. D == 0 gives p = 1.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction
/// (absolute accuracy about 1e-14 over the ranges used here).
double incomplete_beta(double a, double b, double x);

/// Two-sided Student-t tail probability P(|T| >= |t|) with df degrees.
double student_t_two_sided(double t, double df);

/// Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_survival(double lambda);

}  // namespace scembed::stats
