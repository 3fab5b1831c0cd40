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

#include "oracles.hpp"

#include <lapacke.h>

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <stdexcept>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

Svd lapack_svd(const std::vector<double>& a, std::size_t m, std::size_t n) {
  Svd out;
  out.m = m;
  out.n = n;
  out.r = std::min(m, n);
  std::vector<double> work(a);
  out.s.resize(out.r);
  out.u.resize(m * out.r);
  out.vt.resize(out.r * n);
  std::vector<double> superb(out.r > 1 ? out.r - 1 : 1);
  const lapack_int info = LAPACKE_dgesvd(LAPACK_ROW_MAJOR, 'S', 'S', static_cast<lapack_int>(m),
                                         static_cast<lapack_int>(n), work.data(), static_cast<lapack_int>(n),
                                         out.s.data(), out.u.data(), static_cast<lapack_int>(out.r), out.vt.data(),
                                         static_cast<lapack_int>(n), superb.data());
  if (info != 0) throw std::runtime_error("dgesvd failed");
  return out;
}

double best_rank_k_error(const Svd& svd, std::size_t k) {
  double sq = 0.0;
  for (std::size_t i = k; i < svd.r; ++i) sq += svd.s[i] * svd.s[i];
  return std::sqrt(sq);
}

namespace {

mp mp_cosine_distance(const std::vector<double>& a, const std::vector<double>& b) {
  mp dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += mp(a[i]) * b[i];
    na += mp(a[i]) * a[i];
    nb += mp(b[i]) * b[i];
  }
  return 1 - dot / (sqrt(na) * sqrt(nb));
}

std::vector<mp> ranks(const std::vector<double>& x) {
  std::vector<mp> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t less = 0, equal = 0;
    for (double v : x) {
      if (v < x[i]) ++less;
      if (v == x[i]) ++equal;
    }
    r[i] = mp(less) + mp(equal + 1) / 2;
  }
  return r;
}

mp mp_pearson(const std::vector<mp>& x, const std::vector<mp>& y) {
  const std::size_t n = x.size();
  mp mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  mp sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / sqrt(sxx * syy);
}

std::vector<mp> lift(const std::vector<double>& v) { return {v.begin(), v.end()}; }

mp t_p_value(const mp& r, std::size_t n) {
  if (abs(r) >= 1) return 0;
  const mp df = n - 2;
  const mp t = r * sqrt(df / (1 - r * r));
  boost::math::students_t_distribution<mp> dist(df);
  return 2 * boost::math::cdf(boost::math::complement(dist, abs(t)));
}

}  // namespace

double silhouette_mean(const std::vector<std::vector<double>>& points, const std::vector<std::size_t>& labels) {
  const std::size_t n = points.size();
  const std::size_t n_labels = *std::max_element(labels.begin(), labels.end()) + 1;
  mp total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<mp> sum(n_labels, mp(0));
    std::vector<std::size_t> count(n_labels, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sum[labels[j]] += mp_cosine_distance(points[i], points[j]);
      ++count[labels[j]];
    }
    const mp a = sum[labels[i]] / count[labels[i]];
    mp b = -1;
    for (std::size_t c = 0; c < n_labels; ++c) {
      if (c == labels[i] || count[c] == 0) continue;
      const mp mean = sum[c] / count[c];
      if (b < 0 || mean < b) b = mean;
    }
    const mp denom = std::max(a, b);
    total += denom == 0 ? mp(0) : (b - a) / denom;
  }
  return static_cast<double>(total / n);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return static_cast<double>(mp_pearson(ranks(x), ranks(y)));
}

Pearson pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const mp r = mp_pearson(lift(x), lift(y));
  return {static_cast<double>(r), static_cast<double>(t_p_value(r, x.size()))};
}

LogLinear loglinear(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<mp> lx = lift(x), ly;
  for (double v : y) ly.push_back(log10(mp(v)));
  const std::size_t n = x.size();
  mp mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  mp sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const mp slope = sxy / sxx;
  const mp r = mp_pearson(lx, ly);
  return {static_cast<double>(slope), static_cast<double>(my - slope * mx), static_cast<double>(r),
          static_cast<double>(t_p_value(r, n))};
}

Ks ks(const std::vector<double>& a, const std::vector<double>& b) {
  auto ecdf = [](const std::vector<double>& v, double t) {
    std::size_t c = 0;
    for (double x : v) c += x <= t ? 1 : 0;
    return mp(c) / v.size();
  };
  mp d = 0;
  for (const auto* sample : {&a, &b}) {
    for (double t : *sample) d = std::max(d, abs(ecdf(a, t) - ecdf(b, t)));
  }
  const mp na = a.size(), nb = b.size();
  const mp lambda = sqrt(na * nb / (na + nb)) * d;
  if (d == 0) return {0.0, 1.0};
  // Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2), summed in 50
  // digits until the terms vanish.
  mp q = 0;
  for (int k = 1; k < 100000; ++k) {
    const mp term = exp(-2 * mp(k) * k * lambda * lambda);
    q += (k % 2 == 1 ? 2 : -2) * term;
    if (term < mp("1e-45")) break;
  }
  q = std::min(mp(1), std::max(mp(0), q));
  return {static_cast<double>(d), static_cast<double>(q)};
}

}  // namespace oracle
