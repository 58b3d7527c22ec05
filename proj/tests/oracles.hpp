/* Copyright 2026 The cfp Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

// Independent reference computations used to check the library. Written
// directly from the textbook definitions in long double, without sharing code
// with the implementation under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace cfp::oracle {

inline long double log_likelihood(std::uint64_t oa, std::uint64_t ob, std::uint64_t na,
                                  std::uint64_t nb) {
  const long double total = static_cast<long double>(na) + nb;
  const long double observed = static_cast<long double>(oa) + ob;
  const long double ea = na * observed / total;
  const long double eb = nb * observed / total;
  long double ll = 0;
  if (oa > 0) ll += oa * std::log(oa / ea);
  if (ob > 0) ll += ob * std::log(ob / eb);
  return 2 * ll;
}

inline long double mean(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return s / v.size();
}

inline long double variance(const std::vector<double>& v) {
  const long double m = mean(v);
  long double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

inline long double cohen_d(const std::vector<double>& a, const std::vector<double>& b) {
  const long double na = a.size();
  const long double nb = b.size();
  const long double pooled =
      std::sqrt(((na - 1) * variance(a) + (nb - 1) * variance(b)) / (na + nb - 2));
  return (mean(a) - mean(b)) / pooled;
}

inline long double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const long double mx = mean(x);
  const long double my = mean(y);
  long double sxy = 0;
  long double sxx = 0;
  long double syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Histogram overlap by explicit bin assignment over the pooled range.
inline long double overlap(const std::vector<double>& a, const std::vector<double>& b, int bins) {
  double lo = a[0];
  double hi = a[0];
  for (const auto* v : {&a, &b}) {
    for (double x : *v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (hi == lo) return 1.0L;
  std::vector<long double> pa(bins, 0);
  std::vector<long double> pb(bins, 0);
  auto bin = [&](double x) {
    int k = static_cast<int>((x - lo) / (hi - lo) * bins);
    return std::clamp(k, 0, bins - 1);
  };
  for (double x : a) pa[bin(x)] += 1.0L / a.size();
  for (double x : b) pb[bin(x)] += 1.0L / b.size();
  long double s = 0;
  for (int i = 0; i < bins; ++i) s += std::min(pa[i], pb[i]);
  return s;
}

}  // namespace cfp::oracle
