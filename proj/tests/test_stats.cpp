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

#include <cmath>
#include <random>
#include <vector>

#include "cfp/date.hpp"
#include "cfp/error.hpp"
#include "cfp/stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cfp::stats;

namespace {

std::vector<double> sample(std::mt19937_64& rng, std::size_t n, double mu, double sigma) {
  std::normal_distribution<double> dist(mu, sigma);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("cohen d on small samples") {
    // Means 2 and 4, both sample SDs 1: d = -2 / 1.
    CHECK(cohen_d(std::vector<double>{1, 2, 3}, std::vector<double>{3, 4, 5}) ==
          doctest::Approx(-2.0));
    // Bessel-corrected pooled SD of {1,2} and {3,4} is sqrt(0.5).
    CHECK(cohen_d(std::vector<double>{1, 2}, std::vector<double>{3, 4}) ==
          doctest::Approx(-2.0 / std::sqrt(0.5)));
    CHECK_THROWS_AS(cohen_d(std::vector<double>{1, 1}, std::vector<double>{1, 1}), cfp::Error);
    CHECK_THROWS_AS(cohen_d(std::vector<double>{1}, std::vector<double>{1, 2}), cfp::Error);
  }

  TEST_CASE("cohen d properties over random samples") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int i = 0; i < 1000; ++i) {
      const auto a = sample(rng, 2 + rng() % 50, u(rng), 0.1 + std::fabs(u(rng)));
      const auto b = sample(rng, 2 + rng() % 50, u(rng), 0.1 + std::fabs(u(rng)));
      const double d = cohen_d(a, b);
      REQUIRE(d == doctest::Approx(static_cast<double>(cfp::oracle::cohen_d(a, b))).epsilon(1e-9));
      REQUIRE(cohen_d(b, a) == doctest::Approx(-d).epsilon(1e-12));
      const double k = 0.5 + std::fabs(u(rng));
      const double c = u(rng);
      std::vector<double> sa = a;
      std::vector<double> sb = b;
      for (auto& x : sa) x = k * x + c;
      for (auto& x : sb) x = k * x + c;
      REQUIRE(cohen_d(sa, sb) == doctest::Approx(d).epsilon(1e-8));
    }
  }

  TEST_CASE("overlap coefficient") {
    const std::vector<double> a = {0.1, 0.2, 0.3, 0.4};
    CHECK(overlap_coefficient(a, a) == doctest::Approx(1.0));
    CHECK(overlap_coefficient(a, std::vector<double>{2.1, 2.2, 2.9}) == 0.0);
    CHECK(overlap_coefficient(std::vector<double>{1, 1}, std::vector<double>{1}) == 1.0);
    CHECK_THROWS_AS(overlap_coefficient(a, std::vector<double>{}), cfp::Error);

    std::mt19937_64 rng(2);
    for (int i = 0; i < 1000; ++i) {
      const auto x = sample(rng, 1 + rng() % 80, 0, 1);
      const auto y = sample(rng, 1 + rng() % 80, (rng() % 100) / 25.0, 1);
      const double o = overlap_coefficient(x, y, 100);
      REQUIRE(o >= 0.0);
      REQUIRE(o <= 1.0 + 1e-12);
      REQUIRE(o == doctest::Approx(static_cast<double>(cfp::oracle::overlap(x, y, 100))).epsilon(1e-9));
      REQUIRE(overlap_coefficient(x, x, 100) == doctest::Approx(1.0));
      std::vector<double> far = x;
      double hi = x[0];
      double lo = x[0];
      for (double v : x) {
        hi = std::max(hi, v);
        lo = std::min(lo, v);
      }
      for (auto& v : far) v += (hi - lo) * 2 + 1;
      REQUIRE(overlap_coefficient(x, far, 100) == 0.0);
    }
  }

  TEST_CASE("pearson r") {
    CHECK(pearson_r(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}) == doctest::Approx(1.0));
    CHECK(pearson_r(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(pearson_r(std::vector<double>{1, 1}, std::vector<double>{1, 2}), cfp::Error);
    CHECK_THROWS_AS(pearson_r(std::vector<double>{1}, std::vector<double>{1}), cfp::Error);
    CHECK_THROWS_AS(pearson_r(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), cfp::Error);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 1000; ++i) {
      const std::size_t n = 3 + rng() % 60;
      auto x = sample(rng, n, 0, 1);
      auto y = sample(rng, n, 0, 1);
      const double w = u(rng);
      for (std::size_t k = 0; k < n; ++k) y[k] += w * x[k];
      const double r = pearson_r(x, y);
      REQUIRE(std::fabs(r) <= 1.0);
      REQUIRE(r == doctest::Approx(static_cast<double>(cfp::oracle::pearson(x, y))).epsilon(1e-9));
      double a = u(rng);
      if (std::fabs(a) < 0.1) a = 1.5;
      const double b = u(rng);
      auto x2 = x;
      for (auto& v : x2) v = a * v + b;
      REQUIRE(pearson_r(x2, y) == doctest::Approx(a > 0 ? r : -r).epsilon(1e-8));
    }
  }

  TEST_CASE("percentile") {
    CHECK(percentile({1, 2, 3, 4}, 50) == doctest::Approx(2.5));
    CHECK(percentile({5}, 95) == 5.0);
    CHECK(percentile({4, 1, 3, 2}, 100) == 4.0);
    CHECK(percentile({4, 1, 3, 2}, 0) == 1.0);
  }

  TEST_CASE("weekly series and stages") {
    using cfp::Date;
    const std::vector<DatedValue> v = {
        {Date(2020, 2, 24), 1.0}, {Date(2020, 3, 1), 3.0}, {Date(2020, 3, 2), 5.0}, {Date(2020, 3, 8), 7.0}};
    const auto series = weekly_series(v);
    REQUIRE(series.size() == 2);
    CHECK(series[0].week == "2020-W09");
    CHECK(series[0].mean == 2.0);
    CHECK(series[0].n == 2);
    CHECK(series[1].week == "2020-W10");
    CHECK(series[1].mean == 6.0);
    const auto [s1, s2] = stage_split(v, default_stage_split());
    CHECK(s1.n == 1);
    CHECK(s1.mean == 1.0);
    CHECK(s2.n == 3);
    CHECK(s2.mean == 5.0);
    CHECK(s2.sd == doctest::Approx(2.0));
  }
}
