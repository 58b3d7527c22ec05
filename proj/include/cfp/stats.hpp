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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cfp/date.hpp"

namespace cfp::stats {

double mean(std::span<const double> values);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double sample_sd(std::span<const double> values);

// (mean_a - mean_b) / pooled SD with Bessel-corrected variances.
// Needs two or more values per sample; throws kDegenerateDistribution when
// the pooled SD is zero.
double cohen_d(std::span<const double> a, std::span<const double> b);

// Histogram overlapping coefficient over `bins` equal-width bins spanning the
// pooled range: sum_i min(p_i, q_i).
double overlap_coefficient(std::span<const double> a, std::span<const double> b,
                           std::size_t bins = 100);

// Product-moment correlation. Throws kUndefinedCorrelation for mismatched
// lengths, fewer than two points, or zero variance.
double pearson_r(std::span<const double> x, std::span<const double> y);

// Linear-interpolation percentile (q in [0, 100]) of an unsorted sample.
double percentile(std::vector<double> values, double q);

struct DatedValue {
  Date date;
  double value = 0.0;
};

struct SeriesPoint {
  std::string week;  // ISO week key, e.g. "2020-W09"
  double mean = 0.0;
  std::size_t n = 0;
};

std::vector<SeriesPoint> weekly_series(std::span<const DatedValue> values);

struct StageStats {
  double mean = 0.0;
  double sd = 0.0;
  std::size_t n = 0;
  bool empty() const { return n == 0; }
};

// Stage 1 holds dates strictly before `split`, stage 2 the rest.
std::pair<StageStats, StageStats> stage_split(std::span<const DatedValue> values,
                                              const Date& split);

inline Date default_stage_split() { return Date(2020, 3, 1); }

}  // namespace cfp::stats
