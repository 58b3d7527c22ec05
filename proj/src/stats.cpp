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

#include "cfp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cfp/error.hpp"

namespace cfp::stats {

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_sd(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double cohen_d(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    fail(ErrorCode::kDegenerateDistribution, "Cohen's d needs at least two values per sample");
  }
  const double ma = mean(a);
  const double mb = mean(b);
  double ssa = 0.0;
  double ssb = 0.0;
  for (double v : a) ssa += (v - ma) * (v - ma);
  for (double v : b) ssb += (v - mb) * (v - mb);
  const double pooled =
      std::sqrt((ssa + ssb) / static_cast<double>(a.size() + b.size() - 2));
  if (!(pooled > 0.0)) {
    fail(ErrorCode::kDegenerateDistribution, "Cohen's d undefined: pooled standard deviation is zero");
  }
  return (ma - mb) / pooled;
}

double overlap_coefficient(std::span<const double> a, std::span<const double> b,
                           std::size_t bins) {
  if (a.empty() || b.empty()) {
    fail(ErrorCode::kInvalidArgument, "overlap needs two non-empty samples");
  }
  if (bins < 2) fail(ErrorCode::kInvalidArgument, "overlap needs at least two bins");
  double lo = a[0];
  double hi = a[0];
  for (auto s : {a, b}) {
    for (double v : s) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  std::vector<double> pa(bins, 0.0);
  std::vector<double> pb(bins, 0.0);
  auto fill = [&](std::span<const double> s, std::vector<double>& hist) {
    for (double v : s) {
      std::size_t k = 0;
      if (hi > lo) {
        const double pos = (v - lo) / (hi - lo) * static_cast<double>(bins);
        k = pos <= 0.0 ? 0 : static_cast<std::size_t>(pos);
        if (k >= bins) k = bins - 1;
      }
      hist[k] += 1.0;
    }
    for (double& h : hist) h /= static_cast<double>(s.size());
  };
  fill(a, pa);
  fill(b, pb);
  double sum = 0.0;
  for (std::size_t k = 0; k < bins; ++k) sum += std::min(pa[k], pb[k]);
  return std::clamp(sum, 0.0, 1.0);
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    fail(ErrorCode::kUndefinedCorrelation, "correlation needs samples of equal length");
  }
  if (x.size() < 2) fail(ErrorCode::kUndefinedCorrelation, "correlation needs at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    fail(ErrorCode::kUndefinedCorrelation, "correlation undefined: a sample has zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) fail(ErrorCode::kInvalidArgument, "percentile of an empty sample");
  if (q < 0.0 || q > 100.0) fail(ErrorCode::kInvalidArgument, "percentile must be within [0, 100]");
  std::sort(values.begin(), values.end());
  const double rank = q / 100.0 * static_cast<double>(values.size() - 1);
  const auto lower = static_cast<std::size_t>(std::floor(rank));
  const std::size_t upper = std::min(lower + 1, values.size() - 1);
  const double frac = rank - static_cast<double>(lower);
  return values[lower] + (values[upper] - values[lower]) * frac;
}

std::vector<SeriesPoint> weekly_series(std::span<const DatedValue> values) {
  struct Acc {
    double sum = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;
  };
  std::map<std::string, Acc> weeks;
  for (const auto& v : values) {
    Acc& slot = weeks[v.date.iso_week_key()];
    slot.lo = slot.n == 0 ? v.value : std::min(slot.lo, v.value);
    slot.hi = slot.n == 0 ? v.value : std::max(slot.hi, v.value);
    slot.sum += v.value;
    ++slot.n;
  }
  std::vector<SeriesPoint> out;
  out.reserve(weeks.size());
  for (const auto& [week, acc] : weeks) {
    // Rounding in the sum must not push the mean outside its members' range.
    const double m = std::clamp(acc.sum / static_cast<double>(acc.n), acc.lo, acc.hi);
    out.push_back({week, m, acc.n});
  }
  return out;
}

std::pair<StageStats, StageStats> stage_split(std::span<const DatedValue> values,
                                              const Date& split) {
  std::vector<double> first;
  std::vector<double> second;
  for (const auto& v : values) (v.date < split ? first : second).push_back(v.value);
  auto summarize = [](const std::vector<double>& s) {
    StageStats st;
    st.n = s.size();
    st.mean = mean(s);
    st.sd = sample_sd(s);
    return st;
  };
  return {summarize(first), summarize(second)};
}

}  // namespace cfp::stats
