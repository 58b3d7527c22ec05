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

#include "cfp/svg.hpp"

#include <algorithm>
#include <cmath>

#include "cfp/text.hpp"

namespace cfp::svg {
namespace {

constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 70;

std::string num(double v) { return text::format_fixed(v, 2); }

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo = 0;
  double hi = 1;
};

Range padded(double lo, double hi) {
  if (!(lo <= hi)) return {0, 1};
  if (lo == hi) return {lo - 1, hi + 1};
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

Range y_range(const Chart& chart) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto& s : chart.series) {
    for (double v : s.y) {
      if (std::isnan(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return padded(lo, hi);
}

class Frame {
 public:
  Frame(const Chart& chart, Range x, Range y) : chart_(chart), x_(x), y_(y) {
    plot_w_ = chart.width - kLeft - kRight;
    plot_h_ = chart.height - kTop - kBottom;
  }

  double px(double v) const { return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * plot_w_; }
  double py(double v) const { return kTop + plot_h_ - (v - y_.lo) / (y_.hi - y_.lo) * plot_h_; }

  std::string open() const {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(chart_.width) + "\" height=\"" +
                      std::to_string(chart_.height) + "\" viewBox=\"0 0 " +
                      std::to_string(chart_.width) + " " + std::to_string(chart_.height) +
                      "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(chart_.width / 2.0) +
           "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(chart_.title) +
           "</text>\n";
    const double x0 = kLeft;
    const double y0 = kTop + plot_h_;
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x0) + "\" y2=\"" +
           num(y0) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0 + plot_w_) +
           "\" y2=\"" + num(y0) + "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
      const double v = y_.lo + (y_.hi - y_.lo) * k / 4.0;
      const double y = py(v);
      out += "<line x1=\"" + num(x0 - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(x0 + plot_w_) +
             "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\"/>\n";
      out += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
             num(v) + "</text>\n";
    }
    out += "<text x=\"" + num(x0 + plot_w_ / 2) + "\" y=\"" + num(chart_.height - 8.0) +
           "\" text-anchor=\"middle\">" + escape(chart_.x_label) + "</text>\n";
    out += "<text transform=\"translate(16," + num(kTop + plot_h_ / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">" + escape(chart_.y_label) + "</text>\n";
    return out;
  }

  std::string legend() const {
    std::string out;
    double y = kTop + 10;
    const double x = kLeft + plot_w_ + 15;
    for (const auto& s : chart_.series) {
      out += "<rect x=\"" + num(x) + "\" y=\"" + num(y - 8) + "\" width=\"12\" height=\"12\" fill=\"" +
             escape(s.color) + "\"/>\n";
      out += "<text x=\"" + num(x + 18) + "\" y=\"" + num(y + 2) + "\">" + escape(s.label) +
             "</text>\n";
      y += 18;
    }
    return out;
  }

  double plot_w() const { return plot_w_; }
  double plot_h() const { return plot_h_; }

 private:
  const Chart& chart_;
  Range x_;
  Range y_;
  double plot_w_;
  double plot_h_;
};

}  // namespace

std::string line_chart(const Chart& chart) {
  std::size_t n = chart.x_ticks.size();
  for (const auto& s : chart.series) n = std::max(n, s.y.size());
  const Range x{-0.5, std::max<double>(0.5, static_cast<double>(n) - 0.5)};
  Frame frame(chart, x, y_range(chart));
  std::string out = frame.open();
  const std::size_t stride = std::max<std::size_t>(1, (chart.x_ticks.size() + 11) / 12);
  const double base = kTop + frame.plot_h();
  for (std::size_t i = 0; i < chart.x_ticks.size(); i += stride) {
    const double px = frame.px(static_cast<double>(i));
    out += "<text transform=\"translate(" + num(px) + "," + num(base + 14) +
           ") rotate(-40)\" text-anchor=\"end\">" + escape(chart.x_ticks[i]) + "</text>\n";
  }
  for (const auto& s : chart.series) {
    std::string points;
    auto flush = [&] {
      if (points.empty()) return;
      out += "<polyline fill=\"none\" stroke=\"" + escape(s.color) + "\" stroke-width=\"2\"" +
             (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + " points=\"" + points + "\"/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      if (std::isnan(s.y[i])) {
        flush();
        continue;
      }
      const double xv = i < s.x.size() ? s.x[i] : static_cast<double>(i);
      if (!points.empty()) points.push_back(' ');
      points += num(frame.px(xv)) + "," + num(frame.py(s.y[i]));
      out += "<circle cx=\"" + num(frame.px(xv)) + "\" cy=\"" + num(frame.py(s.y[i])) +
             "\" r=\"2.5\" fill=\"" + escape(s.color) + "\"/>\n";
    }
    flush();
  }
  out += frame.legend();
  return out + "</svg>\n";
}

std::string scatter_chart(const Chart& chart) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto& s : chart.series) {
    for (double v : s.x) {
      if (std::isnan(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const Range x = padded(lo, hi);
  Frame frame(chart, x, y_range(chart));
  std::string out = frame.open();
  const double base = kTop + frame.plot_h();
  for (int k = 0; k <= 4; ++k) {
    const double v = x.lo + (x.hi - x.lo) * k / 4.0;
    out += "<text x=\"" + num(frame.px(v)) + "\" y=\"" + num(base + 16) +
           "\" text-anchor=\"middle\">" + num(v) + "</text>\n";
  }
  for (const auto& s : chart.series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
      out += "<circle cx=\"" + num(frame.px(s.x[i])) + "\" cy=\"" + num(frame.py(s.y[i])) +
             "\" r=\"3\" fill=\"" + escape(s.color) + "\" fill-opacity=\"0.7\"/>\n";
    }
  }
  out += frame.legend();
  return out + "</svg>\n";
}

}  // namespace cfp::svg
