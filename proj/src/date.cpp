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

#include "cfp/date.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "cfp/error.hpp"

namespace cfp {
namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr std::array<int, 12> kDays = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

// Howard Hinnant's days_from_civil / civil_from_days.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

int month_from_name(std::string_view name) {
  static constexpr std::array<std::string_view, 12> kNames = {
      "january", "february", "march", "april", "may", "june",
      "july", "august", "september", "october", "november", "december"};
  std::string lower;
  for (char c : name) {
    if (c == '.') continue;
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (lower.size() < 3) return 0;
  if (lower == "sept") return 9;
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (lower == kNames[i] || (lower.size() == 3 && kNames[i].substr(0, 3) == lower)) {
      return static_cast<int>(i) + 1;
    }
  }
  return 0;
}

std::string_view trim_spaces(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<Date> parse_iso(std::string_view s) {
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (s.size() > 10 && s[10] != 'T' && s[10] != ' ') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), m) ||
      !parse_int(s.substr(8, 2), d)) {
    return std::nullopt;
  }
  if (!is_valid_date(y, m, d)) return std::nullopt;
  return Date(y, m, d);
}

// "March 27, 2020" / "Mar. 27, 2020" / "Mar 27 2020"
std::optional<Date> parse_month_day_year(std::string_view s) {
  std::size_t sp = s.find(' ');
  if (sp == std::string_view::npos) return std::nullopt;
  int m = month_from_name(s.substr(0, sp));
  if (m == 0) return std::nullopt;
  std::string_view rest = trim_spaces(s.substr(sp + 1));
  std::size_t sep = rest.find_first_of(", ");
  if (sep == std::string_view::npos) return std::nullopt;
  int d = 0, y = 0;
  if (!parse_int(rest.substr(0, sep), d)) return std::nullopt;
  std::string_view year = trim_spaces(rest.substr(sep + 1));
  if (!year.empty() && year.front() == ',') year = trim_spaces(year.substr(1));
  if (year.size() != 4 || !parse_int(year, y)) return std::nullopt;
  if (!is_valid_date(y, m, d)) return std::nullopt;
  return Date(y, m, d);
}

}  // namespace

bool is_valid_date(int year, int month, int day) {
  return year >= 1 && year <= 9999 && month >= 1 && month <= 12 && day >= 1 &&
         day <= days_in_month(year, month);
}

Date::Date(int year, int month, int day) : year_(year), month_(month), day_(day) {
  if (!is_valid_date(year, month, day)) {
    fail(ErrorCode::kInvalidArgument, "invalid calendar date " + std::to_string(year) + "-" +
                                          std::to_string(month) + "-" + std::to_string(day));
  }
}

Date Date::from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return Date(static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d));
}

std::optional<Date> Date::parse(std::string_view text) {
  std::string_view s = trim_spaces(text);
  if (s.empty()) return std::nullopt;
  if (std::isdigit(static_cast<unsigned char>(s.front()))) return parse_iso(s);
  return parse_month_day_year(s);
}

Date Date::parse_or_throw(std::string_view text) {
  auto d = parse(text);
  if (!d) fail(ErrorCode::kParse, "unparseable date '" + std::string(text) + "'");
  return *d;
}

std::int64_t Date::days_since_epoch() const {
  return days_from_civil(year_, static_cast<unsigned>(month_), static_cast<unsigned>(day_));
}

int Date::iso_weekday() const {
  // 1970-01-01 was a Thursday.
  std::int64_t z = days_since_epoch();
  int wd = static_cast<int>(((z % 7) + 7 + 3) % 7);  // Monday = 0
  return wd + 1;
}

std::pair<int, int> Date::iso_week() const {
  // The week belongs to the year containing its Thursday.
  Date thursday = add_days(4 - iso_weekday());
  Date jan1(thursday.year(), 1, 1);
  int week = static_cast<int>((thursday.days_since_epoch() - jan1.days_since_epoch()) / 7) + 1;
  return {thursday.year(), week};
}

std::string Date::iso_week_key() const {
  auto [y, w] = iso_week();
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-W%02d", y, w);
  return buf;
}

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year_, month_, day_);
  return buf;
}

std::string Date::compact() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d%02d%02d", year_, month_, day_);
  return buf;
}

}  // namespace cfp
