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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cfp {

// Proleptic Gregorian calendar date (UTC, no time of day).
class Date {
 public:
  constexpr Date() = default;
  Date(int year, int month, int day);  // throws kInvalidArgument

  static Date from_days(std::int64_t days_since_epoch);

  // Accepts ISO-8601 dates ("2020-03-27", optionally followed by a time part
  // introduced by 'T' or a space) and "Month D, YYYY" with full or
  // abbreviated English month names.
  static std::optional<Date> parse(std::string_view text);
  static Date parse_or_throw(std::string_view text);

  int year() const { return year_; }
  int month() const { return month_; }
  int day() const { return day_; }

  std::int64_t days_since_epoch() const;
  Date add_days(std::int64_t n) const { return from_days(days_since_epoch() + n); }

  // ISO weekday, Monday = 1 ... Sunday = 7.
  int iso_weekday() const;
  // ISO-8601 week-numbering year and week.
  std::pair<int, int> iso_week() const;
  std::string iso_week_key() const;  // "2020-W09"

  std::string iso() const;       // "2020-03-01"
  std::string compact() const;   // "20200301"

  auto operator<=>(const Date&) const = default;

 private:
  int year_ = 1970;
  int month_ = 1;
  int day_ = 1;
};

bool is_valid_date(int year, int month, int day);

}  // namespace cfp
