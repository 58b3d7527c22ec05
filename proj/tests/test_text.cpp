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

#include <string>

#include "cfp/date.hpp"
#include "cfp/error.hpp"
#include "cfp/text.hpp"
#include "doctest.h"

TEST_SUITE("text") {
  TEST_CASE("utf8 helpers") {
    using namespace cfp::text;
    CHECK(is_valid_utf8("caf\xc3\xa9"));
    CHECK_FALSE(is_valid_utf8("\xc3"));
    CHECK(code_point_count("caf\xc3\xa9") == 4);
    CHECK(collapse_whitespace("  a \t b\n\nc  ") == "a b c");
    CHECK(to_lower("\xc3\x89T\xc3\x89") == "\xc3\xa9t\xc3\xa9");
    CHECK(is_upper_word("NOT"));
    CHECK_FALSE(is_upper_word("Not"));
    CHECK_FALSE(is_upper_word("123"));
  }

  TEST_CASE("rounding follows printf") {
    using cfp::text::format_fixed;
    CHECK(format_fixed(0.12345, 4) == "0.1235");
    CHECK(format_fixed(-0.5, 0) == "-0");
    CHECK(cfp::text::round_to(0.80735, 4) == 0.8074);
  }

  TEST_CASE("sha256") {
    CHECK(cfp::text::sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }
}

TEST_SUITE("date") {
  TEST_CASE("parsing") {
    using cfp::Date;
    CHECK(Date::parse("2020-03-27")->iso() == "2020-03-27");
    CHECK(Date::parse("2020-03-27T10:00:00Z")->iso() == "2020-03-27");
    CHECK(Date::parse("March 27, 2020")->iso() == "2020-03-27");
    CHECK(Date::parse("Mar 2, 2020")->iso() == "2020-03-02");
    CHECK_FALSE(Date::parse("2020-02-30"));
    CHECK_FALSE(Date::parse("yesterday"));
    CHECK_THROWS_AS(Date::parse_or_throw("soon"), cfp::Error);
  }

  TEST_CASE("iso weeks") {
    using cfp::Date;
    CHECK(Date(2020, 1, 1).iso_week_key() == "2020-W01");
    CHECK(Date(2019, 12, 30).iso_week_key() == "2020-W01");
    CHECK(Date(2021, 1, 3).iso_week_key() == "2020-W53");
    CHECK(Date(2020, 3, 1).iso_week_key() == "2020-W09");
    CHECK(Date(2020, 3, 2).iso_weekday() == 1);
    CHECK(Date(1970, 1, 1).days_since_epoch() == 0);
    CHECK(Date::from_days(18322).iso() == "2020-03-01");
    CHECK(Date(2020, 3, 1).compact() == "20200301");
  }
}
