// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include <doctest.h>

#include "medselect/query_parse.hpp"
#include "../support/check.hpp"

using namespace medselect;
using testutil::throws_code;

TEST_CASE("direct vocabulary hits get weight 1.0") {
  const std::unordered_set<std::string> vocab{"transportation", "accommodation", "hotels"};
  const TermVector v = parse_query("transportation accommodation", vocab);
  REQUIRE(v.size() == 2);
  CHECK(*v.find("transportation") == 1.0);
  CHECK(*v.find("accommodation") == 1.0);
}

TEST_CASE("explicit weights override, unknown tokens are dropped") {
  const std::unordered_set<std::string> vocab{"transportation"};
  const TermVector v = parse_query("transportation:0.9 opera", vocab);
  REQUIRE(v.size() == 1);
  CHECK(*v.find("transportation") == 0.9);
}

TEST_CASE("no vocabulary hit yields an empty vector") {
  const std::unordered_set<std::string> vocab{"transport", "holidays"};
  const TermVector v = parse_query("I look for travel offers to Morocco", vocab);
  CHECK(v.empty());
}

TEST_CASE("explicit weight out of range is an error") {
  const std::unordered_set<std::string> vocab{"transport"};
  CHECK(throws_code(Errc::weight_out_of_range, [&] { parse_query("transport:1.2", vocab); }));
}

TEST_CASE("tokenization details") {
  const std::unordered_set<std::string> vocab{"transport", "hotel", "spa"};
  SUBCASE("punctuation splits tokens and case is folded") {
    const TermVector v = parse_query("Transport,HOTEL;spa!", vocab);
    CHECK(v.size() == 3);
  }
  SUBCASE("first occurrence wins on duplicates") {
    const TermVector v = parse_query("transport transport:0.5", vocab);
    REQUIRE(v.size() == 1);
    CHECK(*v.find("transport") == 1.0);
  }
  SUBCASE("explicit form is case folded too") {
    const TermVector v = parse_query("Transport:0.4", vocab);
    REQUIRE(v.size() == 1);
    CHECK(*v.find("transport") == 0.4);
  }
  SUBCASE("a chunk with a non-numeric suffix falls back to plain tokens") {
    const TermVector v = parse_query("transport:fast", vocab);
    REQUIRE(v.size() == 1);
    CHECK(*v.find("transport") == 1.0);
  }
}
