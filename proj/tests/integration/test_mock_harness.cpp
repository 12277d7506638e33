// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include <doctest.h>

#include <chrono>

#include <httplib.h>
#include <json.hpp>

#include "medselect/mock_source.hpp"
#include "../support/check.hpp"

using namespace medselect;
using nlohmann::json;
using testutil::throws_code;

namespace {

MockSourceSpec demo_spec() {
  MockSourceSpec spec;
  spec.source_id = "demo";
  spec.answerable_patterns = {{"transport"}, {"hotel", "accommodation"}};
  spec.documents.documents = {{"d1", "transport schedules for the region"}};
  spec.freshness = 2.0;
  spec.reputation = 4.5;
  return spec;
}

json get_json(int port, const std::string& path) {
  httplib::Client client("127.0.0.1", port);
  const auto res = client.Get(path);
  REQUIRE(res);
  REQUIRE(res->status == 200);
  return json::parse(res->body);
}

}  // namespace

TEST_CASE("search answers iff the query intersects a pattern") {
  MockSourceHarness harness({demo_spec()});
  const int port = harness.port_of("demo");

  const json hit = get_json(port, "/search?q=transport");
  REQUIRE(hit.at("results").is_array());
  CHECK(!hit.at("results").empty());
  CHECK(hit.at("results")[0].at("id") == "d1");

  const json second = get_json(port, "/search?q=accommodation%20please");
  CHECK(!second.at("results").empty());  // pattern hit, stub result

  const json miss = get_json(port, "/search?q=opera");
  CHECK(miss.at("results").empty());
}

TEST_CASE("meta serves the configured measurements") {
  MockSourceHarness harness({demo_spec()});
  const json meta = get_json(harness.port_of("demo"), "/meta");
  CHECK(meta.at("source_id") == "demo");
  CHECK(meta.at("freshness") == 2.0);
  CHECK(meta.at("reputation") == 4.5);
}

TEST_CASE("injected latency delays /search but not /meta") {
  MockSourceSpec spec = demo_spec();
  spec.latency_ms = 50;
  MockSourceHarness harness({spec});
  httplib::Client client("127.0.0.1", harness.port_of("demo"));

  const auto t0 = std::chrono::steady_clock::now();
  const auto res = client.Get("/search?q=transport");
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  REQUIRE(res);
  CHECK(elapsed >= 0.05);
}

TEST_CASE("identical queries give identical answered patterns") {
  MockSourceHarness harness({demo_spec()});
  const int port = harness.port_of("demo");
  for (int i = 0; i < 5; ++i) {
    CHECK(!get_json(port, "/search?q=transport").at("results").empty());
    CHECK(get_json(port, "/search?q=opera").at("results").empty());
  }
}

TEST_CASE("a fixed port that is taken raises port_in_use") {
  MockSourceSpec first = demo_spec();
  MockSourceHarness harness({first});
  MockSourceSpec second = demo_spec();
  second.source_id = "clone";
  second.port = harness.port_of("demo");
  CHECK(throws_code(Errc::port_in_use,
                    [&] { MockSourceHarness doomed({second}); }));
}

TEST_CASE("spec files parse") {
  const std::string text = R"({
    "sources": [
      {"source_id": "a", "patterns": [["Transport"]], "latency_ms": 5,
       "freshness": 1.0, "documents": [{"id": "d", "text": "transport"}]}
    ]
  })";
  const auto specs = parse_mock_specs(text);
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].source_id == "a");
  CHECK(specs[0].answerable_patterns == std::vector<std::vector<std::string>>{{"transport"}});
  CHECK(specs[0].latency_ms == 5);
  CHECK(throws_code(Errc::validation_failure, [] { parse_mock_specs("[{}]"); }));
}
