// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "medselect/tfidf.hpp"

namespace medselect {

/// Test double for a live data source: answers GET /meta and GET /search
/// with configurable latency and a fixed set of answerable query patterns.
struct MockSourceSpec {
  std::string source_id;
  int port = 0;  // 0 = pick any free port
  /// A query is answerable when its terms intersect at least one pattern.
  std::vector<std::vector<std::string>> answerable_patterns;
  int latency_ms = 0;  // injected before every /search response
  std::optional<double> freshness;
  std::optional<double> reputation;
  Corpus documents;  // served as search results when they match
};

std::vector<MockSourceSpec> parse_mock_specs(const std::string& json_text);

class MockSourceHarness {
 public:
  /// Starts one HTTP server per spec. Throws Errc::port_in_use when a fixed
  /// port cannot be bound.
  explicit MockSourceHarness(std::vector<MockSourceSpec> specs);
  ~MockSourceHarness();

  MockSourceHarness(const MockSourceHarness&) = delete;
  MockSourceHarness& operator=(const MockSourceHarness&) = delete;

  int port_of(const std::string& source_id) const;
  std::vector<std::pair<std::string, int>> endpoints() const;

  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace medselect
