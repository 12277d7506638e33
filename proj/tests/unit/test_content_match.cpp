// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include <doctest.h>

#include <random>
#include <set>

#include "medselect/case_study.hpp"
#include "medselect/content_match.hpp"
#include "../support/check.hpp"
#include "../support/oracles.hpp"

using namespace medselect;
using testutil::throws_code;

TEST_CASE("threshold-50 selection over the bundled ten sources") {
  const auto fx = case_study::fixture();
  const ContentMatchResult result =
      content_match(fx.user.current_session->goals, fx.sources, fx.params);

  REQUIRE(result.scored.size() == 10);
  std::vector<std::string> selected_ids;
  for (const ScoredSource& s : result.selected) selected_ids.push_back(s.source_id);
  CHECK(selected_ids == std::vector<std::string>{"9", "3", "8", "1", "6"});
}

TEST_CASE("threshold 0 keeps zero-similarity sources") {
  const auto fx = case_study::fixture();
  SimilarityParams params = fx.params;
  params.threshold_pct = 0.0;
  const ContentMatchResult result =
      content_match(fx.user.current_session->goals, fx.sources, params);
  CHECK(result.selected.size() == 10);  // 0 * 100 >= 0 holds
  CHECK(result.selected.back().source_id == "10");
  CHECK(result.selected.back().sim == 0.0);
}

TEST_CASE("identical single source passes threshold 100") {
  SourceProfile source;
  source.source_id = "only";
  source.content = validate_term_vector({{"alpha", 0.4}, {"beta", 0.9}});
  const SimilarityParams params{1.0 / 3, 1.0 / 3, 1.0 / 3, 100.0};
  const ContentMatchResult result =
      content_match(source.content, std::vector<SourceProfile>{source}, params);
  REQUIRE(result.selected.size() == 1);
  CHECK(result.selected[0].sim == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empty source set is an error") {
  const TermVector goals = validate_term_vector({{"a", 0.5}});
  CHECK(throws_code(Errc::empty_source_set, [&] {
    content_match(goals, std::vector<SourceProfile>{}, SimilarityParams{});
  }));
}

TEST_CASE("ties are broken by ascending source id") {
  SourceProfile a, b;
  a.source_id = "beta";
  b.source_id = "alpha";
  a.content = b.content = validate_term_vector({{"x", 0.5}});
  const TermVector goals = validate_term_vector({{"x", 0.9}});
  const ContentMatchResult result = content_match(
      goals, std::vector<SourceProfile>{a, b}, SimilarityParams{1.0 / 3, 1.0 / 3, 1.0 / 3, 0});
  REQUIRE(result.scored.size() == 2);
  CHECK(result.scored[0].source_id == "alpha");
  CHECK(result.scored[1].source_id == "beta");
}

TEST_CASE("selected set equals a brute-force re-scan on random inputs") {
  std::mt19937 rng(313131);
  std::uniform_real_distribution<double> threshold(0.0, 100.0);
  for (int iter = 0; iter < 200; ++iter) {
    std::uniform_int_distribution<int> count(1, 24);
    std::vector<SourceProfile> sources(count(rng));
    for (std::size_t i = 0; i < sources.size(); ++i) {
      sources[i].source_id = "s" + std::to_string(i);
      sources[i].content = oracle::random_vector(rng);
    }
    const TermVector goals = oracle::random_vector(rng);
    const SimilarityParams params{1.0 / 3, 1.0 / 3, 1.0 / 3, threshold(rng)};
    const ContentMatchResult result = content_match(goals, sources, params);

    std::set<std::string> expected;
    for (const SourceProfile& s : sources) {
      const double sim =
          combined_similarity(goals, s.content, params.alpha, params.beta, params.gamma);
      if (sim * 100.0 >= params.threshold_pct) expected.insert(s.source_id);
    }
    std::set<std::string> actual;
    for (const ScoredSource& s : result.selected) actual.insert(s.source_id);
    REQUIRE(actual == expected);

    for (std::size_t i = 1; i < result.scored.size(); ++i) {
      const auto& prev = result.scored[i - 1];
      const auto& cur = result.scored[i];
      REQUIRE((prev.sim > cur.sim ||
               (prev.sim == cur.sim && prev.source_id < cur.source_id)));
    }
  }
}
