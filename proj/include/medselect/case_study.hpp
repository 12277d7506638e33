// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "medselect/pipeline.hpp"
#include "medselect/profile.hpp"
#include "medselect/similarity.hpp"

namespace medselect::case_study {

/// Bundled travel-planning demo: one user profile with session goals and
/// quality preferences, ten sources, and the four-criterion registry.
/// Reference similarity scores, scaled matrix cells and SAW scores are
/// frozen alongside so the whole selection procedure can be re-verified
/// end to end at any time.
struct Fixture {
  UserProfile user;
  std::vector<SourceProfile> sources;
  std::vector<CriterionSpec> criteria;
  SimilarityParams params;  // (1/3, 1/3, 1/3), threshold 50%
};

Fixture fixture();

// Verification tolerances: reference similarity scores are printed to three
// decimals and deviate from exact evaluation by up to 0.015, the quality
// table by rounding of the scaled cells only.
inline constexpr double kSimTolerance = 0.02;
inline constexpr double kCellTolerance = 0.001;
inline constexpr double kScoreTolerance = 0.001;

struct ContentRow {
  std::string source_id;
  double sim = 0.0;
  double expected_sim = 0.0;
  int rank = 0;
  int expected_rank = 0;
  bool selected = false;
};

struct QualityRow {
  std::string source_id;
  std::array<double, 4> scaled{};
  std::array<double, 4> expected_scaled{};
  double score = 0.0;
  double expected_score = 0.0;
};

struct Report {
  std::vector<ContentRow> content;            // by computed rank
  std::vector<std::string> selected_order;    // computed
  std::vector<std::string> expected_selected; // {"9","3","8","1","6"}
  std::vector<QualityRow> quality;            // stage-1 survivors, matrix order
  std::vector<std::string> expected_survivors;// {"1","3","6"}
  std::vector<std::string> final_order;       // computed, by SAW score
  std::vector<std::string> expected_final;    // {"3","1","6"}
  std::vector<std::string> failures;          // empty == verdict PASS
  SelectionResult selection;                  // the underlying pipeline run

  bool pass() const { return failures.empty(); }
};

/// Runs the full selection over the fixture and checks every frozen value
/// at the stated tolerances.
Report evaluate(const Fixture& fixture);

/// Renders the content-matching and quality-matching tables with computed
/// vs reference values, per-cell deltas and the final verdict line.
std::string render(const Report& report);

}  // namespace medselect::case_study
