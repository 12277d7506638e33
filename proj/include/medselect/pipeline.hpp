// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "medselect/content_match.hpp"
#include "medselect/profile.hpp"
#include "medselect/saw.hpp"
#include "medselect/similarity.hpp"

namespace medselect {

struct SelectionRequest {
  std::optional<std::string> user_id;
  /// Inline session; when absent the user's current session is used.
  std::optional<SessionProfile> session;
  std::optional<std::string> query_text;
  SimilarityParams params;
  std::optional<int> max_results;
};

struct RankedSource {
  std::string source_id;
  double content_sim = 0.0;
  double saw_score = 0.0;
  int rank = 0;

  bool operator==(const RankedSource&) const = default;
};

/// Per-stage record of a selection run.
struct SelectionTrace {
  std::vector<ScoredSource> content_scores;  // every input source, scored
  std::vector<std::string> selected;         // ids passing the content threshold
  std::vector<std::string> survivors;        // ids passing stage-1 filtering
  DecisionMatrix matrix;                     // scaled matrix over the survivors
  std::vector<SawEntry> saw;                 // SAW scores over the survivors
  std::vector<std::string> notes;            // non-fatal diagnostics
};

struct SelectionResult {
  /// Final ranking: SAW score descending, then content similarity
  /// descending, then source id ascending; ranks are 1..k.
  std::vector<RankedSource> entries;
  SelectionTrace trace;
};

/// The end-to-end selection: resolves the goals (session goals merged with
/// terms parsed from the query text, session winning per term), resolves
/// the quality preferences (session, then the persistent expected quality,
/// then indifferent weights over the criteria measured on every survivor),
/// runs content matching, then quality matching over the survivors.
///
/// `user` may be null for inline-session requests. An empty result is not
/// an error; the trace is populated either way. The criterion registry,
/// when given, enables cost-direction inversion in the scaling stage.
SelectionResult select_sources(const SelectionRequest& request, const UserProfile* user,
                               std::span<const SourceProfile> sources,
                               DiagnosticLog* diag = nullptr,
                               std::span<const CriterionSpec> registry = {});

}  // namespace medselect
