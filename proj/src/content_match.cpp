// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/content_match.hpp"

#include "medselect/error.hpp"

namespace medselect {

ContentMatchResult content_match(const TermVector& goals,
                                 std::span<const SourceProfile> sources,
                                 const SimilarityParams& params) {
  if (sources.empty())
    raise(Errc::empty_source_set, "content matching requires at least one source");

  ContentMatchResult result;
  result.scored = score_sources(goals, sources, params);
  for (const ScoredSource& s : result.scored) {
    if (s.sim * 100.0 >= params.threshold_pct) result.selected.push_back(s);
  }
  return result;
}

}  // namespace medselect
