// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <span>
#include <vector>

#include "medselect/similarity.hpp"

namespace medselect {

struct ContentMatchResult {
  /// Every input source, sorted by descending similarity (ties by
  /// ascending source id).
  std::vector<ScoredSource> scored;
  /// The relevant subset: sim * 100 >= threshold_pct, same ordering.
  std::vector<ScoredSource> selected;
};

/// First matching stage: scores all sources against the goals vector and
/// keeps those whose similarity clears the percentage threshold.
ContentMatchResult content_match(const TermVector& goals,
                                 std::span<const SourceProfile> sources,
                                 const SimilarityParams& params);

}  // namespace medselect
