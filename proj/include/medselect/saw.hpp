// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "medselect/error.hpp"
#include "medselect/profile.hpp"

namespace medselect {

struct DecisionMatrix {
  std::vector<std::string> source_ids;      // rows
  std::vector<std::string> criterion_ids;   // columns
  std::vector<std::vector<double>> raw;     // n x m, criterion units
  std::vector<std::vector<double>> scaled;  // n x m, min-max scaled to [0,1]
};

struct SawEntry {
  std::string source_id;
  double score = 0.0;

  bool operator==(const SawEntry&) const = default;
};

struct QualityRanking {
  /// Sorted by descending SAW score, ties broken by ascending source id.
  std::vector<SawEntry> entries;
};

/// Stage 1: keeps exactly the sources that satisfy every mandatory and
/// desirable constraint (inclusive comparison). A source lacking a
/// measurement for a filtering criterion is excluded with a diagnostic.
/// not_desirable and indifferent preferences never filter.
std::vector<SourceProfile> filter_by_quality_preferences(
    std::span<const SourceProfile> sources, std::span<const QualityPreference> prefs,
    DiagnosticLog* diag = nullptr);

/// Stage 2: per-criterion min-max scaling over the given sources. A
/// degenerate column (max == min) scales to 0 for every row. Missing
/// measurements are an error here.
///
/// When a registry is given, columns whose CriterionSpec declares the cost
/// direction are inverted (v' := 1 - v') after scaling, so a lower raw
/// value scores higher. Degenerate columns stay 0 either way. The default
/// direction is benefit, so an all-default registry changes nothing.
DecisionMatrix scale_decision_matrix(std::span<const SourceProfile> sources,
                                     std::span<const std::string> criterion_ids,
                                     std::span<const CriterionSpec> registry = {});

/// Stages 3 and 4: weighted sum of the scaled rows using the priority
/// weights of the matching preferences, then ranking. Every matrix column
/// must have a preference supplying its weight.
QualityRanking saw_scores(const DecisionMatrix& matrix,
                          std::span<const QualityPreference> prefs);

/// Criterion ids named by the preferences, first occurrence order.
std::vector<std::string> preference_criteria(std::span<const QualityPreference> prefs);

/// The four stages composed. The decision matrix is built over the stage-1
/// survivors only; when no source survives the ranking is empty. When
/// out_matrix is non-null it receives the scaled matrix for tracing. The
/// registry, when given, enables cost-direction inversion in stage 2.
QualityRanking quality_rank(std::span<const SourceProfile> sources,
                            std::span<const QualityPreference> prefs,
                            DiagnosticLog* diag = nullptr,
                            DecisionMatrix* out_matrix = nullptr,
                            std::span<const CriterionSpec> registry = {});

}  // namespace medselect
