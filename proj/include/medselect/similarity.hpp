// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "medselect/profile.hpp"
#include "medselect/term_vector.hpp"

namespace medselect {

/// Fitness parameters of the combined similarity plus the relevance
/// threshold (in percent). Bounds (alpha/beta/gamma in [0,1], threshold in
/// [0,100]) are enforced at the service and CLI boundaries via
/// validate_boundary(); the in-process pipeline accepts any threshold and
/// simply selects nothing when it is unsatisfiable.
struct SimilarityParams {
  double alpha = 1.0 / 3.0;
  double beta = 1.0 / 3.0;
  double gamma = 1.0 / 3.0;
  double threshold_pct = 50.0;
};

void validate_boundary(const SimilarityParams& params);

/// Combined Cosine/Jaccard/Dice similarity of two weighted term vectors:
///
///   sim = a * (alpha/sqrt(b*c) + beta/(b+c-a) + 2*gamma/(b+c))
///
/// with a = sum(wu*ws), b = sum(wu^2), c = sum(ws^2) over the aligned
/// vocabulary. When the vectors share no mass (a == 0, which covers b == 0
/// and c == 0) the similarity is 0; no other denominator can vanish since
/// a <= sqrt(b*c) <= (b+c)/2.
double combined_similarity(const TermVector& u, const TermVector& s, double alpha,
                           double beta, double gamma);

enum class SimilarityKind { cosine, jaccard, dice, average };

std::string_view similarity_kind_name(SimilarityKind kind) noexcept;
/// Accepts "cosine" as well as the CLI spelling "cosine-only", etc.
SimilarityKind similarity_kind_from_name(std::string_view name);

/// The classic coefficients as fixed parameterizations of the combined
/// measure: cosine (1,0,0), jaccard (0,1,0), dice (0,0,1),
/// average (1/3,1/3,1/3).
double named_similarity(const TermVector& u, const TermVector& s, SimilarityKind kind);

struct ScoredSource {
  std::string source_id;
  double sim = 0.0;

  bool operator==(const ScoredSource&) const = default;
};

/// Scores every source against the goals vector and sorts the result by
/// descending similarity, ties broken by ascending source id.
///
/// score_sources is the OpenMP kernel used by the pipeline;
/// score_sources_serial is the reference implementation kept for testing
/// and for single-threaded timing. Their outputs are bit-identical.
std::vector<ScoredSource> score_sources(const TermVector& goals,
                                        std::span<const SourceProfile> sources,
                                        const SimilarityParams& params);
std::vector<ScoredSource> score_sources_serial(const TermVector& goals,
                                               std::span<const SourceProfile> sources,
                                               const SimilarityParams& params);

}  // namespace medselect
