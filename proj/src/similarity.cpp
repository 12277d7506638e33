// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "medselect/error.hpp"

namespace medselect {
namespace {

void check_fitness_params(double alpha, double beta, double gamma) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(alpha) || !in_unit(beta) || !in_unit(gamma))
    raise(Errc::invalid_params, "fitness parameters must lie in [0,1]");
}

// Single arithmetic route shared by the serial and the parallel batch path,
// so both produce bit-identical scores.
double combined_unchecked(const TermVector& u, const TermVector& s, double alpha,
                          double beta, double gamma) {
  const auto& a_entries = u.entries();
  const auto& b_entries = s.entries();
  double a = 0.0, b = 0.0, c = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a_entries.size() && j < b_entries.size()) {
    const auto& eu = a_entries[i];
    const auto& es = b_entries[j];
    if (eu.term < es.term) {
      b += eu.weight * eu.weight;
      ++i;
    } else if (es.term < eu.term) {
      c += es.weight * es.weight;
      ++j;
    } else {
      a += eu.weight * es.weight;
      b += eu.weight * eu.weight;
      c += es.weight * es.weight;
      ++i;
      ++j;
    }
  }
  for (; i < a_entries.size(); ++i) b += a_entries[i].weight * a_entries[i].weight;
  for (; j < b_entries.size(); ++j) c += b_entries[j].weight * b_entries[j].weight;

  if (a == 0.0) return 0.0;
  // Combined as alpha*cosine + beta*jaccard + gamma*dice rather than the
  // factored a*(...) form: for identical vectors each coefficient is then
  // exactly 1.0 (sqrt(a*a) == a and (a+a)-a == a in round-to-nearest), so
  // self-similarity equals alpha+beta+gamma exactly and an identical source
  // clears a 100% threshold.
  const double cosine = a / std::sqrt(b * c);
  const double jaccard = a / (b + c - a);
  const double dice = 2.0 * a / (b + c);
  return alpha * cosine + beta * jaccard + gamma * dice;
}

void sort_scored(std::vector<ScoredSource>& scored) {
  std::sort(scored.begin(), scored.end(), [](const ScoredSource& x, const ScoredSource& y) {
    if (x.sim != y.sim) return x.sim > y.sim;
    return x.source_id < y.source_id;
  });
}

}  // namespace

void validate_boundary(const SimilarityParams& params) {
  check_fitness_params(params.alpha, params.beta, params.gamma);
  if (!(params.threshold_pct >= 0.0 && params.threshold_pct <= 100.0))
    raise(Errc::invalid_params, "threshold_pct must lie in [0,100]",
          std::to_string(params.threshold_pct));
}

double combined_similarity(const TermVector& u, const TermVector& s, double alpha,
                           double beta, double gamma) {
  check_fitness_params(alpha, beta, gamma);
  return combined_unchecked(u, s, alpha, beta, gamma);
}

std::string_view similarity_kind_name(SimilarityKind kind) noexcept {
  switch (kind) {
    case SimilarityKind::cosine: return "cosine";
    case SimilarityKind::jaccard: return "jaccard";
    case SimilarityKind::dice: return "dice";
    case SimilarityKind::average: return "average";
  }
  return "average";
}

SimilarityKind similarity_kind_from_name(std::string_view name) {
  std::string_view base = name;
  if (base.size() > 5 && base.substr(base.size() - 5) == "-only")
    base = base.substr(0, base.size() - 5);
  if (base == "cosine") return SimilarityKind::cosine;
  if (base == "jaccard") return SimilarityKind::jaccard;
  if (base == "dice") return SimilarityKind::dice;
  if (base == "average" || base == "avg") return SimilarityKind::average;
  raise(Errc::invalid_params, "unknown similarity kind", std::string(name));
}

double named_similarity(const TermVector& u, const TermVector& s, SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::cosine: return combined_unchecked(u, s, 1.0, 0.0, 0.0);
    case SimilarityKind::jaccard: return combined_unchecked(u, s, 0.0, 1.0, 0.0);
    case SimilarityKind::dice: return combined_unchecked(u, s, 0.0, 0.0, 1.0);
    case SimilarityKind::average:
      return combined_unchecked(u, s, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
  }
  return 0.0;
}

std::vector<ScoredSource> score_sources_serial(const TermVector& goals,
                                               std::span<const SourceProfile> sources,
                                               const SimilarityParams& params) {
  check_fitness_params(params.alpha, params.beta, params.gamma);
  std::vector<ScoredSource> scored(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    scored[i].source_id = sources[i].source_id;
    scored[i].sim =
        combined_unchecked(goals, sources[i].content, params.alpha, params.beta, params.gamma);
  }
  sort_scored(scored);
  return scored;
}

std::vector<ScoredSource> score_sources(const TermVector& goals,
                                        std::span<const SourceProfile> sources,
                                        const SimilarityParams& params) {
  check_fitness_params(params.alpha, params.beta, params.gamma);
  std::vector<ScoredSource> scored(sources.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(sources.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    scored[i].source_id = sources[i].source_id;
    scored[i].sim =
        combined_unchecked(goals, sources[i].content, params.alpha, params.beta, params.gamma);
  }
  sort_scored(scored);
  return scored;
}

}  // namespace medselect
