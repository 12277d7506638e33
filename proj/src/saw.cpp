// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/saw.hpp"

#include <algorithm>
#include <limits>

namespace medselect {

std::vector<SourceProfile> filter_by_quality_preferences(
    std::span<const SourceProfile> sources, std::span<const QualityPreference> prefs,
    DiagnosticLog* diag) {
  for (const QualityPreference& pref : prefs) validate(pref);

  std::vector<const QualityPreference*> filtering;
  for (const QualityPreference& pref : prefs)
    if (pref.is_filtering()) filtering.push_back(&pref);

  std::vector<SourceProfile> kept;
  kept.reserve(sources.size());
  for (const SourceProfile& source : sources) {
    bool passes = true;
    for (const QualityPreference* pref : filtering) {
      auto it = source.quality.find(pref->criterion);
      if (it == source.quality.end()) {
        note(diag, "source '" + source.source_id + "' excluded: no measurement for filtering criterion '" +
                       pref->criterion + "'");
        passes = false;
        break;
      }
      if (!pref->constraint->satisfied_by(it->second)) {
        passes = false;
        break;
      }
    }
    if (passes) kept.push_back(source);
  }
  return kept;
}

DecisionMatrix scale_decision_matrix(std::span<const SourceProfile> sources,
                                     std::span<const std::string> criterion_ids,
                                     std::span<const CriterionSpec> registry) {
  if (sources.empty())
    raise(Errc::empty_source_set, "decision matrix requires at least one source");

  DecisionMatrix m;
  m.criterion_ids.assign(criterion_ids.begin(), criterion_ids.end());
  m.source_ids.reserve(sources.size());
  m.raw.reserve(sources.size());
  for (const SourceProfile& source : sources) {
    m.source_ids.push_back(source.source_id);
    std::vector<double> row;
    row.reserve(criterion_ids.size());
    for (const std::string& criterion : criterion_ids) {
      auto it = source.quality.find(criterion);
      if (it == source.quality.end())
        raise(Errc::missing_quality_value,
              "source '" + source.source_id + "' has no measurement for criterion '" +
                  criterion + "'");
      row.push_back(it->second);
    }
    m.raw.push_back(std::move(row));
  }

  auto is_cost = [&](const std::string& criterion) {
    for (const CriterionSpec& spec : registry)
      if (spec.id == criterion) return spec.direction == CriterionDirection::cost;
    return false;
  };

  const std::size_t n = m.raw.size();
  const std::size_t cols = m.criterion_ids.size();
  m.scaled.assign(n, std::vector<double>(cols, 0.0));
  for (std::size_t j = 0; j < cols; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      lo = std::min(lo, m.raw[i][j]);
      hi = std::max(hi, m.raw[i][j]);
    }
    if (hi == lo) continue;  // degenerate column: no discriminating information
    const bool invert = is_cost(m.criterion_ids[j]);
    for (std::size_t i = 0; i < n; ++i) {
      const double scaled = (m.raw[i][j] - lo) / (hi - lo);
      m.scaled[i][j] = invert ? 1.0 - scaled : scaled;
    }
  }
  return m;
}

QualityRanking saw_scores(const DecisionMatrix& matrix,
                          std::span<const QualityPreference> prefs) {
  std::vector<double> weights;
  weights.reserve(matrix.criterion_ids.size());
  for (const std::string& criterion : matrix.criterion_ids) {
    auto it = std::find_if(prefs.begin(), prefs.end(), [&](const QualityPreference& p) {
      return p.criterion == criterion;
    });
    if (it == prefs.end())
      raise(Errc::unknown_criterion,
            "no preference supplies a weight for criterion '" + criterion + "'");
    weights.push_back(priority_weight(it->priority));
  }

  QualityRanking ranking;
  ranking.entries.reserve(matrix.source_ids.size());
  for (std::size_t i = 0; i < matrix.source_ids.size(); ++i) {
    double score = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) score += matrix.scaled[i][j] * weights[j];
    ranking.entries.push_back(SawEntry{matrix.source_ids[i], score});
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const SawEntry& a, const SawEntry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.source_id < b.source_id;
            });
  return ranking;
}

std::vector<std::string> preference_criteria(std::span<const QualityPreference> prefs) {
  std::vector<std::string> ids;
  for (const QualityPreference& pref : prefs) {
    if (std::find(ids.begin(), ids.end(), pref.criterion) == ids.end())
      ids.push_back(pref.criterion);
  }
  return ids;
}

QualityRanking quality_rank(std::span<const SourceProfile> sources,
                            std::span<const QualityPreference> prefs, DiagnosticLog* diag,
                            DecisionMatrix* out_matrix,
                            std::span<const CriterionSpec> registry) {
  if (sources.empty())
    raise(Errc::empty_source_set, "quality ranking requires at least one source");

  std::vector<SourceProfile> survivors = filter_by_quality_preferences(sources, prefs, diag);
  if (survivors.empty()) {
    if (out_matrix != nullptr) *out_matrix = DecisionMatrix{};
    return QualityRanking{};
  }

  std::vector<std::string> criteria = preference_criteria(prefs);
  DecisionMatrix matrix = scale_decision_matrix(survivors, criteria, registry);
  QualityRanking ranking = saw_scores(matrix, prefs);
  if (out_matrix != nullptr) *out_matrix = std::move(matrix);
  return ranking;
}

}  // namespace medselect
