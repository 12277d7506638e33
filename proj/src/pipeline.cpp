// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "medselect/error.hpp"
#include "medselect/query_parse.hpp"

namespace medselect {
namespace {

TermVector resolve_goals(const SelectionRequest& request, const SessionProfile* session,
                         const UserProfile* user, std::span<const SourceProfile> sources) {
  std::vector<TermEntry> merged;
  if (session != nullptr) merged = session->goals.entries();

  if (request.query_text.has_value() && !request.query_text->empty()) {
    std::unordered_set<std::string> vocabulary;
    for (const SourceProfile& source : sources)
      for (const TermEntry& e : source.content.entries()) vocabulary.insert(e.term);
    if (user != nullptr)
      for (const TermEntry& e : user->domains_of_interest.entries()) vocabulary.insert(e.term);

    TermVector parsed = parse_query(*request.query_text, vocabulary);
    for (const TermEntry& e : parsed.entries()) {
      bool in_session = std::any_of(merged.begin(), merged.end(),
                                    [&](const TermEntry& m) { return m.term == e.term; });
      if (!in_session) merged.push_back(e);  // session goals win per term
    }
  }
  return TermVector::from_canonical(std::move(merged));
}

std::vector<QualityPreference> resolve_preferences(const SessionProfile* session,
                                                   const UserProfile* user) {
  if (session != nullptr && !session->quality_preferences.empty())
    return session->quality_preferences;
  if (user != nullptr && !user->expected_quality.empty()) return user->expected_quality;
  return {};
}

/// Fallback when neither the session nor the persistent profile states any
/// preference: indifferent (weight 0.1) preferences over the criteria
/// measured on every survivor, so available quality data still orders the
/// result without filtering anything.
std::vector<QualityPreference> indifferent_over_common_criteria(
    std::span<const SourceProfile> survivors) {
  std::vector<QualityPreference> prefs;
  if (survivors.empty()) return prefs;
  std::set<std::string> common;
  for (const auto& [criterion, value] : survivors.front().quality) common.insert(criterion);
  for (const SourceProfile& source : survivors) {
    std::set<std::string> keep;
    for (const std::string& criterion : common)
      if (source.quality.contains(criterion)) keep.insert(criterion);
    common = std::move(keep);
  }
  for (const std::string& criterion : common)
    prefs.push_back(QualityPreference{criterion, PriorityLevel::indifferent, std::nullopt});
  return prefs;
}

}  // namespace

SelectionResult select_sources(const SelectionRequest& request, const UserProfile* user,
                               std::span<const SourceProfile> sources, DiagnosticLog* diag,
                               std::span<const CriterionSpec> registry) {
  if (sources.empty())
    raise(Errc::empty_source_set, "selection requires at least one source");
  if (request.max_results.has_value() && *request.max_results <= 0)
    raise(Errc::invalid_params, "max_results must be positive");

  const SessionProfile* session = nullptr;
  if (request.session.has_value())
    session = &*request.session;
  else if (user != nullptr && user->current_session.has_value())
    session = &*user->current_session;

  TermVector goals = resolve_goals(request, session, user, sources);
  if (goals.empty())
    raise(Errc::no_goals, "no resolvable goals: session goals empty and query yielded no terms");

  SelectionResult result;
  DiagnosticLog local;

  ContentMatchResult cm = content_match(goals, sources, request.params);
  result.trace.content_scores = cm.scored;
  for (const ScoredSource& s : cm.selected) result.trace.selected.push_back(s.source_id);

  std::map<std::string, const SourceProfile*> by_id;
  for (const SourceProfile& source : sources) by_id[source.source_id] = &source;
  std::vector<SourceProfile> candidates;
  candidates.reserve(cm.selected.size());
  for (const ScoredSource& s : cm.selected) candidates.push_back(*by_id.at(s.source_id));

  std::vector<QualityPreference> prefs = resolve_preferences(session, user);
  std::vector<SawEntry> saw_entries;
  if (!candidates.empty()) {
    std::vector<SourceProfile> survivors =
        filter_by_quality_preferences(candidates, prefs, &local);
    for (const SourceProfile& s : survivors) result.trace.survivors.push_back(s.source_id);

    if (!survivors.empty()) {
      if (prefs.empty()) {
        prefs = indifferent_over_common_criteria(survivors);
        local.add("no quality preferences given; weighting " +
                  std::to_string(prefs.size()) +
                  " universally measured criteria as indifferent");
      }
      std::vector<std::string> criteria = preference_criteria(prefs);
      result.trace.matrix = scale_decision_matrix(survivors, criteria, registry);
      QualityRanking ranking = saw_scores(result.trace.matrix, prefs);
      saw_entries = std::move(ranking.entries);
    }
  }
  result.trace.saw = saw_entries;

  std::map<std::string, double> sim_by_id;
  for (const ScoredSource& s : cm.scored) sim_by_id[s.source_id] = s.sim;

  for (const SawEntry& e : saw_entries)
    result.entries.push_back(RankedSource{e.source_id, sim_by_id.at(e.source_id), e.score, 0});
  std::sort(result.entries.begin(), result.entries.end(),
            [](const RankedSource& a, const RankedSource& b) {
              if (a.saw_score != b.saw_score) return a.saw_score > b.saw_score;
              if (a.content_sim != b.content_sim) return a.content_sim > b.content_sim;
              return a.source_id < b.source_id;
            });
  if (request.max_results.has_value() &&
      result.entries.size() > static_cast<std::size_t>(*request.max_results))
    result.entries.resize(static_cast<std::size_t>(*request.max_results));
  for (std::size_t i = 0; i < result.entries.size(); ++i)
    result.entries[i].rank = static_cast<int>(i) + 1;

  result.trace.notes = local.entries;
  if (diag != nullptr)
    for (std::string& entry : local.entries) diag->add(std::move(entry));
  return result;
}

}  // namespace medselect
