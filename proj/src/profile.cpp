// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/profile.hpp"

#include <set>

#include "medselect/error.hpp"

namespace medselect {

double priority_weight(PriorityLevel level) noexcept {
  switch (level) {
    case PriorityLevel::mandatory: return 0.4;
    case PriorityLevel::desirable: return 0.3;
    case PriorityLevel::not_desirable: return 0.2;
    case PriorityLevel::indifferent: return 0.1;
  }
  return 0.1;
}

std::string_view priority_name(PriorityLevel level) noexcept {
  switch (level) {
    case PriorityLevel::mandatory: return "mandatory";
    case PriorityLevel::desirable: return "desirable";
    case PriorityLevel::not_desirable: return "not_desirable";
    case PriorityLevel::indifferent: return "indifferent";
  }
  return "indifferent";
}

PriorityLevel priority_from_name(std::string_view name) {
  if (name == "mandatory") return PriorityLevel::mandatory;
  if (name == "desirable") return PriorityLevel::desirable;
  if (name == "not_desirable") return PriorityLevel::not_desirable;
  if (name == "indifferent") return PriorityLevel::indifferent;
  raise(Errc::validation_failure, "unknown priority level", std::string(name));
}

std::string_view comparator_name(Comparator cmp) noexcept {
  return cmp == Comparator::at_least ? "at_least" : "at_most";
}

Comparator comparator_from_name(std::string_view name) {
  if (name == "at_least") return Comparator::at_least;
  if (name == "at_most") return Comparator::at_most;
  raise(Errc::validation_failure, "unknown comparator", std::string(name));
}

bool QualityConstraint::satisfied_by(double value) const noexcept {
  return op == Comparator::at_least ? value >= threshold : value <= threshold;
}

std::string_view direction_name(CriterionDirection dir) noexcept {
  return dir == CriterionDirection::benefit ? "benefit" : "cost";
}

CriterionDirection direction_from_name(std::string_view name) {
  if (name == "benefit") return CriterionDirection::benefit;
  if (name == "cost") return CriterionDirection::cost;
  raise(Errc::validation_failure, "unknown criterion direction", std::string(name));
}

void validate(const QualityPreference& pref) {
  if (pref.criterion.empty())
    raise(Errc::validation_failure, "quality preference has an empty criterion id");
  const bool must_constrain = pref.priority == PriorityLevel::mandatory ||
                              pref.priority == PriorityLevel::desirable;
  if (must_constrain && !pref.constraint.has_value())
    raise(Errc::validation_failure,
          "mandatory/desirable preference requires a constraint",
          pref.criterion);
}

void validate(const SessionProfile& session) {
  std::set<std::string> seen;
  for (const QualityPreference& pref : session.quality_preferences) {
    validate(pref);
    if (!seen.insert(pref.criterion).second)
      raise(Errc::validation_failure,
            "more than one quality preference for criterion", pref.criterion);
  }
}

void validate(const InteractionRecord& record) {
  for (const Rating& r : record.feedback) {
    if (r.value != 1 && r.value != -1)
      raise(Errc::validation_failure, "rating must be +1 or -1", r.source_id);
    bool selected = false;
    for (const std::string& id : record.selected_sources)
      if (id == r.source_id) { selected = true; break; }
    if (!selected)
      raise(Errc::validation_failure,
            "rating refers to a source that was not selected in this session",
            r.source_id);
  }
}

void validate(const UserProfile& user) {
  if (user.user_id.empty())
    raise(Errc::validation_failure, "user_id must be non-empty");
  for (const QualityPreference& pref : user.expected_quality) validate(pref);
  const InteractionRecord* prev = nullptr;
  for (const InteractionRecord& rec : user.history) {
    validate(rec);
    if (prev != nullptr && rec.timestamp < prev->timestamp)
      raise(Errc::validation_failure,
            "history timestamps must be non-decreasing", rec.session_id);
    prev = &rec;
  }
  if (user.current_session.has_value()) validate(*user.current_session);
}

void validate(const SourceProfile& source) {
  if (source.source_id.empty())
    raise(Errc::validation_failure, "source_id must be non-empty");
  for (const auto& [criterion, value] : source.quality) {
    if (criterion.empty())
      raise(Errc::validation_failure, "quality map has an empty criterion id",
            source.source_id);
    (void)value;
  }
}

}  // namespace medselect
