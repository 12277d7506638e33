// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medselect/term_vector.hpp"
#include "medselect/timestamp.hpp"

namespace medselect {

// ---------------------------------------------------------------------------
// Quality preferences

enum class PriorityLevel { mandatory, desirable, not_desirable, indifferent };

/// Fixed priority scale. Doubles as the SAW criterion weight. The four
/// values sum to 1.
double priority_weight(PriorityLevel level) noexcept;

std::string_view priority_name(PriorityLevel level) noexcept;
PriorityLevel priority_from_name(std::string_view name);

enum class Comparator { at_least, at_most };

std::string_view comparator_name(Comparator cmp) noexcept;
Comparator comparator_from_name(std::string_view name);

struct QualityConstraint {
  Comparator op = Comparator::at_least;
  double threshold = 0.0;

  /// Inclusive on both comparators: at_least t accepts value == t.
  bool satisfied_by(double value) const noexcept;

  bool operator==(const QualityConstraint&) const = default;
};

struct QualityPreference {
  std::string criterion;
  PriorityLevel priority = PriorityLevel::indifferent;
  std::optional<QualityConstraint> constraint;  // absent == "not specified"

  /// Mandatory and desirable preferences act as hard filters.
  bool is_filtering() const noexcept {
    return constraint.has_value() && (priority == PriorityLevel::mandatory ||
                                      priority == PriorityLevel::desirable);
  }

  bool operator==(const QualityPreference&) const = default;
};

enum class CriterionDirection { benefit, cost };

std::string_view direction_name(CriterionDirection dir) noexcept;
CriterionDirection direction_from_name(std::string_view name);

struct CriterionSpec {
  std::string id;
  std::string unit;
  CriterionDirection direction = CriterionDirection::benefit;

  bool operator==(const CriterionSpec&) const = default;
};

// ---------------------------------------------------------------------------
// User side

struct Rating {
  std::string source_id;
  int value = 0;  // +1 or -1

  bool operator==(const Rating&) const = default;
};

struct InteractionRecord {
  std::string session_id;
  Timestamp timestamp;
  std::string query_text;
  std::vector<std::string> selected_sources;
  std::vector<Rating> feedback;  // empty == no feedback yet

  bool operator==(const InteractionRecord&) const = default;
};

struct SessionProfile {
  std::map<std::string, std::string> context;  // location, time, device, role, ...
  TermVector goals;
  std::vector<QualityPreference> quality_preferences;
  std::string session_id;
  Timestamp opened_at;

  bool operator==(const SessionProfile&) const = default;
};

struct UserProfile {
  std::string user_id;
  std::map<std::string, std::string> identity;
  TermVector domains_of_interest;
  std::vector<QualityPreference> expected_quality;
  std::map<std::string, std::string> security;  // stored verbatim, never interpreted
  std::vector<InteractionRecord> history;
  std::optional<SessionProfile> current_session;

  bool operator==(const UserProfile&) const = default;
};

// ---------------------------------------------------------------------------
// Source side

struct SourceIdentity {
  std::string name;
  std::string url;
  std::string owner;
  std::optional<int> port;
  std::optional<std::uint64_t> size_bytes;
  std::vector<std::string> languages;
  std::vector<std::string> content_types;

  bool operator==(const SourceIdentity&) const = default;
};

struct SourceProfile {
  std::string source_id;
  SourceIdentity identity;
  TermVector content;
  std::map<std::string, double> quality;  // criterion id -> measured value
  std::optional<std::string> ontology_ref;  // opaque, never parsed

  bool operator==(const SourceProfile&) const = default;
};

struct CommunityProfile {
  std::string community_id;
  std::vector<std::string> member_user_ids;
  TermVector centroid;  // per-term mean of member domains of interest

  bool operator==(const CommunityProfile&) const = default;
};

// ---------------------------------------------------------------------------
// Structural validation (term-vector invariants hold by construction; these
// check the rules that span fields). All throw Errc::validation_failure.

void validate(const QualityPreference& pref);
void validate(const SessionProfile& session);
void validate(const UserProfile& user);
void validate(const SourceProfile& source);
void validate(const InteractionRecord& record);

}  // namespace medselect
