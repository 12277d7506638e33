// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "medselect/pipeline.hpp"
#include "medselect/probe.hpp"
#include "medselect/profile.hpp"

namespace medselect::codec {

using nlohmann::json;

// Element codecs. Parsers raise the precise error code of the violated
// invariant (e.g. weight_out_of_range for a bad term weight).
json to_json(const TermVector& v);
TermVector term_vector_from_json(const json& j);

json to_json(const QualityPreference& pref);
QualityPreference preference_from_json(const json& j);

json to_json(const CriterionSpec& spec);
CriterionSpec criterion_from_json(const json& j);

json to_json(const InteractionRecord& record);
InteractionRecord interaction_from_json(const json& j);

json to_json(const SessionProfile& session);
SessionProfile session_from_json(const json& j);

json to_json(const UserProfile& user);
UserProfile user_from_json(const json& j);

json to_json(const SourceProfile& source);
SourceProfile source_from_json(const json& j);

json to_json(const ProbeReport& report);
ProbeReport probe_report_from_json(const json& j);

json to_json(const CommunityProfile& community);

json to_json(const RankedSource& entry);
json to_json(const SelectionTrace& trace);
json to_json(const SelectionResult& result, bool include_trace);

/// Canonical text form of any schema document: two-space indent,
/// alphabetically ordered keys, trailing newline.
std::string serialize(const json& j);

// Whole-document helpers. These wrap every inner failure (including JSON
// syntax errors and element-level invariant violations) into
// Errc::validation_failure so storage and wire layers see one code for
// "this document is not valid".
UserProfile parse_user_document(const std::string& text);
SourceProfile parse_source_document(const std::string& text);
std::vector<CriterionSpec> parse_criteria_document(const std::string& text);
ProbeReport parse_probe_report_document(const std::string& text);

std::string user_document(const UserProfile& user);
std::string source_document(const SourceProfile& source);
std::string criteria_document(std::span<const CriterionSpec> criteria);

}  // namespace medselect::codec
