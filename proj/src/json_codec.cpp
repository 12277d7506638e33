// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/json_codec.hpp"

#include <cmath>

#include "medselect/error.hpp"

namespace medselect::codec {
namespace {

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    raise(Errc::validation_failure, std::string("missing required key '") + key + "'");
  return *it;
}

std::string require_str(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string())
    raise(Errc::validation_failure, std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

double require_num(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number())
    raise(Errc::validation_failure, std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

std::map<std::string, std::string> string_map_from_json(const json& j, const char* what) {
  if (!j.is_object())
    raise(Errc::validation_failure, std::string(what) + " must be an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string())
      raise(Errc::validation_failure,
            std::string(what) + " value for '" + key + "' must be a string");
    out.emplace(key, value.get<std::string>());
  }
  return out;
}

std::vector<std::string> string_list_from_json(const json& j, const char* what) {
  if (!j.is_array())
    raise(Errc::validation_failure, std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const json& v : j) {
    if (!v.is_string())
      raise(Errc::validation_failure, std::string(what) + " entries must be strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

template <typename Fn>
auto wrap_document(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == Errc::validation_failure) throw;
    raise(Errc::validation_failure, std::string(what) + ": " + e.what(),
          errc_name(e.code()));
  } catch (const json::exception& e) {
    raise(Errc::validation_failure, std::string(what) + ": malformed JSON", e.what());
  }
}

}  // namespace

json to_json(const TermVector& v) {
  json arr = json::array();
  for (const TermEntry& e : v.entries()) arr.push_back({{"term", e.term}, {"weight", e.weight}});
  return arr;
}

TermVector term_vector_from_json(const json& j) {
  if (!j.is_array())
    raise(Errc::validation_failure, "term vector must be an array of {term, weight}");
  std::vector<TermEntry> raw;
  raw.reserve(j.size());
  for (const json& item : j)
    raw.push_back(TermEntry{require_str(item, "term"), require_num(item, "weight")});
  return validate_term_vector(raw);
}

json to_json(const QualityPreference& pref) {
  json j{{"criterion", pref.criterion},
         {"priority", std::string(priority_name(pref.priority))}};
  if (pref.constraint.has_value()) {
    j["comparator"] = std::string(comparator_name(pref.constraint->op));
    j["threshold"] = pref.constraint->threshold;
  }
  return j;
}

QualityPreference preference_from_json(const json& j) {
  QualityPreference pref;
  pref.criterion = require_str(j, "criterion");
  pref.priority = priority_from_name(require_str(j, "priority"));
  const bool has_cmp = j.contains("comparator");
  const bool has_thr = j.contains("threshold");
  if (has_cmp != has_thr)
    raise(Errc::validation_failure,
          "comparator and threshold must be given together", pref.criterion);
  if (has_cmp) {
    pref.constraint = QualityConstraint{comparator_from_name(require_str(j, "comparator")),
                                        require_num(j, "threshold")};
  }
  validate(pref);
  return pref;
}

json to_json(const CriterionSpec& spec) {
  return json{{"id", spec.id},
              {"unit", spec.unit},
              {"direction", std::string(direction_name(spec.direction))}};
}

CriterionSpec criterion_from_json(const json& j) {
  CriterionSpec spec;
  spec.id = require_str(j, "id");
  if (spec.id.empty()) raise(Errc::validation_failure, "criterion id must be non-empty");
  spec.unit = j.value("unit", std::string{});
  spec.direction = j.contains("direction")
                       ? direction_from_name(require_str(j, "direction"))
                       : CriterionDirection::benefit;
  return spec;
}

json to_json(const InteractionRecord& record) {
  json j{{"session_id", record.session_id},
         {"timestamp", record.timestamp.to_string()},
         {"query_text", record.query_text},
         {"selected_sources", record.selected_sources}};
  if (!record.feedback.empty()) {
    json fb = json::array();
    for (const Rating& r : record.feedback)
      fb.push_back({{"source_id", r.source_id}, {"rating", r.value}});
    j["feedback"] = std::move(fb);
  }
  return j;
}

InteractionRecord interaction_from_json(const json& j) {
  InteractionRecord record;
  record.session_id = require_str(j, "session_id");
  record.timestamp = Timestamp::parse(require_str(j, "timestamp"));
  record.query_text = j.value("query_text", std::string{});
  record.selected_sources = string_list_from_json(require(j, "selected_sources"),
                                                  "selected_sources");
  if (j.contains("feedback")) {
    const json& fb = j.at("feedback");
    if (!fb.is_array()) raise(Errc::validation_failure, "feedback must be an array");
    for (const json& item : fb) {
      const double value = require_num(item, "rating");
      if (value != 1.0 && value != -1.0)
        raise(Errc::validation_failure, "rating must be +1 or -1");
      record.feedback.push_back(Rating{require_str(item, "source_id"),
                                       static_cast<int>(value)});
    }
  }
  validate(record);
  return record;
}

json to_json(const SessionProfile& session) {
  json prefs = json::array();
  for (const QualityPreference& p : session.quality_preferences) prefs.push_back(to_json(p));
  return json{{"context", session.context},
              {"goals", to_json(session.goals)},
              {"quality_preferences", std::move(prefs)},
              {"session_id", session.session_id},
              {"opened_at", session.opened_at.to_string()}};
}

SessionProfile session_from_json(const json& j) {
  SessionProfile session;
  if (j.contains("context"))
    session.context = string_map_from_json(j.at("context"), "session context");
  session.goals = j.contains("goals") ? term_vector_from_json(j.at("goals")) : TermVector{};
  if (j.contains("quality_preferences")) {
    const json& prefs = j.at("quality_preferences");
    if (!prefs.is_array())
      raise(Errc::validation_failure, "quality_preferences must be an array");
    for (const json& p : prefs)
      session.quality_preferences.push_back(preference_from_json(p));
  }
  session.session_id = require_str(j, "session_id");
  session.opened_at = Timestamp::parse(require_str(j, "opened_at"));
  validate(session);
  return session;
}

json to_json(const UserProfile& user) {
  json expected = json::array();
  for (const QualityPreference& p : user.expected_quality) expected.push_back(to_json(p));
  json history = json::array();
  for (const InteractionRecord& rec : user.history) history.push_back(to_json(rec));
  json j{{"id", user.user_id},
         {"persistent",
          json{{"identity", user.identity},
               {"domains_of_interest", to_json(user.domains_of_interest)},
               {"expected_quality", std::move(expected)},
               {"security", user.security},
               {"history", std::move(history)}}}};
  if (user.current_session.has_value()) j["session"] = to_json(*user.current_session);
  return j;
}

UserProfile user_from_json(const json& j) {
  UserProfile user;
  user.user_id = require_str(j, "id");
  const json& persistent = require(j, "persistent");
  if (persistent.contains("identity"))
    user.identity = string_map_from_json(persistent.at("identity"), "identity");
  if (persistent.contains("domains_of_interest"))
    user.domains_of_interest = term_vector_from_json(persistent.at("domains_of_interest"));
  if (persistent.contains("expected_quality")) {
    const json& prefs = persistent.at("expected_quality");
    if (!prefs.is_array())
      raise(Errc::validation_failure, "expected_quality must be an array");
    for (const json& p : prefs) user.expected_quality.push_back(preference_from_json(p));
  }
  if (persistent.contains("security"))
    user.security = string_map_from_json(persistent.at("security"), "security");
  if (persistent.contains("history")) {
    const json& history = persistent.at("history");
    if (!history.is_array()) raise(Errc::validation_failure, "history must be an array");
    for (const json& rec : history) user.history.push_back(interaction_from_json(rec));
  }
  if (j.contains("session")) user.current_session = session_from_json(j.at("session"));
  validate(user);
  return user;
}

json to_json(const SourceProfile& source) {
  json identity{{"name", source.identity.name},
                {"url", source.identity.url},
                {"owner", source.identity.owner},
                {"languages", source.identity.languages},
                {"content_types", source.identity.content_types}};
  if (source.identity.port.has_value()) identity["port"] = *source.identity.port;
  if (source.identity.size_bytes.has_value()) identity["size_bytes"] = *source.identity.size_bytes;
  json j{{"id", source.source_id},
         {"identity", std::move(identity)},
         {"content", to_json(source.content)},
         {"quality", source.quality}};
  if (source.ontology_ref.has_value()) j["ontology_ref"] = *source.ontology_ref;
  return j;
}

SourceProfile source_from_json(const json& j) {
  SourceProfile source;
  source.source_id = require_str(j, "id");
  if (j.contains("identity")) {
    const json& id = j.at("identity");
    source.identity.name = id.value("name", std::string{});
    source.identity.url = id.value("url", std::string{});
    source.identity.owner = id.value("owner", std::string{});
    if (id.contains("port")) {
      const int port = static_cast<int>(require_num(id, "port"));
      if (port < 1 || port > 65535)
        raise(Errc::validation_failure, "identity port must lie in [1,65535]");
      source.identity.port = port;
    }
    if (id.contains("size_bytes")) {
      const double size = require_num(id, "size_bytes");
      if (size < 0) raise(Errc::validation_failure, "size_bytes must be non-negative");
      source.identity.size_bytes = static_cast<std::uint64_t>(size);
    }
    if (id.contains("languages"))
      source.identity.languages = string_list_from_json(id.at("languages"), "languages");
    if (id.contains("content_types"))
      source.identity.content_types =
          string_list_from_json(id.at("content_types"), "content_types");
  }
  if (j.contains("content")) source.content = term_vector_from_json(j.at("content"));
  if (j.contains("quality")) {
    const json& quality = j.at("quality");
    if (!quality.is_object())
      raise(Errc::validation_failure, "quality must be an object of numbers");
    for (const auto& [criterion, value] : quality.items()) {
      if (!value.is_number())
        raise(Errc::validation_failure,
              "quality value for '" + criterion + "' must be a number");
      source.quality.emplace(criterion, value.get<double>());
    }
  }
  if (j.contains("ontology_ref")) source.ontology_ref = require_str(j, "ontology_ref");
  validate(source);
  return source;
}

json to_json(const ProbeReport& report) {
  json j{{"source_id", report.source_id},
         {"completeness_pct", report.completeness_pct},
         {"probes_sent", report.probes_sent},
         {"probes_answered", report.probes_answered}};
  if (report.response_time_s.has_value()) j["response_time_s"] = *report.response_time_s;
  if (report.freshness.has_value()) j["freshness"] = *report.freshness;
  if (report.reputation.has_value()) j["reputation"] = *report.reputation;
  return j;
}

ProbeReport probe_report_from_json(const json& j) {
  ProbeReport report;
  report.source_id = require_str(j, "source_id");
  report.completeness_pct = require_num(j, "completeness_pct");
  report.probes_sent = static_cast<int>(require_num(j, "probes_sent"));
  report.probes_answered = static_cast<int>(require_num(j, "probes_answered"));
  if (j.contains("response_time_s")) report.response_time_s = require_num(j, "response_time_s");
  if (j.contains("freshness")) report.freshness = require_num(j, "freshness");
  if (j.contains("reputation")) report.reputation = require_num(j, "reputation");

  if (report.probes_sent < 0 || report.probes_answered < 0 ||
      report.probes_answered > report.probes_sent)
    raise(Errc::validation_failure, "probe counters are inconsistent");
  const double expected = report.probes_sent == 0
                              ? 0.0
                              : 100.0 * report.probes_answered / report.probes_sent;
  if (std::abs(report.completeness_pct - expected) > 1e-9)
    raise(Errc::validation_failure,
          "completeness_pct does not equal 100 * answered / sent");
  if (report.response_time_s.has_value() && *report.response_time_s < 0)
    raise(Errc::validation_failure, "response_time_s must be non-negative");
  return report;
}

json to_json(const CommunityProfile& community) {
  return json{{"community_id", community.community_id},
              {"members", community.member_user_ids},
              {"centroid", to_json(community.centroid)}};
}

json to_json(const RankedSource& entry) {
  return json{{"source_id", entry.source_id},
              {"content_sim", entry.content_sim},
              {"saw_score", entry.saw_score},
              {"rank", entry.rank}};
}

json to_json(const SelectionTrace& trace) {
  json content = json::array();
  for (const ScoredSource& s : trace.content_scores)
    content.push_back({{"source_id", s.source_id}, {"sim", s.sim}});
  json scaled = json::array();
  for (std::size_t i = 0; i < trace.matrix.source_ids.size(); ++i)
    scaled.push_back({{"source_id", trace.matrix.source_ids[i]},
                      {"values", trace.matrix.scaled[i]}});
  json saw = json::array();
  for (const SawEntry& e : trace.saw)
    saw.push_back({{"source_id", e.source_id}, {"score", e.score}});
  return json{{"content_scores", std::move(content)},
              {"selected", trace.selected},
              {"survivors", trace.survivors},
              {"criteria", trace.matrix.criterion_ids},
              {"scaled_matrix", std::move(scaled)},
              {"saw_scores", std::move(saw)},
              {"notes", trace.notes}};
}

json to_json(const SelectionResult& result, bool include_trace) {
  json entries = json::array();
  for (const RankedSource& e : result.entries) entries.push_back(to_json(e));
  json j{{"entries", std::move(entries)}};
  if (include_trace) j["trace"] = to_json(result.trace);
  return j;
}

std::string serialize(const json& j) { return j.dump(2) + "\n"; }

UserProfile parse_user_document(const std::string& text) {
  return wrap_document("user profile document", [&] {
    return user_from_json(json::parse(text));
  });
}

SourceProfile parse_source_document(const std::string& text) {
  return wrap_document("source profile document", [&] {
    return source_from_json(json::parse(text));
  });
}

std::vector<CriterionSpec> parse_criteria_document(const std::string& text) {
  return wrap_document("criteria document", [&] {
    const json j = json::parse(text);
    if (!j.is_array())
      raise(Errc::validation_failure, "criteria document must be an array");
    std::vector<CriterionSpec> criteria;
    for (const json& item : j) criteria.push_back(criterion_from_json(item));
    for (std::size_t i = 0; i < criteria.size(); ++i)
      for (std::size_t k = i + 1; k < criteria.size(); ++k)
        if (criteria[i].id == criteria[k].id)
          raise(Errc::validation_failure, "duplicate criterion id", criteria[i].id);
    return criteria;
  });
}

ProbeReport parse_probe_report_document(const std::string& text) {
  return wrap_document("probe report document", [&] {
    return probe_report_from_json(json::parse(text));
  });
}

std::string user_document(const UserProfile& user) { return serialize(to_json(user)); }

std::string source_document(const SourceProfile& source) {
  return serialize(to_json(source));
}

std::string criteria_document(std::span<const CriterionSpec> criteria) {
  json arr = json::array();
  for (const CriterionSpec& spec : criteria) arr.push_back(to_json(spec));
  return serialize(arr);
}

}  // namespace medselect::codec
