// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/case_study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace medselect::case_study {
namespace {

TermVector goals_vector(double transportation, double accommodation, double restaurants,
                        double conference) {
  std::vector<TermEntry> entries;
  if (transportation > 0) entries.push_back({"transportation", transportation});
  if (accommodation > 0) entries.push_back({"accommodation", accommodation});
  if (restaurants > 0) entries.push_back({"restaurants", restaurants});
  if (conference > 0) entries.push_back({"conference", conference});
  return TermVector::from_canonical(std::move(entries));
}

SourceProfile make_source(const std::string& id, const std::string& name, double w1,
                          double w2, double w3, double w4,
                          std::map<std::string, double> quality) {
  SourceProfile source;
  source.source_id = id;
  source.identity.name = name;
  source.identity.url = "http://" + name + ".example";
  source.identity.owner = "demo";
  source.identity.content_types = {"documents"};
  source.content = goals_vector(w1, w2, w3, w4);
  source.quality = std::move(quality);
  return source;
}

struct ExpectedContent {
  const char* id;
  double sim;
  int rank;
};

// Reference content-matching table: similarity and rank per source at
// (1/3, 1/3, 1/3).
constexpr ExpectedContent kExpectedContent[] = {
    {"1", 0.596, 4}, {"2", 0.433, 6}, {"3", 0.650, 2}, {"4", 0.430, 7},
    {"5", 0.276, 8}, {"6", 0.593, 5}, {"7", 0.270, 9}, {"8", 0.643, 3},
    {"9", 0.933, 1}, {"10", 0.0, 10},
};

struct ExpectedQuality {
  const char* id;
  std::array<double, 4> scaled;  // reputation, freshness, completeness, response_time
  double score;
};

// Reference quality-matching table over the stage-1 survivors.
constexpr ExpectedQuality kExpectedQuality[] = {
    {"1", {1.0, 0.642, 0.0, 1.0}, 0.5642},
    {"3", {1.0, 1.0, 1.0, 1.0}, 0.9},
    {"6", {0.0, 0.0, 0.333, 0.0}, 0.0999},
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

Fixture fixture() {
  Fixture fx;

  fx.criteria = {
      {"reputation", "score", CriterionDirection::benefit},
      {"freshness", "years", CriterionDirection::benefit},
      {"completeness", "percent", CriterionDirection::benefit},
      {"response_time", "seconds", CriterionDirection::benefit},
  };

  UserProfile& user = fx.user;
  user.user_id = "user1";
  user.identity = {{"name", "User 1"}, {"occupation", "professor"}};
  user.domains_of_interest = TermVector::from_canonical(
      {{"travel", 0.8}, {"tourism", 0.6}});

  SessionProfile session;
  session.session_id = "s1";
  session.opened_at = Timestamp::parse("2026-08-01T09:00:00Z");
  session.context = {{"location", "rabat"}, {"device", "laptop"}};
  session.goals = goals_vector(0.9, 0.8, 0.7, 0.6);
  session.quality_preferences = {
      {"reputation", PriorityLevel::mandatory,
       QualityConstraint{Comparator::at_least, 3.0}},
      {"freshness", PriorityLevel::indifferent, std::nullopt},
      {"completeness", PriorityLevel::desirable,
       QualityConstraint{Comparator::at_least, 30.0}},
      {"response_time", PriorityLevel::indifferent, std::nullopt},
  };
  user.current_session = std::move(session);

  fx.sources = {
      make_source("1", "tourism-portal", 0.5, 0.0, 0.8, 0.0,
                  {{"reputation", 5}, {"freshness", 20}, {"completeness", 50},
                   {"response_time", 1}}),
      make_source("2", "city-guide", 0.6, 0.0, 0.0, 0.0, {}),
      make_source("3", "travel-agency", 0.2, 0.6, 0.4, 0.0,
                  {{"reputation", 5}, {"freshness", 30}, {"completeness", 80},
                   {"response_time", 1}}),
      make_source("4", "hotel-hub", 0.0, 0.7, 0.0, 0.1, {}),
      make_source("5", "hostel-list", 0.0, 0.3, 0.0, 0.0, {}),
      make_source("6", "transit-info", 0.8, 0.0, 0.2, 0.1,
                  {{"reputation", 3}, {"freshness", 2}, {"completeness", 60},
                   {"response_time", 0.5}}),
      make_source("7", "conference-hub", 0.0, 0.0, 0.0, 0.6, {}),
      make_source("8", "city-portal", 0.2, 0.4, 0.3, 0.1,
                  {{"reputation", 4}, {"freshness", 5}, {"completeness", 10},
                   {"response_time", 2}}),
      make_source("9", "trip-planner", 0.7, 0.6, 0.5, 0.3,
                  {{"reputation", 1}, {"freshness", 10}, {"completeness", 20},
                   {"response_time", 1}}),
      make_source("10", "empty-feed", 0.0, 0.0, 0.0, 0.0, {}),
  };

  fx.params = SimilarityParams{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 50.0};
  return fx;
}

Report evaluate(const Fixture& fx) {
  Report report;
  report.expected_selected = {"9", "3", "8", "1", "6"};
  report.expected_survivors = {"1", "3", "6"};
  report.expected_final = {"3", "1", "6"};

  SelectionRequest request;
  request.user_id = fx.user.user_id;
  request.params = fx.params;
  report.selection = select_sources(request, &fx.user, fx.sources);
  const SelectionTrace& trace = report.selection.trace;

  auto fail = [&](std::string what) { report.failures.push_back(std::move(what)); };

  // Content table: computed similarity per source vs reference.
  std::map<std::string, const ExpectedContent*> expected_content;
  for (const ExpectedContent& e : kExpectedContent) expected_content[e.id] = &e;
  for (std::size_t i = 0; i < trace.content_scores.size(); ++i) {
    const ScoredSource& s = trace.content_scores[i];
    const ExpectedContent* e = expected_content.count(s.source_id)
                                   ? expected_content[s.source_id]
                                   : nullptr;
    ContentRow row;
    row.source_id = s.source_id;
    row.sim = s.sim;
    row.rank = static_cast<int>(i) + 1;
    row.expected_sim = e != nullptr ? e->sim : 0.0;
    row.expected_rank = e != nullptr ? e->rank : 0;
    row.selected = std::find(trace.selected.begin(), trace.selected.end(), s.source_id) !=
                   trace.selected.end();
    if (e == nullptr) {
      fail("unexpected source '" + s.source_id + "' in content scores");
    } else if (std::abs(s.sim - e->sim) > kSimTolerance) {
      fail("source " + s.source_id + ": similarity " + fmt(s.sim) +
           " deviates from reference " + fmt(e->sim) + " by more than " +
           fmt(kSimTolerance));
    }
    report.content.push_back(row);
  }

  report.selected_order = trace.selected;
  if (report.selected_order != report.expected_selected) {
    std::string got;
    for (const std::string& id : report.selected_order) got += id + " ";
    fail("threshold-50 selection is [" + got + "], expected [9 3 8 1 6]");
  }

  // Stage-1 survivors.
  std::vector<std::string> survivors_sorted = trace.survivors;
  std::sort(survivors_sorted.begin(), survivors_sorted.end());
  std::vector<std::string> expected_sorted = report.expected_survivors;
  std::sort(expected_sorted.begin(), expected_sorted.end());
  if (survivors_sorted != expected_sorted) {
    std::string got;
    for (const std::string& id : trace.survivors) got += id + " ";
    fail("stage-1 survivors are {" + got + "}, expected {1 3 6}");
  }

  // Quality table: scaled cells and SAW scores vs reference.
  std::map<std::string, const ExpectedQuality*> expected_quality;
  for (const ExpectedQuality& e : kExpectedQuality) expected_quality[e.id] = &e;
  std::map<std::string, double> saw_by_id;
  for (const SawEntry& e : trace.saw) saw_by_id[e.source_id] = e.score;

  for (std::size_t i = 0; i < trace.matrix.source_ids.size(); ++i) {
    const std::string& id = trace.matrix.source_ids[i];
    QualityRow row;
    row.source_id = id;
    for (std::size_t j = 0; j < trace.matrix.criterion_ids.size() && j < 4; ++j)
      row.scaled[j] = trace.matrix.scaled[i][j];
    row.score = saw_by_id.count(id) ? saw_by_id[id] : 0.0;
    const ExpectedQuality* e = expected_quality.count(id) ? expected_quality[id] : nullptr;
    if (e != nullptr) {
      row.expected_scaled = e->scaled;
      row.expected_score = e->score;
      for (std::size_t j = 0; j < 4; ++j) {
        if (std::abs(row.scaled[j] - e->scaled[j]) > kCellTolerance)
          fail("source " + id + ", criterion " + trace.matrix.criterion_ids[j] +
               ": scaled value " + fmt(row.scaled[j]) + " deviates from reference " +
               fmt(e->scaled[j]));
      }
      if (std::abs(row.score - e->score) > kScoreTolerance)
        fail("source " + id + ": SAW score " + fmt(row.score) +
             " deviates from reference " + fmt(e->score));
    }
    report.quality.push_back(row);
  }
  for (const auto& [id, e] : expected_quality) {
    (void)e;
    if (!std::any_of(report.quality.begin(), report.quality.end(),
                     [&](const QualityRow& r) { return r.source_id == id; }))
      fail("source " + id + " missing from the quality table");
  }

  for (const RankedSource& e : report.selection.entries)
    report.final_order.push_back(e.source_id);
  if (report.final_order != report.expected_final) {
    std::string got;
    for (const std::string& id : report.final_order) got += id + " ";
    fail("final ranking is [" + got + "], expected [3 1 6]");
  }

  return report;
}

std::string render(const Report& report) {
  std::ostringstream out;
  char line[200];

  out << "Content matching (combined cosine/jaccard/dice, threshold 50%)\n";
  out << "  source      sim  reference    delta  rank  ref-rank  selected\n";
  for (const ContentRow& row : report.content) {
    std::snprintf(line, sizeof(line), "  %-6s %8.4f %10.3f %8.4f %5d %9d  %s\n",
                  row.source_id.c_str(), row.sim, row.expected_sim,
                  row.sim - row.expected_sim, row.rank, row.expected_rank,
                  row.selected ? "yes" : "no");
    out << line;
  }

  out << "\nQuality matching (stage-1 survivors, min-max scaled, SAW)\n";
  out << "  source  reputation  freshness  completeness  response_time     score  reference\n";
  for (const QualityRow& row : report.quality) {
    std::snprintf(line, sizeof(line),
                  "  %-6s %11.4f %10.4f %13.4f %14.4f %9.4f %10.4f\n",
                  row.source_id.c_str(), row.scaled[0], row.scaled[1], row.scaled[2],
                  row.scaled[3], row.score, row.expected_score);
    out << line;
  }

  out << "\nFinal ranking:";
  for (const std::string& id : report.final_order) out << " " << id;
  out << "  (expected:";
  for (const std::string& id : report.expected_final) out << " " << id;
  out << ")\n";

  if (!report.failures.empty()) {
    out << "\nFailed checks:\n";
    for (const std::string& f : report.failures) out << "  - " << f << "\n";
  }
  out << "\nverdict: " << (report.pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace medselect::case_study
