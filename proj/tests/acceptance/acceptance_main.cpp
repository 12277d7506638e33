// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
//
// Acceptance suite: one check per shipped guarantee, one pass/fail line
// each. Exits non-zero when any check fails.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "medselect/case_study.hpp"
#include "medselect/json_codec.hpp"
#include "medselect/mock_source.hpp"
#include "medselect/pipeline.hpp"
#include "medselect/probe.hpp"
#include "medselect/service.hpp"
#include "medselect/store.hpp"
#include "../support/oracles.hpp"

using namespace medselect;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = ::popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  while (std::fgets(buffer, sizeof(buffer), pipe) != nullptr) result.output += buffer;
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string check_content_matching() {
  const auto fx = case_study::fixture();
  const auto start = std::chrono::steady_clock::now();
  const ContentMatchResult cm =
      content_match(fx.user.current_session->goals, fx.sources, fx.params);
  const double elapsed = seconds_since(start);

  const struct { const char* id; double sim; } reference[] = {
      {"1", 0.596}, {"2", 0.433}, {"3", 0.650}, {"4", 0.430}, {"5", 0.276},
      {"6", 0.593}, {"7", 0.270}, {"8", 0.643}, {"9", 0.933}, {"10", 0.0}};
  for (const auto& ref : reference) {
    double sim = -1.0;
    for (const ScoredSource& s : cm.scored)
      if (s.source_id == ref.id) sim = s.sim;
    if (std::abs(sim - ref.sim) > case_study::kSimTolerance)
      return std::string("source ") + ref.id + " sim " + std::to_string(sim) +
             " off reference " + std::to_string(ref.sim);
  }
  std::vector<std::string> selected;
  for (const ScoredSource& s : cm.selected) selected.push_back(s.source_id);
  if (selected != std::vector<std::string>{"9", "3", "8", "1", "6"})
    return "selected set/order mismatch";
  if (elapsed >= 1.0) return "content matching took " + std::to_string(elapsed) + "s";
  return "";
}

std::string check_quality_matching() {
  const auto fx = case_study::fixture();
  const auto start = std::chrono::steady_clock::now();
  const auto report = case_study::evaluate(fx);
  const double elapsed = seconds_since(start);

  std::vector<std::string> survivors = report.selection.trace.survivors;
  std::sort(survivors.begin(), survivors.end());
  if (survivors != std::vector<std::string>{"1", "3", "6"}) return "survivor set mismatch";

  for (const case_study::QualityRow& row : report.quality) {
    for (std::size_t j = 0; j < 4; ++j)
      if (std::abs(row.scaled[j] - row.expected_scaled[j]) > case_study::kCellTolerance)
        return "scaled cell mismatch on source " + row.source_id;
    if (std::abs(row.score - row.expected_score) > case_study::kScoreTolerance)
      return "SAW score mismatch on source " + row.source_id;
  }
  if (report.final_order != std::vector<std::string>{"3", "1", "6"})
    return "final order mismatch";
  if (elapsed >= 1.0) return "quality matching took " + std::to_string(elapsed) + "s";
  return "";
}

std::vector<std::string> ids_from_json(const json& body) {
  std::vector<std::string> ids;
  for (const json& e : body.at("entries")) ids.push_back(e.at("source_id"));
  return ids;
}

std::string check_end_to_end() {
  // CLI verdict on the bundled fixture.
  const CommandResult verdict = run_command(std::string(MEDSELECT_CLI) +
                                            " reproduce-case-study");
  if (verdict.exit_code != 0) return "reproduce-case-study exited nonzero";
  if (verdict.output.find("verdict: PASS") == std::string::npos)
    return "reproduce-case-study did not print a PASS verdict";
  if (verdict.output.find("Content matching") == std::string::npos ||
      verdict.output.find("Quality matching") == std::string::npos)
    return "reproduce-case-study did not render both tables";

  // The same selection through the HTTP path and the CLI path.
  const fs::path dir = fs::temp_directory_path() / "medselect-acceptance-e2e";
  fs::remove_all(dir);
  ServiceConfig config;
  config.port = 0;
  config.store_root = dir;
  Service service(std::move(config));
  const auto fx = case_study::fixture();
  service.store().put_criteria(fx.criteria);
  service.store().upsert_user(fx.user);
  for (const SourceProfile& s : fx.sources) service.store().upsert_source(s);
  const int port = service.start();

  httplib::Client client("127.0.0.1", port);
  const auto res = client.Post("/select",
                               R"({"user_id":"user1","params":{"threshold_pct":50}})",
                               "application/json");
  if (!res || res->status != 200) return "HTTP select failed";
  const std::vector<std::string> http_ids = ids_from_json(json::parse(res->body));

  const CommandResult cli = run_command(std::string(MEDSELECT_CLI) +
                                        " --store " + dir.string() +
                                        " select --user user1 --threshold 50 --json");
  if (cli.exit_code != 0) return "CLI select exited nonzero: " + cli.output;
  const std::vector<std::string> cli_ids = ids_from_json(json::parse(cli.output));

  // --kind cosine-only must score every source with the plain cosine.
  const CommandResult cosine_run = run_command(
      std::string(MEDSELECT_CLI) + " --store " + dir.string() +
      " select --user user1 --threshold 50 --kind cosine-only --json --trace");
  if (cosine_run.exit_code != 0) return "CLI cosine-only select exited nonzero";
  const json cosine_body = json::parse(cosine_run.output);
  for (const json& s : cosine_body.at("trace").at("content_scores")) {
    const std::string id = s.at("source_id");
    for (const SourceProfile& src : fx.sources) {
      if (src.source_id != id) continue;
      const double expected =
          oracle::cosine(fx.user.current_session->goals, src.content);
      if (std::abs(s.at("sim").get<double>() - expected) > 1e-12)
        return "cosine-only column deviates from the direct formula on source " + id;
    }
  }

  const CommandResult ghost = run_command(std::string(MEDSELECT_CLI) + " --store " +
                                          dir.string() + " select --user ghost --json");
  if (ghost.exit_code != 2) return "unknown user must exit with code 2";

  service.stop();
  fs::remove_all(dir);

  if (http_ids != std::vector<std::string>{"3", "1", "6"}) return "HTTP ranking mismatch";
  if (cli_ids != http_ids) return "CLI and HTTP rankings differ";
  return "";
}

std::string check_special_case_equivalence() {
  std::mt19937 rng(11011);
  for (int iter = 0; iter < 200; ++iter) {
    const TermVector u = oracle::random_vector(rng);
    const TermVector s = oracle::random_vector(rng);
    const struct { double a, b, c; double expected; } cases[] = {
        {1, 0, 0, oracle::cosine(u, s)},
        {0, 1, 0, oracle::jaccard(u, s)},
        {0, 0, 1, oracle::dice(u, s)},
        {1.0 / 3, 1.0 / 3, 1.0 / 3, oracle::average(u, s)},
    };
    for (const auto& c : cases) {
      const double got = combined_similarity(u, s, c.a, c.b, c.c);
      if (std::abs(got - c.expected) > 1e-12)
        return "deviation " + std::to_string(std::abs(got - c.expected)) + " at iter " +
               std::to_string(iter);
    }
  }
  return "";
}

std::string check_similarity_properties() {
  std::mt19937 rng(22022);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int iter = 0; iter < 1000; ++iter) {
    const TermVector u = oracle::random_vector(rng);
    const TermVector s = oracle::random_vector(rng);
    double alpha = unit(rng), beta = unit(rng), gamma = unit(rng);
    const double total = alpha + beta + gamma;
    if (total == 0) continue;
    alpha /= total;
    beta /= total;
    gamma /= total;

    const double uv = combined_similarity(u, s, alpha, beta, gamma);
    if (uv != combined_similarity(s, u, alpha, beta, gamma)) return "symmetry violated";
    if (uv < 0.0 || uv > 1.0 + 1e-12) return "range violated";
    const double self = combined_similarity(u, u, alpha, beta, gamma);
    if (std::abs(self - (alpha + beta + gamma)) > 1e-12) return "self-similarity violated";
    if (combined_similarity(u, TermVector{}, alpha, beta, gamma) != 0.0)
      return "zero-vector rule violated";
    if (named_similarity(u, s, SimilarityKind::jaccard) >
        named_similarity(u, s, SimilarityKind::dice) + 1e-15)
      return "jaccard exceeded dice";
  }
  return "";
}

std::string check_saw_properties() {
  std::mt19937 rng(33033);
  std::uniform_real_distribution<double> lambda_dist(0.1, 10.0);
  std::uniform_real_distribution<double> mu_dist(-50.0, 50.0);

  // Oracle agreement on 100 random 5x4 instances.
  for (int iter = 0; iter < 100; ++iter) {
    const oracle::SawInstance instance = oracle::random_saw_instance(rng);
    std::vector<SourceProfile> sources(instance.ids.size());
    std::vector<QualityPreference> prefs;
    std::vector<std::string> criteria;
    for (std::size_t j = 0; j < instance.weights.size(); ++j) {
      criteria.push_back("q" + std::to_string(j));
      const double w = instance.weights[j];
      const PriorityLevel level = w == 0.4   ? PriorityLevel::mandatory
                                  : w == 0.3 ? PriorityLevel::desirable
                                  : w == 0.2 ? PriorityLevel::not_desirable
                                             : PriorityLevel::indifferent;
      std::optional<QualityConstraint> constraint;
      if (level == PriorityLevel::mandatory || level == PriorityLevel::desirable)
        constraint = QualityConstraint{Comparator::at_least, -1e9};
      prefs.push_back(QualityPreference{criteria[j], level, constraint});
    }
    for (std::size_t i = 0; i < sources.size(); ++i) {
      sources[i].source_id = instance.ids[i];
      for (std::size_t j = 0; j < criteria.size(); ++j)
        sources[i].quality[criteria[j]] = instance.values[i][j];
    }
    const QualityRanking ranking = quality_rank(sources, prefs);
    const auto expected = oracle::saw_rank(instance);
    if (ranking.entries.size() != expected.size()) return "oracle size mismatch";
    double weight_sum = 0.0;
    for (double w : instance.weights) weight_sum += w;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (ranking.entries[i].source_id != expected[i].first) return "oracle order mismatch";
      if (std::abs(ranking.entries[i].score - expected[i].second) > 1e-12)
        return "oracle score deviation";
      if (ranking.entries[i].score < 0.0 || ranking.entries[i].score > weight_sum + 1e-12)
        return "score bound violated";
    }

    // Affine invariance: transform one column, rankings stay bit-identical.
    oracle::SawInstance transformed = instance;
    const double lambda = lambda_dist(rng);
    const double mu = mu_dist(rng);
    for (std::size_t i = 0; i < transformed.ids.size(); ++i)
      transformed.values[i][2] = lambda * transformed.values[i][2] + mu;
    std::vector<SourceProfile> tsources = sources;
    for (std::size_t i = 0; i < tsources.size(); ++i)
      tsources[i].quality[criteria[2]] = transformed.values[i][2];
    const QualityRanking after = quality_rank(tsources, prefs);
    for (std::size_t i = 0; i < after.entries.size(); ++i)
      if (after.entries[i].source_id != ranking.entries[i].source_id)
        return "affine invariance violated";

    // Monotonicity: raise one non-maximal raw value.
    oracle::SawInstance raised = instance;
    const int row = static_cast<int>(iter % raised.ids.size());
    double column_max = raised.values[0][1];
    for (std::size_t i = 1; i < raised.ids.size(); ++i)
      column_max = std::max(column_max, raised.values[i][1]);
    if (raised.values[row][1] < column_max) {
      auto score_of = [](const oracle::SawInstance& inst, const std::string& id) {
        for (const auto& [sid, score] : oracle::saw_rank(inst))
          if (sid == id) return score;
        return -1.0;
      };
      const double before = score_of(raised, raised.ids[row]);
      raised.values[row][1] += 7.5;
      if (score_of(raised, raised.ids[row]) < before - 1e-12)
        return "monotonicity violated";
    }
  }
  return "";
}

std::string check_probe_fidelity() {
  MockSourceSpec spec;
  spec.source_id = "acceptance-probe";
  spec.answerable_patterns = {{"transport"}, {"hotel"}};
  spec.latency_ms = 50;
  MockSourceHarness harness({spec});
  const std::vector<std::string> queries{"transport", "hotel", "museum", "opera"};
  const ProbeReport report =
      probe_source("acceptance-probe", {"127.0.0.1", harness.port_of("acceptance-probe")},
                   queries, ProbeOptions{1.0, 3});
  if (report.completeness_pct != 50.0)
    return "completeness " + std::to_string(report.completeness_pct) + " != 50";
  if (!report.response_time_s.has_value()) return "no response time measured";
  if (*report.response_time_s < 0.05)
    return "response time below the injected 50ms floor";
  if (*report.response_time_s >= 1.0) return "response time not below the timeout";
  return "";
}

std::string check_store_contract() {
  const fs::path dir = fs::temp_directory_path() / "medselect-acceptance-store";
  fs::remove_all(dir);
  const auto fx = case_study::fixture();
  {
    ProfileStore store(dir);
    store.put_criteria(fx.criteria);
    store.upsert_user(fx.user);
    for (const SourceProfile& s : fx.sources) store.upsert_source(s);
  }

  // Durability across a real process boundary: a fresh CLI process reads
  // back the canonical document.
  const CommandResult shown = run_command(std::string(MEDSELECT_CLI) + " --store " +
                                          dir.string() + " profile user show --id user1");
  if (shown.exit_code != 0) return "CLI show failed after restart";
  if (shown.output != codec::user_document(fx.user))
    return "document changed across the process boundary";

  // Torn-document check: 1000 atomic replaces against a reader loop.
  ProfileStore store(dir);
  std::atomic<bool> done{false};
  std::atomic<int> parse_failures{0};
  std::atomic<int> reads{0};
  std::thread reader([&] {
    while (!done) {
      try {
        (void)store.get_user("user1");
        ++reads;
      } catch (const Error&) {
        ++parse_failures;
      }
    }
  });
  UserProfile user = fx.user;
  for (int i = 0; i < 1000; ++i) {
    user.identity["revision"] = std::to_string(i);
    store.upsert_user(user);
  }
  done = true;
  reader.join();
  fs::remove_all(dir);
  if (parse_failures != 0)
    return std::to_string(parse_failures.load()) + " torn reads out of " +
           std::to_string(reads.load());
  if (reads == 0) return "reader made no progress";
  return "";
}

std::string check_scale_performance() {
#ifdef _OPENMP
  omp_set_num_threads(1);  // the guarantee is single-threaded
#endif
  std::mt19937 rng(44044);
  std::uniform_int_distribution<int> pick(0, 399);
  std::uniform_real_distribution<double> weight(0.01, 1.0);
  auto random_vector = [&] {
    std::vector<TermEntry> entries;
    std::vector<bool> used(400, false);
    while (entries.size() < 50) {
      const int t = pick(rng);
      if (used[t]) continue;
      used[t] = true;
      entries.push_back(TermEntry{"term" + std::to_string(t), weight(rng)});
    }
    return TermVector::from_canonical(std::move(entries));
  };
  std::vector<SourceProfile> sources(10000);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    sources[i].source_id = "s" + std::to_string(100000 + i);
    sources[i].content = random_vector();
  }
  UserProfile user;
  user.user_id = "scale";
  SessionProfile session;
  session.session_id = "scale";
  session.goals = random_vector();
  user.current_session = std::move(session);
  SelectionRequest request;
  request.user_id = user.user_id;

  const auto start = std::chrono::steady_clock::now();
  const SelectionResult result = select_sources(request, &user, sources);
  const double elapsed = seconds_since(start);
  if (result.trace.content_scores.size() != 10000) return "not all sources scored";
  if (elapsed >= 1.0)
    return "selection over 10000 sources took " + std::to_string(elapsed) + "s";
  return "";
}

}  // namespace

int main() {
  const struct {
    const char* name;
    std::function<std::string()> run;
  } criteria[] = {
      {"content matching reproduces the reference table", check_content_matching},
      {"quality matching reproduces the reference table", check_quality_matching},
      {"end-to-end verdict via CLI and HTTP", check_end_to_end},
      {"special cases match direct formulas to 1e-12", check_special_case_equivalence},
      {"similarity property suite (1000 cases)", check_similarity_properties},
      {"SAW property suite (100 instances)", check_saw_properties},
      {"probe fidelity against the mock harness", check_probe_fidelity},
      {"store durability and atomic replace", check_store_contract},
      {"selection over 10000 sources under 1s single-threaded", check_scale_performance},
  };

  int failures = 0;
  int number = 1;
  for (const auto& criterion : criteria) {
    std::string detail;
    try {
      detail = criterion.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      std::printf("[PASS] %d. %s\n", number, criterion.name);
    } else {
      std::printf("[FAIL] %d. %s: %s\n", number, criterion.name, detail.c_str());
      ++failures;
    }
    ++number;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
