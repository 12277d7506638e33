// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
//
// Operator CLI: profile management, selection runs, source probing, content
// extraction, the HTTP service and the mock-source harness.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "medselect/case_study.hpp"
#include "medselect/json_codec.hpp"
#include "medselect/mock_source.hpp"
#include "medselect/probe.hpp"
#include "medselect/service.hpp"
#include "medselect/tfidf.hpp"

namespace {

using medselect::DiagnosticLog;
using medselect::Errc;
using medselect::Error;
namespace codec = medselect::codec;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted = true; }

std::string resolve_store_root(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("MEDSELECT_STORE"); env != nullptr && *env != '\0')
    return env;
  return "store";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) medselect::raise(Errc::storage_failure, "cannot read file", path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void print_diagnostics(const DiagnosticLog& diag) {
  for (const std::string& entry : diag.entries) std::cerr << "note: " << entry << "\n";
}

void print_selection_table(const medselect::SelectionResult& result) {
  const auto& trace = result.trace;
  std::map<std::string, int> rank_of;
  std::map<std::string, double> saw_of;
  for (const medselect::RankedSource& e : result.entries) {
    rank_of[e.source_id] = e.rank;
    saw_of[e.source_id] = e.saw_score;
  }
  std::map<std::string, std::size_t> row_of;
  for (std::size_t i = 0; i < trace.matrix.source_ids.size(); ++i)
    row_of[trace.matrix.source_ids[i]] = i;
  const auto selected = [&](const std::string& id) {
    return std::find(trace.selected.begin(), trace.selected.end(), id) !=
           trace.selected.end();
  };
  const auto survived = [&](const std::string& id) {
    return std::find(trace.survivors.begin(), trace.survivors.end(), id) !=
           trace.survivors.end();
  };

  std::printf("%-12s %10s %9s %8s  %-24s %9s %5s\n", "source", "sim", "selected",
              "stage1", "scaled", "saw", "rank");
  for (const medselect::ScoredSource& s : trace.content_scores) {
    std::string scaled = "-";
    if (auto it = row_of.find(s.source_id); it != row_of.end()) {
      std::ostringstream cells;
      for (std::size_t j = 0; j < trace.matrix.criterion_ids.size(); ++j) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%.3f", trace.matrix.scaled[it->second][j]);
        cells << (j > 0 ? " " : "") << buf;
      }
      scaled = cells.str();
    }
    std::string saw = "-";
    std::string rank = "-";
    if (auto it = saw_of.find(s.source_id); it != saw_of.end()) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%.4f", it->second);
      saw = buf;
      rank = std::to_string(rank_of[s.source_id]);
    }
    std::printf("%-12s %10.4f %9s %8s  %-24s %9s %5s\n", s.source_id.c_str(), s.sim,
                selected(s.source_id) ? "yes" : "no",
                survived(s.source_id) ? "yes" : (selected(s.source_id) ? "no" : "-"),
                scaled.c_str(), saw.c_str(), rank.c_str());
  }
  if (!trace.matrix.criterion_ids.empty()) {
    std::printf("criteria:");
    for (const std::string& id : trace.matrix.criterion_ids) std::printf(" %s", id.c_str());
    std::printf("\n");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Personalized source selection for data-integration mediators"};
  app.require_subcommand(1);

  std::string store_flag;
  app.add_option("--store", store_flag,
                 "Store root directory (overrides MEDSELECT_STORE; default ./store)");

  // --- profile user|source add|show|rm -----------------------------------
  CLI::App* profile = app.add_subcommand("profile", "Manage stored profiles");
  profile->require_subcommand(1);

  struct ProfileArgs {
    std::string file;
    std::string id;
  } user_args, source_args;

  CLI::App* puser = profile->add_subcommand("user", "User profiles");
  puser->require_subcommand(1);
  CLI::App* puser_add = puser->add_subcommand("add", "Upsert a user profile from a JSON file");
  puser_add->add_option("--file", user_args.file, "Profile document")->required();
  CLI::App* puser_show = puser->add_subcommand("show", "Print a stored user profile");
  puser_show->add_option("--id", user_args.id, "User id")->required();
  CLI::App* puser_rm = puser->add_subcommand("rm", "Delete a user profile");
  puser_rm->add_option("--id", user_args.id, "User id")->required();

  CLI::App* psource = profile->add_subcommand("source", "Source profiles");
  psource->require_subcommand(1);
  CLI::App* psource_add =
      psource->add_subcommand("add", "Upsert a source profile from a JSON file");
  psource_add->add_option("--file", source_args.file, "Profile document")->required();
  CLI::App* psource_show = psource->add_subcommand("show", "Print a stored source profile");
  psource_show->add_option("--id", source_args.id, "Source id")->required();
  CLI::App* psource_rm = psource->add_subcommand("rm", "Delete a source profile");
  psource_rm->add_option("--id", source_args.id, "Source id")->required();

  // --- select -------------------------------------------------------------
  CLI::App* select = app.add_subcommand("select", "Run the selection pipeline");
  struct SelectArgs {
    std::string user;
    std::string query;
    std::string kind;
    double alpha = 1.0 / 3.0, beta = 1.0 / 3.0, gamma = 1.0 / 3.0;
    double threshold = 50.0;
    int max_results = 0;
    bool as_json = false;
    bool trace = false;
  } sel;
  select->add_option("--user", sel.user, "User id")->required();
  select->add_option("--query", sel.query, "Free query text merged into the session goals");
  select->add_option("--threshold", sel.threshold, "Relevance threshold in percent");
  select->add_option("--alpha", sel.alpha, "Cosine fitness parameter");
  select->add_option("--beta", sel.beta, "Jaccard fitness parameter");
  select->add_option("--gamma", sel.gamma, "Dice fitness parameter");
  select->add_option("--kind", sel.kind,
                     "cosine-only|jaccard-only|dice-only|average (overrides alpha/beta/gamma)");
  select->add_option("--max-results", sel.max_results, "Truncate the ranking");
  select->add_flag("--json", sel.as_json, "Emit the selection result as JSON");
  select->add_flag("--trace", sel.trace, "Include the per-stage trace in JSON output");

  // --- reproduce-case-study ------------------------------------------------
  CLI::App* reproduce = app.add_subcommand(
      "reproduce-case-study",
      "Re-run the bundled travel demo and verify it against the frozen reference values");

  // --- extract -------------------------------------------------------------
  CLI::App* extract = app.add_subcommand("extract", "TF-IDF content vector from a corpus");
  struct ExtractArgs {
    std::string corpus;
    int top_k = 20;
  } ext;
  extract->add_option("--corpus", ext.corpus, "Directory of plain-text documents")->required();
  extract->add_option("--top-k", ext.top_k, "Number of terms to keep");

  // --- probe ----------------------------------------------------------------
  CLI::App* probe = app.add_subcommand("probe", "Probe a source with sample queries");
  struct ProbeArgs {
    std::string source;
    std::string queries;
    double timeout_s = 5.0;
    int repeats = 3;
    bool update = false;
  } prb;
  probe->add_option("--source", prb.source, "Stored source id")->required();
  probe->add_option("--queries", prb.queries, "File with one sample query per line")->required();
  probe->add_option("--timeout", prb.timeout_s, "Per-probe timeout in seconds");
  probe->add_option("--repeats", prb.repeats, "Repeats per sample query");
  probe->add_flag("--update", prb.update, "Write the measurements into the stored profile");

  // --- serve -----------------------------------------------------------------
  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP service");
  std::string config_file;
  serve->add_option("--config", config_file, "Service config JSON")->required();

  // --- mock-sources ------------------------------------------------------------
  CLI::App* mock = app.add_subcommand("mock-sources", "Run the mock source harness");
  std::string spec_file;
  mock->add_option("--spec", spec_file, "Harness spec JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  const std::string store_root = resolve_store_root(store_flag);

  if (puser_add->parsed()) {
    medselect::ProfileStore store(store_root);
    const auto user = codec::parse_user_document(read_file(user_args.file));
    std::cout << store.upsert_user(user) << "\n";
    return kExitOk;
  }
  if (puser_show->parsed()) {
    medselect::ProfileStore store(store_root);
    std::cout << codec::user_document(store.get_user(user_args.id));
    return kExitOk;
  }
  if (puser_rm->parsed()) {
    medselect::ProfileStore store(store_root);
    store.delete_user(user_args.id);
    return kExitOk;
  }
  if (psource_add->parsed()) {
    medselect::ProfileStore store(store_root);
    const auto source = codec::parse_source_document(read_file(source_args.file));
    std::cout << store.upsert_source(source) << "\n";
    return kExitOk;
  }
  if (psource_show->parsed()) {
    medselect::ProfileStore store(store_root);
    std::cout << codec::source_document(store.get_source(source_args.id));
    return kExitOk;
  }
  if (psource_rm->parsed()) {
    medselect::ProfileStore store(store_root);
    store.delete_source(source_args.id);
    return kExitOk;
  }

  if (select->parsed()) {
    medselect::ProfileStore store(store_root);
    medselect::SelectionRequest request;
    request.user_id = sel.user;
    if (!sel.query.empty()) request.query_text = sel.query;
    if (!sel.kind.empty()) {
      switch (medselect::similarity_kind_from_name(sel.kind)) {
        case medselect::SimilarityKind::cosine:
          request.params = {1.0, 0.0, 0.0, sel.threshold};
          break;
        case medselect::SimilarityKind::jaccard:
          request.params = {0.0, 1.0, 0.0, sel.threshold};
          break;
        case medselect::SimilarityKind::dice:
          request.params = {0.0, 0.0, 1.0, sel.threshold};
          break;
        case medselect::SimilarityKind::average:
          request.params = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, sel.threshold};
          break;
      }
    } else {
      request.params = {sel.alpha, sel.beta, sel.gamma, sel.threshold};
    }
    if (sel.max_results > 0) request.max_results = sel.max_results;

    DiagnosticLog diag;
    const medselect::SelectionResult result = medselect::run_selection(store, request, &diag);
    print_diagnostics(diag);
    if (sel.as_json)
      std::cout << codec::serialize(codec::to_json(result, sel.trace));
    else
      print_selection_table(result);
    return kExitOk;
  }

  if (reproduce->parsed()) {
    const auto report = medselect::case_study::evaluate(medselect::case_study::fixture());
    std::cout << medselect::case_study::render(report);
    return report.pass() ? kExitOk : kExitInternal;
  }

  if (extract->parsed()) {
    DiagnosticLog diag;
    const auto vector =
        medselect::extract_content_vector(medselect::load_corpus_dir(ext.corpus), ext.top_k,
                                          &diag);
    print_diagnostics(diag);
    std::cout << codec::serialize(codec::to_json(vector));
    return kExitOk;
  }

  if (probe->parsed()) {
    medselect::ProfileStore store(store_root);
    const medselect::SourceProfile source = store.get_source(prb.source);
    const medselect::Endpoint endpoint =
        medselect::parse_endpoint(source.identity.url, source.identity.port);

    std::vector<std::string> queries;
    std::istringstream lines(read_file(prb.queries));
    for (std::string line; std::getline(lines, line);)
      if (!line.empty()) queries.push_back(line);

    DiagnosticLog diag;
    const medselect::ProbeReport report = medselect::probe_source(
        prb.source, endpoint, queries,
        medselect::ProbeOptions{prb.timeout_s, prb.repeats}, &diag);
    if (prb.update)
      medselect::refresh_source_profile(store, prb.source, report, std::nullopt, &diag);
    print_diagnostics(diag);
    std::cout << codec::serialize(codec::to_json(report));
    return kExitOk;
  }

  if (serve->parsed()) {
    medselect::ServiceConfig config = medselect::load_service_config(config_file);
    if (!store_flag.empty()) config.store_root = store_flag;
    else if (const char* env = std::getenv("MEDSELECT_STORE"); env != nullptr && *env != '\0')
      config.store_root = env;
    medselect::Service service(std::move(config));
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    const int port = service.start();
    std::cout << "listening on " << port << ", store at "
              << service.store().root().string() << "\n";
    while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    service.stop();
    return kExitOk;
  }

  if (mock->parsed()) {
    medselect::MockSourceHarness harness(
        medselect::parse_mock_specs(read_file(spec_file)));
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    for (const auto& [id, port] : harness.endpoints())
      std::cout << "mock source " << id << " listening on " << port << "\n";
    std::cout.flush();
    while (!g_interrupted) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    harness.stop();
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error (" << medselect::errc_name(e.code()) << "): " << e.what();
    if (!e.details().empty()) std::cerr << " [" << e.details() << "]";
    std::cerr << "\n";
    return e.code() == Errc::storage_failure ? kExitInternal : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
