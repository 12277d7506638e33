// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "medselect/pipeline.hpp"
#include "medselect/similarity.hpp"
#include "medselect/store.hpp"

namespace medselect {

struct ServiceConfig {
  std::string listen_address = "127.0.0.1";
  int port = 8080;  // 0 = pick any free port (used by tests)
  std::filesystem::path store_root = "store";
  SimilarityParams default_params;
  double probe_timeout_s = 5.0;
  int probe_repeats = 3;
};

/// Reads a JSON config file:
/// {listen_address?, port, store_root, defaults?{alpha,beta,gamma,threshold_pct},
///  probe?{timeout_s, repeats}}.
ServiceConfig load_service_config(const std::filesystem::path& file);

/// Store-backed selection shared by the HTTP handler and the CLI: loads the
/// user (when a user id is given) and all sources, validates the parameter
/// bounds, runs the pipeline and appends one interaction record to the
/// user's history.
SelectionResult run_selection(ProfileStore& store, const SelectionRequest& request,
                              DiagnosticLog* diag = nullptr);

/// The mediator-facing HTTP/JSON boundary:
///   POST /select            selection (entries; ?trace=1 adds the trace)
///   POST /feedback          rating-driven session-goal update
///   PUT/POST/GET/DELETE /users/{id} and /sources/{id}
///   GET /health
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  ProfileStore& store();

  /// Serves on a background thread; returns the bound port.
  int start();
  /// Serves on the calling thread until stop() is called.
  void run();
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace medselect
