// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "medselect/error.hpp"
#include "medselect/term_vector.hpp"

namespace medselect {

class ProfileStore;
struct SourceProfile;

/// Quality measurements gathered by sample-query probing.
struct ProbeReport {
  std::string source_id;
  std::optional<double> response_time_s;  // mean over answered probes
  double completeness_pct = 0.0;          // 100 * answered / sent
  std::optional<double> freshness;        // from source metadata
  std::optional<double> reputation;       // from source metadata
  int probes_sent = 0;
  int probes_answered = 0;

  bool operator==(const ProbeReport&) const = default;
};

struct ProbeOptions {
  double timeout_s = 5.0;
  int repeats = 3;
};

struct Endpoint {
  std::string host;
  int port = 80;
};

/// "http://host:1234/..." / "host:1234" / "host" -> {host, port}. The
/// embedded port wins over `fallback_port`.
Endpoint parse_endpoint(std::string_view url, std::optional<int> fallback_port);

/// Sends every sample query `repeats` times to GET /search?q=... on the
/// source. A probe counts as answered when an HTTP 200 with a non-empty
/// result list arrives within the timeout. Freshness and reputation are
/// read from GET /meta when present. An unreachable metadata endpoint is
/// not an error: the report comes back with zero answered probes,
/// completeness 0 and no response time, plus a diagnostic. Probes to one
/// source run sequentially so the timing measurements do not interfere.
ProbeReport probe_source(const std::string& source_id, const Endpoint& endpoint,
                         std::span<const std::string> sample_queries,
                         const ProbeOptions& options, DiagnosticLog* diag = nullptr);

/// Writes the report's measurements into the stored profile (only the
/// fields the report carries, and only criteria known to the registry:
/// "reputation", "freshness", "completeness", "response_time"), replacing
/// the content vector when one is given.
SourceProfile refresh_source_profile(ProfileStore& store, const std::string& source_id,
                                     const ProbeReport& report,
                                     const std::optional<TermVector>& content,
                                     DiagnosticLog* diag = nullptr);

}  // namespace medselect
