// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/probe.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "medselect/store.hpp"

namespace medselect {
namespace {

using nlohmann::json;

std::pair<time_t, time_t> split_timeout(double timeout_s) {
  const auto sec = static_cast<time_t>(timeout_s);
  const auto usec = static_cast<time_t>((timeout_s - static_cast<double>(sec)) * 1e6);
  return {sec, usec};
}

bool has_nonempty_results(const std::string& body) {
  try {
    const json j = json::parse(body);
    return j.contains("results") && j.at("results").is_array() && !j.at("results").empty();
  } catch (const json::exception&) {
    return false;
  }
}

}  // namespace

Endpoint parse_endpoint(std::string_view url, std::optional<int> fallback_port) {
  std::string_view rest = url;
  if (rest.starts_with("http://")) rest.remove_prefix(7);
  else if (rest.starts_with("https://")) rest.remove_prefix(8);
  if (const auto slash = rest.find('/'); slash != std::string_view::npos)
    rest = rest.substr(0, slash);

  Endpoint ep;
  ep.port = fallback_port.value_or(80);
  if (const auto colon = rest.rfind(':'); colon != std::string_view::npos) {
    const std::string port_text(rest.substr(colon + 1));
    char* end = nullptr;
    const long port = std::strtol(port_text.c_str(), &end, 10);
    if (end == port_text.c_str() + port_text.size() && port >= 1 && port <= 65535) {
      ep.port = static_cast<int>(port);
      rest = rest.substr(0, colon);
    }
  }
  ep.host = std::string(rest);
  if (ep.host.empty())
    raise(Errc::invalid_params, "endpoint URL has no host", std::string(url));
  return ep;
}

ProbeReport probe_source(const std::string& source_id, const Endpoint& endpoint,
                         std::span<const std::string> sample_queries,
                         const ProbeOptions& options, DiagnosticLog* diag) {
  if (sample_queries.empty())
    raise(Errc::invalid_params, "probing requires at least one sample query");
  if (options.timeout_s <= 0) raise(Errc::invalid_params, "probe timeout must be positive");
  if (options.repeats <= 0) raise(Errc::invalid_params, "probe repeats must be positive");

  ProbeReport report;
  report.source_id = source_id;
  const int intended = static_cast<int>(sample_queries.size()) * options.repeats;

  httplib::Client client(endpoint.host, endpoint.port);
  const auto [sec, usec] = split_timeout(options.timeout_s);
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);

  const httplib::Result meta = client.Get("/meta");
  if (!meta || meta->status != 200) {
    note(diag, "source '" + source_id + "' metadata endpoint " + endpoint.host + ":" +
                   std::to_string(endpoint.port) + " unreachable; reporting zero completeness");
    report.probes_sent = intended;
    report.probes_answered = 0;
    report.completeness_pct = 0.0;
    return report;
  }
  try {
    const json j = json::parse(meta->body);
    if (!j.is_object()) throw json::other_error::create(501, "metadata is not an object", &j);
    if (j.contains("freshness")) {
      if (!j.at("freshness").is_number())
        raise(Errc::invalid_metadata, "metadata freshness is not numeric", source_id);
      report.freshness = j.at("freshness").get<double>();
    }
    if (j.contains("reputation")) {
      if (!j.at("reputation").is_number())
        raise(Errc::invalid_metadata, "metadata reputation is not numeric", source_id);
      report.reputation = j.at("reputation").get<double>();
    }
  } catch (const json::exception& e) {
    raise(Errc::invalid_metadata, "source metadata is not valid JSON", e.what());
  }

  double answered_seconds = 0.0;
  for (const std::string& query : sample_queries) {
    for (int r = 0; r < options.repeats; ++r) {
      ++report.probes_sent;
      const auto start = std::chrono::steady_clock::now();
      const httplib::Result res =
          client.Get("/search", httplib::Params{{"q", query}}, httplib::Headers{});
      const auto elapsed = std::chrono::duration<double>(
          std::chrono::steady_clock::now() - start).count();
      if (res && res->status == 200 && elapsed < options.timeout_s &&
          has_nonempty_results(res->body)) {
        ++report.probes_answered;
        answered_seconds += elapsed;
      }
    }
  }
  report.completeness_pct =
      report.probes_sent == 0 ? 0.0
                              : 100.0 * report.probes_answered / report.probes_sent;
  if (report.probes_answered > 0)
    report.response_time_s = answered_seconds / report.probes_answered;
  return report;
}

SourceProfile refresh_source_profile(ProfileStore& store, const std::string& source_id,
                                     const ProbeReport& report,
                                     const std::optional<TermVector>& content,
                                     DiagnosticLog* diag) {
  SourceProfile source = store.get_source(source_id);
  const std::vector<CriterionSpec> registry = store.criteria();
  auto known = [&](const std::string& id) {
    for (const CriterionSpec& spec : registry)
      if (spec.id == id) return true;
    return false;
  };
  auto put = [&](const std::string& criterion, double value) {
    if (!known(criterion)) {
      note(diag, "criterion '" + criterion +
                     "' is not in the registry; measurement not stored for source '" +
                     source_id + "'");
      return;
    }
    source.quality[criterion] = value;
  };

  put("completeness", report.completeness_pct);
  if (report.response_time_s.has_value()) put("response_time", *report.response_time_s);
  if (report.freshness.has_value()) put("freshness", *report.freshness);
  if (report.reputation.has_value()) put("reputation", *report.reputation);
  if (content.has_value()) source.content = *content;

  store.upsert_source(source);
  return source;
}

}  // namespace medselect
