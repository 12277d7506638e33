// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/mock_source.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "medselect/error.hpp"

namespace medselect {
namespace {

using nlohmann::json;

void validate_spec(const MockSourceSpec& spec) {
  if (spec.source_id.empty())
    raise(Errc::validation_failure, "mock source spec needs a source_id");
  if (spec.latency_ms < 0)
    raise(Errc::validation_failure, "mock source latency must be non-negative",
          spec.source_id);
  if (spec.port < 0 || spec.port > 65535)
    raise(Errc::validation_failure, "mock source port out of range", spec.source_id);
}

}  // namespace

std::vector<MockSourceSpec> parse_mock_specs(const std::string& json_text) {
  try {
    json root = json::parse(json_text);
    if (root.is_object() && root.contains("sources")) root = root.at("sources");
    if (!root.is_array())
      raise(Errc::validation_failure, "mock spec must be an array of source specs");
    std::vector<MockSourceSpec> specs;
    for (const json& item : root) {
      MockSourceSpec spec;
      spec.source_id = item.at("source_id").get<std::string>();
      spec.port = item.value("port", 0);
      spec.latency_ms = item.value("latency_ms", 0);
      if (item.contains("freshness")) spec.freshness = item.at("freshness").get<double>();
      if (item.contains("reputation")) spec.reputation = item.at("reputation").get<double>();
      if (item.contains("patterns")) {
        for (const json& pattern : item.at("patterns")) {
          std::vector<std::string> terms;
          for (const json& t : pattern) terms.push_back(to_lower(t.get<std::string>()));
          spec.answerable_patterns.push_back(std::move(terms));
        }
      }
      if (item.contains("documents")) {
        for (const json& doc : item.at("documents"))
          spec.documents.documents.push_back(Document{doc.at("id").get<std::string>(),
                                                      doc.value("text", std::string{})});
      }
      validate_spec(spec);
      specs.push_back(std::move(spec));
    }
    return specs;
  } catch (const json::exception& e) {
    raise(Errc::validation_failure, "mock spec: malformed JSON", e.what());
  }
}

struct MockSourceHarness::Impl {
  struct Instance {
    MockSourceSpec spec;
    int port = 0;
    std::unique_ptr<httplib::Server> server;
    std::thread thread;
  };
  std::vector<std::unique_ptr<Instance>> instances;
  bool stopped = false;
};

MockSourceHarness::MockSourceHarness(std::vector<MockSourceSpec> specs)
    : impl_(std::make_unique<Impl>()) {
  for (MockSourceSpec& spec : specs) {
    validate_spec(spec);
    for (auto& pattern : spec.answerable_patterns)
      for (auto& term : pattern) term = to_lower(term);

    auto instance = std::make_unique<Impl::Instance>();
    instance->spec = std::move(spec);
    instance->server = std::make_unique<httplib::Server>();
    const MockSourceSpec& s = instance->spec;
    httplib::Server& server = *instance->server;
    // SO_REUSEADDR only: the default options add SO_REUSEPORT, which would
    // let two harnesses share a fixed port instead of failing fast.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR,
                   reinterpret_cast<const void*>(&yes), sizeof(yes));
    });

    server.Get("/meta", [&s](const httplib::Request&, httplib::Response& res) {
      json meta{{"source_id", s.source_id}};
      if (s.freshness.has_value()) meta["freshness"] = *s.freshness;
      if (s.reputation.has_value()) meta["reputation"] = *s.reputation;
      res.set_content(meta.dump(), "application/json");
    });

    server.Get("/search", [&s](const httplib::Request& req, httplib::Response& res) {
      if (s.latency_ms > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(s.latency_ms));
      const std::vector<std::string> terms = tokenize_simple(req.get_param_value("q"));
      const std::set<std::string> term_set(terms.begin(), terms.end());

      bool answerable = false;
      for (const auto& pattern : s.answerable_patterns) {
        if (std::any_of(pattern.begin(), pattern.end(),
                        [&](const std::string& t) { return term_set.contains(t); })) {
          answerable = true;
          break;
        }
      }

      json results = json::array();
      if (answerable) {
        for (const Document& doc : s.documents.documents) {
          const std::vector<std::string> doc_terms = tokenize_simple(doc.text);
          const bool hit = std::any_of(doc_terms.begin(), doc_terms.end(),
                                       [&](const std::string& t) { return term_set.contains(t); });
          if (hit) results.push_back({{"id", doc.doc_id}, {"text", doc.text}});
        }
        if (results.empty())
          results.push_back({{"id", s.source_id + "-hit"}, {"text", ""}});
      }
      res.set_content(json{{"results", std::move(results)}}.dump(), "application/json");
    });

    if (instance->spec.port > 0) {
      if (!server.bind_to_port("127.0.0.1", instance->spec.port)) {
        stop();
        raise(Errc::port_in_use,
              "cannot bind mock source '" + instance->spec.source_id + "' to port " +
                  std::to_string(instance->spec.port));
      }
      instance->port = instance->spec.port;
    } else {
      instance->port = server.bind_to_any_port("127.0.0.1");
      if (instance->port <= 0) {
        stop();
        raise(Errc::port_in_use,
              "cannot bind mock source '" + instance->spec.source_id + "' to any port");
      }
    }
    instance->thread = std::thread([&server] { server.listen_after_bind(); });
    server.wait_until_ready();
    impl_->instances.push_back(std::move(instance));
  }
}

MockSourceHarness::~MockSourceHarness() { stop(); }

int MockSourceHarness::port_of(const std::string& source_id) const {
  for (const auto& instance : impl_->instances)
    if (instance->spec.source_id == source_id) return instance->port;
  raise(Errc::not_found, "no mock source '" + source_id + "' in this harness");
}

std::vector<std::pair<std::string, int>> MockSourceHarness::endpoints() const {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& instance : impl_->instances)
    out.emplace_back(instance->spec.source_id, instance->port);
  return out;
}

void MockSourceHarness::stop() {
  if (impl_ == nullptr || impl_->stopped) return;
  impl_->stopped = true;
  for (auto& instance : impl_->instances) {
    if (instance->server) instance->server->stop();
    if (instance->thread.joinable()) instance->thread.join();
  }
}

}  // namespace medselect
