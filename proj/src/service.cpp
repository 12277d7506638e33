// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/service.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "medselect/json_codec.hpp"

namespace medselect {
namespace {

using nlohmann::json;

int http_status(Errc code) {
  switch (code) {
    case Errc::not_found: return 404;
    case Errc::conflict: return 409;
    case Errc::storage_failure: return 500;
    default: return 422;
  }
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(codec::serialize(body), "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, http_status(e.code()),
            json{{"code", errc_name(e.code())}, {"message", e.what()},
                 {"details", e.details()}});
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    send_error(res, e);
  } catch (const json::exception& e) {
    send_json(res, 400, json{{"code", "invalid_json"}, {"message", e.what()},
                             {"details", ""}});
  } catch (const std::exception& e) {
    send_json(res, 500, json{{"code", "internal"}, {"message", e.what()}, {"details", ""}});
  }
}

SelectionRequest selection_request_from_json(const json& body,
                                             const SimilarityParams& defaults) {
  if (!body.is_object())
    raise(Errc::validation_failure, "selection request must be a JSON object");
  SelectionRequest request;
  if (body.contains("user_id")) request.user_id = body.at("user_id").get<std::string>();
  if (body.contains("session"))
    request.session = codec::session_from_json(body.at("session"));
  if (body.contains("query_text"))
    request.query_text = body.at("query_text").get<std::string>();
  request.params = defaults;
  if (body.contains("params")) {
    const json& p = body.at("params");
    request.params.alpha = p.value("alpha", defaults.alpha);
    request.params.beta = p.value("beta", defaults.beta);
    request.params.gamma = p.value("gamma", defaults.gamma);
    request.params.threshold_pct = p.value("threshold_pct", defaults.threshold_pct);
  }
  if (body.contains("max_results")) {
    const int k = body.at("max_results").get<int>();
    if (k <= 0) raise(Errc::validation_failure, "max_results must be positive");
    request.max_results = k;
  }
  if (!request.user_id.has_value() && !request.session.has_value())
    raise(Errc::validation_failure, "request needs a user_id or an inline session");
  return request;
}

bool trace_requested(const httplib::Request& req) {
  if (!req.has_param("trace")) return false;
  const std::string v = req.get_param_value("trace");
  return v == "1" || v == "true";
}

}  // namespace

ServiceConfig load_service_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) raise(Errc::storage_failure, "cannot read config file", file.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    const json j = json::parse(text.str());
    ServiceConfig config;
    config.listen_address = j.value("listen_address", config.listen_address);
    config.port = j.value("port", config.port);
    if (config.port < 1 || config.port > 65535)
      raise(Errc::validation_failure, "config port must lie in [1,65535]");
    if (j.contains("store_root"))
      config.store_root = j.at("store_root").get<std::string>();
    if (j.contains("defaults")) {
      const json& d = j.at("defaults");
      config.default_params.alpha = d.value("alpha", config.default_params.alpha);
      config.default_params.beta = d.value("beta", config.default_params.beta);
      config.default_params.gamma = d.value("gamma", config.default_params.gamma);
      config.default_params.threshold_pct =
          d.value("threshold_pct", config.default_params.threshold_pct);
    }
    validate_boundary(config.default_params);
    if (j.contains("probe")) {
      const json& p = j.at("probe");
      config.probe_timeout_s = p.value("timeout_s", config.probe_timeout_s);
      config.probe_repeats = p.value("repeats", config.probe_repeats);
    }
    if (config.probe_timeout_s <= 0 || config.probe_repeats <= 0)
      raise(Errc::validation_failure, "probe timeout and repeats must be positive");
    return config;
  } catch (const json::exception& e) {
    raise(Errc::validation_failure, "config file: malformed JSON", e.what());
  }
}

SelectionResult run_selection(ProfileStore& store, const SelectionRequest& request,
                              DiagnosticLog* diag) {
  validate_boundary(request.params);

  std::optional<UserProfile> user;
  if (request.user_id.has_value()) user = store.get_user(*request.user_id);

  const std::vector<SourceProfile> sources = store.load_all_sources();
  const std::vector<CriterionSpec> registry = store.criteria();
  SelectionResult result =
      select_sources(request, user.has_value() ? &*user : nullptr, sources, diag, registry);

  if (user.has_value()) {
    InteractionRecord record;
    if (request.session.has_value())
      record.session_id = request.session->session_id;
    else if (user->current_session.has_value())
      record.session_id = user->current_session->session_id;
    else
      record.session_id = "adhoc-" + std::to_string(Timestamp::now().epoch_ms);
    record.timestamp = Timestamp::now();
    record.query_text = request.query_text.value_or("");
    for (const RankedSource& e : result.entries) record.selected_sources.push_back(e.source_id);
    store.record_interaction(user->user_id, std::move(record), diag);
  }
  return result;
}

struct Service::Impl {
  ServiceConfig config;
  ProfileStore store;
  httplib::Server server;
  std::thread thread;
  int bound_port = 0;
  std::atomic<bool> running{false};

  explicit Impl(ServiceConfig cfg) : config(std::move(cfg)), store(config.store_root) {
    // SO_REUSEADDR only; the default options add SO_REUSEPORT, which would
    // mask a port collision instead of failing the bind.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR,
                   reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    register_routes();
  }

  void register_routes() {
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, json{{"status", "ok"}});
    });

    server.Post("/select", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = json::parse(req.body);
        const SelectionRequest request =
            selection_request_from_json(body, config.default_params);
        DiagnosticLog diag;
        const SelectionResult result = run_selection(store, request, &diag);
        send_json(res, 200, codec::to_json(result, trace_requested(req)));
      });
    });

    server.Post("/feedback", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const json body = json::parse(req.body);
        if (!body.is_object() || !body.contains("user_id") || !body.contains("session_id"))
          raise(Errc::validation_failure, "feedback needs user_id and session_id");
        std::vector<Rating> ratings;
        if (body.contains("ratings")) {
          const json& arr = body.at("ratings");
          if (!arr.is_array())
            raise(Errc::validation_failure, "ratings must be an array");
          for (const json& item : arr) {
            if (!item.contains("source_id") || !item.contains("rating") ||
                !item.at("rating").is_number())
              raise(Errc::validation_failure, "each rating needs source_id and rating");
            const double value = item.at("rating").get<double>();
            if (value != 1.0 && value != -1.0)
              raise(Errc::validation_failure, "rating must be +1 or -1");
            ratings.push_back(Rating{item.at("source_id").get<std::string>(),
                                     static_cast<int>(value)});
          }
        }
        DiagnosticLog diag;
        const SessionProfile session =
            store.apply_feedback(body.at("user_id").get<std::string>(),
                                 body.at("session_id").get<std::string>(), ratings, &diag);
        send_json(res, 200,
                  json{{"session_id", session.session_id},
                       {"goals", codec::to_json(session.goals)}});
      });
    });

    const auto upsert_user = [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const UserProfile user = codec::parse_user_document(req.body);
        if (user.user_id != req.path_params.at("id"))
          raise(Errc::conflict, "document id does not match the path id", user.user_id);
        store.upsert_user(user);
        send_json(res, 200, codec::to_json(user));
      });
    };
    server.Put("/users/:id", upsert_user);
    server.Post("/users/:id", upsert_user);
    server.Get("/users/:id", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        send_json(res, 200, codec::to_json(store.get_user(req.path_params.at("id"))));
      });
    });
    server.Delete("/users/:id", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        store.delete_user(req.path_params.at("id"));
        res.status = 204;
      });
    });

    const auto upsert_source = [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const SourceProfile source = codec::parse_source_document(req.body);
        if (source.source_id != req.path_params.at("id"))
          raise(Errc::conflict, "document id does not match the path id", source.source_id);
        store.upsert_source(source);
        send_json(res, 200, codec::to_json(source));
      });
    };
    server.Put("/sources/:id", upsert_source);
    server.Post("/sources/:id", upsert_source);
    server.Get("/sources/:id", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        send_json(res, 200, codec::to_json(store.get_source(req.path_params.at("id"))));
      });
    });
    server.Delete("/sources/:id", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        store.delete_source(req.path_params.at("id"));
        res.status = 204;
      });
    });
  }

  void bind() {
    if (bound_port > 0) return;
    if (config.port > 0) {
      if (!server.bind_to_port(config.listen_address, config.port))
        raise(Errc::port_in_use,
              "cannot bind to " + config.listen_address + ":" + std::to_string(config.port));
      bound_port = config.port;
    } else {
      bound_port = server.bind_to_any_port(config.listen_address);
      if (bound_port <= 0) raise(Errc::port_in_use, "cannot bind to any port");
    }
  }
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

Service::~Service() { stop(); }

ProfileStore& Service::store() { return impl_->store; }

int Service::start() {
  impl_->bind();
  impl_->running = true;
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->bound_port;
}

void Service::run() {
  impl_->bind();
  impl_->running = true;
  impl_->server.listen_after_bind();
}

void Service::stop() {
  if (impl_ == nullptr || !impl_->running.exchange(false)) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int Service::port() const { return impl_->bound_port; }

}  // namespace medselect
