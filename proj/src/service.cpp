#include "pconf/service.hpp"

#include <cstdio>
#include <random>

#include <httplib.h>

#include "pconf/json_io.hpp"
#include "pconf/solver.hpp"

namespace pconf::service {

using nlohmann::json;

// ---------------------------------------------------------------------------
// InstanceStore

std::string InstanceStore::next_id() {
  char buf[40];
  std::snprintf(buf, sizeof buf, "i%06llx%08llx", static_cast<unsigned long long>(++counter_),
                static_cast<unsigned long long>(salt_ & 0xffffffffULL));
  salt_ = salt_ * 6364136223846793005ULL + 1442695040888963407ULL;
  return buf;
}

std::shared_ptr<const InstanceRecord> InstanceStore::insert(std::string source, ConfigurationProblem problem) {
  std::lock_guard lock(mutex_);
  if (salt_ == 0) salt_ = (static_cast<std::uint64_t>(std::random_device{}()) << 1) | 1ULL;
  auto record = std::make_shared<InstanceRecord>(
      InstanceRecord{next_id(), std::move(source), std::move(problem), std::chrono::system_clock::now()});
  order_.push_front(record);
  by_id_[record->id] = order_.begin();
  while (order_.size() > capacity_) {
    by_id_.erase(order_.back()->id);
    order_.pop_back();
  }
  return record;
}

std::shared_ptr<const InstanceRecord> InstanceStore::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return nullptr;
  order_.splice(order_.begin(), order_, it->second);
  return *it->second;
}

std::size_t InstanceStore::size() const {
  std::lock_guard lock(mutex_);
  return order_.size();
}

// ---------------------------------------------------------------------------
// ConfigService

namespace {

Response error(int status, std::string code, std::string message) {
  return {status, json{{"code", std::move(code)}, {"message", std::move(message)}}};
}

json parse_body(std::string_view body) {
  if (body.empty()) return json::object();
  json j = json::parse(body.begin(), body.end(), nullptr, false);
  if (j.is_discarded()) throw json_io::JsonError("request body is not valid JSON");
  if (!j.is_object()) throw json_io::JsonError("request body must be a JSON object");
  return j;
}

template <typename Fn>
Response guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json_io::JsonError& e) {
    return error(400, "BAD_REQUEST", e.what());
  } catch (const json::exception& e) {
    return error(400, "BAD_REQUEST", e.what());
  } catch (const std::invalid_argument& e) {
    return error(422, "INVALID_QUERY", e.what());
  }
}

}  // namespace

ConfigService::ConfigService(ServiceConfig config) : config_(std::move(config)), store_(config_.capacity) {}

Response ConfigService::create_instance(std::string_view body) {
  if (body.size() > config_.max_payload) {
    return error(413, "PAYLOAD_TOO_LARGE", "request exceeds " + std::to_string(config_.max_payload) + " bytes");
  }
  return guarded([&]() -> Response {
    const json req = parse_body(body);
    if (!req.contains("source") || !req.at("source").is_string()) {
      throw json_io::JsonError("missing string field 'source'");
    }
    std::string source = req.at("source").get<std::string>();
    auto loaded = load_instance(source);
    if (!loaded.ok()) {
      Response r = error(422, "INVALID_INSTANCE", "instance has errors");
      r.body["diagnostics"] = json_io::to_json(loaded.diagnostics);
      for (const auto& d : loaded.diagnostics) {
        if (d.severity == Severity::error && d.line > 0) {
          r.body["position"] = {{"line", d.line}, {"column", d.column}};
          break;
        }
      }
      return r;
    }
    auto record = store_.insert(std::move(source), std::move(*loaded.problem));
    return {201, json{{"id", record->id}, {"warnings", json_io::to_json(loaded.diagnostics)}}};
  });
}

Response ConfigService::get_instance(const std::string& id) {
  auto record = store_.find(id);
  if (!record) return error(404, "UNKNOWN_INSTANCE", "no instance with id " + id);
  json body = json_io::problem_summary(record->problem);
  body["id"] = record->id;
  return {200, std::move(body)};
}

namespace {

SolveOptions options_from(const json& req, const ServiceConfig& config) {
  SolveOptions o;
  o.time_budget = config.time_budget;
  o.node_budget = config.node_budget;
  if (req.contains("maxModels")) {
    const auto& m = req.at("maxModels");
    if (!m.is_number_integer() || m.get<std::int64_t>() < 0) {
      throw json_io::JsonError("maxModels must be a nonnegative integer");
    }
    o.max_models = m.get<std::uint64_t>();
  }
  if (req.contains("minimalOnly")) {
    if (!req.at("minimalOnly").is_boolean()) throw json_io::JsonError("minimalOnly must be a boolean");
    o.minimal_only = req.at("minimalOnly").get<bool>();
  }
  if (req.contains("requirements")) o.extra_requirements = json_io::requirements_from_json(req.at("requirements"));
  return o;
}

}  // namespace

Response ConfigService::solve(const std::string& id, std::string_view body) {
  auto record = store_.find(id);
  if (!record) return error(404, "UNKNOWN_INSTANCE", "no instance with id " + id);
  return guarded([&]() -> Response {
    const SolveOptions o = options_from(parse_body(body), config_);
    return {200, json_io::to_json(pconf::solve(record->problem, o))};
  });
}

Response ConfigService::whatif(const std::string& id, std::string_view body) {
  auto record = store_.find(id);
  if (!record) return error(404, "UNKNOWN_INSTANCE", "no instance with id " + id);
  return guarded([&]() -> Response {
    const json req = parse_body(body);
    const SolveOptions o = options_from(req, config_);
    const Term component = json_io::term_from_json(req.at("component"));
    const Term property = json_io::term_from_json(req.at("property"));
    return {200, json_io::to_json(consistent_values(record->problem, o, component, property))};
  });
}

Response ConfigService::check(const std::string& id, std::string_view body) {
  auto record = store_.find(id);
  if (!record) return error(404, "UNKNOWN_INSTANCE", "no instance with id " + id);
  return guarded([&]() -> Response {
    const json req = parse_body(body);
    std::set<Triple> candidate;
    if (req.contains("assignments")) {
      const json& arr = req.at("assignments");
      if (!arr.is_array()) throw json_io::JsonError("assignments must be an array");
      for (const auto& a : arr) candidate.insert(json_io::triple_from_json(a));
    }
    return {200, json{{"violations", json_io::to_json(pconf::check(record->problem, candidate))}}};
  });
}

// ---------------------------------------------------------------------------
// HttpServer

struct HttpServer::Impl {
  explicit Impl(ConfigService& s) : service(s) {}
  ConfigService& service;
  httplib::Server server;
};

HttpServer::HttpServer(ConfigService& service, std::optional<std::string> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  const auto& config = service.config();
  srv.set_payload_max_length(config.max_payload);
  // SO_REUSEADDR only: the default also sets SO_REUSEPORT, which would let a
  // second server bind a port that is already in use.
  srv.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof yes);
  });
  srv.set_default_headers({{"Access-Control-Allow-Origin", config.cors_origin},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});

  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  ConfigService* svc = &service;

  srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  srv.Post("/api/instances", [svc, send](const httplib::Request& req, httplib::Response& res) {
    send(res, svc->create_instance(req.body));
  });
  srv.Get(R"(/api/instances/([^/]+))", [svc, send](const httplib::Request& req, httplib::Response& res) {
    send(res, svc->get_instance(req.matches[1]));
  });
  srv.Post(R"(/api/instances/([^/]+)/solve)", [svc, send](const httplib::Request& req, httplib::Response& res) {
    send(res, svc->solve(req.matches[1], req.body));
  });
  srv.Post(R"(/api/instances/([^/]+)/whatif)", [svc, send](const httplib::Request& req, httplib::Response& res) {
    send(res, svc->whatif(req.matches[1], req.body));
  });
  srv.Post(R"(/api/instances/([^/]+)/check)", [svc, send](const httplib::Request& req, httplib::Response& res) {
    send(res, svc->check(req.matches[1], req.body));
  });
  srv.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const bool too_large = res.status == 413;
    const json body{{"code", too_large ? "PAYLOAD_TOO_LARGE" : "NOT_FOUND"},
                    {"message", too_large ? "request body too large" : "no route for " + req.path}};
    res.set_content(body.dump(), "application/json");
  });
  if (static_dir) srv.set_mount_point("/", *static_dir);
}

HttpServer::~HttpServer() = default;

std::optional<int> HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound <= 0) return std::nullopt;
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) return std::nullopt;
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace pconf::service
