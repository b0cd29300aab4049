#pragma once

#include <chrono>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include <json.hpp>

#include "pconf/model.hpp"

namespace pconf::service {

struct ServiceConfig {
  std::size_t max_payload = 1 << 20;
  std::size_t capacity = 256;
  std::chrono::milliseconds time_budget{5000};
  std::uint64_t node_budget = 1'000'000;
  std::string cors_origin = "*";
};

struct InstanceRecord {
  std::string id;
  std::string source;
  ConfigurationProblem problem;
  std::chrono::system_clock::time_point created_at;
};

/// Bounded LRU of uploaded instances. All members are thread-safe.
class InstanceStore {
public:
  explicit InstanceStore(std::size_t capacity) : capacity_(capacity) {}

  std::shared_ptr<const InstanceRecord> insert(std::string source, ConfigurationProblem problem);
  std::shared_ptr<const InstanceRecord> find(const std::string& id);
  std::size_t size() const;

private:
  std::string next_id();

  using Entry = std::shared_ptr<const InstanceRecord>;
  mutable std::mutex mutex_;
  std::size_t capacity_;
  std::list<Entry> order_;  // most recently used first
  std::unordered_map<std::string, std::list<Entry>::iterator> by_id_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_ = 0;
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

/// Endpoint logic, independent of the HTTP transport. Each method takes the
/// raw request body and returns the status and JSON body to send.
class ConfigService {
public:
  explicit ConfigService(ServiceConfig config = {});

  Response create_instance(std::string_view body);
  Response get_instance(const std::string& id);
  Response solve(const std::string& id, std::string_view body);
  Response whatif(const std::string& id, std::string_view body);
  Response check(const std::string& id, std::string_view body);

  const ServiceConfig& config() const { return config_; }
  InstanceStore& store() { return store_; }

private:
  ServiceConfig config_;
  InstanceStore store_;
};

/// HTTP transport for ConfigService. Serves the JSON API under /api and,
/// optionally, a static directory under /.
class HttpServer {
public:
  HttpServer(ConfigService& service, std::optional<std::string> static_dir = std::nullopt);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port, or nullopt.
  std::optional<int> bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();
  void wait_until_ready() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pconf::service
