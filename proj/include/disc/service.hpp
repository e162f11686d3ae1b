#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "disc/mtree.hpp"
#include "disc/solvers.hpp"
#include "disc/zoom.hpp"

namespace disc {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t max_points = 100000;
  std::string persist_path;  // empty: memory only

  /// Reads DISC_BIND ("host" or "host:port"), DISC_MAX_POINTS and
  /// DISC_PERSIST_PATH on top of the defaults.
  static ServiceConfig from_env();
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

/// Session store and request router. Safe to call from many threads; the
/// mutating calls on one dataset (solving, zooming) are serialized by a
/// try-lock, and a second caller gets 409 instead of waiting.
class Service {
 public:
  explicit Service(ServiceConfig config = {});
  ~Service();

  /// Routes one request. `target` is the path plus an optional query string.
  Response handle(std::string_view method, std::string_view target, std::string_view body,
                  std::string_view content_type = "application/json");

  Response create_dataset(std::string_view body, std::string_view content_type);
  Response get_dataset(const std::string& id, bool with_points) const;
  Response solve(const std::string& dataset_id, std::string_view body);
  Response zoom(const std::string& solution_id, std::string_view body);
  Response get_solution(const std::string& id, const std::optional<std::string>& reference) const;

  /// Holds the mutation lock of a dataset; requests that would mutate it get
  /// 409 until the lock is released. Throws std::out_of_range on an unknown id.
  std::unique_lock<std::mutex> lock_dataset(const std::string& id);

  const ServiceConfig& config() const { return config_; }

  /// JSON snapshot of every dataset and solution; trees are rebuilt on load.
  nlohmann::json snapshot() const;
  void restore(const nlohmann::json& snap);

 private:
  struct DatasetEntry {
    std::string id;
    std::shared_ptr<const Dataset> data;
    Metric metric = Metric::euclidean;
    std::size_t capacity = 50;
    std::unique_ptr<MTree> tree;
    std::mutex mutation;
  };
  struct SolutionEntry {
    std::string id;
    std::string dataset;
    DiverseSubset subset;
    bool independent = true;  // false for covering-only solvers
    Verification verification;
    std::optional<std::string> parent;
    std::optional<ZoomDiff> diff;
    std::optional<ObjectId> focus;
    bool global = true;  // false after a local zoom: checked inside its region only
  };

  std::shared_ptr<DatasetEntry> find_dataset(const std::string& id) const;
  std::shared_ptr<const SolutionEntry> find_solution(const std::string& id) const;
  std::string add_dataset(std::shared_ptr<const Dataset> data, Metric metric, std::size_t capacity);
  std::string add_solution(std::shared_ptr<SolutionEntry> entry);
  nlohmann::json summary(const DatasetEntry& e) const;
  nlohmann::json describe(const SolutionEntry& s) const;
  void persist() const;

  ServiceConfig config_;
  mutable std::shared_mutex store_mutex_;
  mutable std::mutex persist_mutex_;
  std::map<std::string, std::shared_ptr<DatasetEntry>> datasets_;
  std::map<std::string, std::shared_ptr<const SolutionEntry>> solutions_;
  std::uint64_t next_dataset_ = 1;
  std::uint64_t next_solution_ = 1;
};

/// Serves a Service over HTTP.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  /// Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it; call run() afterwards.
  int bind_any(const std::string& host);
  bool run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace disc
