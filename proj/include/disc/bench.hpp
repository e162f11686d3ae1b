#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "disc/data.hpp"
#include "disc/mtree.hpp"

namespace disc {

/// Experiment configuration. Parsed strictly: unknown keys are errors.
///
///   {
///     "suite": "disc" | "zoom" | "tree",
///     "dataset": {<generator spec>} | {"csv": "path", "kind": "numeric", "normalize": true},
///     "metric": "euclidean",
///     "seeds": [1, 2, 3],          // replaces the generator seed per run
///     "radii": [0.01, 0.02],
///     "algorithms": ["basic", "grey"],
///     "tree": {"capacity": 50, "split_policy": "min_overlap", "count_at_build": false},
///     "zoom_in": ["plain", "greedy"], "zoom_out": ["plain", "greedy_a"],
///     "policies": ["min_overlap", "random"], "capacities": [25, 50, 100],
///     "workload_radius": 0.01,
///     "timing": false               // wall time columns print "-" unless true
///   }
struct BenchConfig {
  std::string suite = "disc";
  GeneratorSpec generator{};
  std::optional<std::string> csv_path;
  std::optional<PointKind> csv_kind;
  bool csv_normalize = true;
  Metric metric = Metric::euclidean;
  std::vector<std::uint64_t> seeds{0};
  std::vector<double> radii{0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07};
  std::vector<std::string> algorithms{"basic", "grey", "lazy_grey", "lazy_white", "greedy_c"};
  std::size_t capacity = 50;
  std::string split_policy = "min_overlap";
  bool count_at_build = false;
  std::vector<std::string> zoom_in{"plain", "greedy"};
  std::vector<std::string> zoom_out{"plain", "greedy_a", "greedy_b", "greedy_c"};
  std::vector<std::string> policies{"min_overlap", "max_distance", "balanced", "random"};
  std::vector<std::size_t> capacities{25, 50, 100};
  double workload_radius = 0.01;
  bool timing = false;

  static BenchConfig from_json(const nlohmann::json& j);
  /// Throws std::invalid_argument on unusable values.
  void validate() const;
  Dataset dataset(std::uint64_t seed) const;
  std::string dataset_name() const;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& out) const;
  std::size_t column(const std::string& name) const;  // throws if absent
};

/// Columns: seed,dataset,n,d,metric,algorithm,radius,size,node_accesses,
/// wall_ms,coverage,independence
Table run_suite(const BenchConfig& cfg);

/// Walks the radius ladder in both directions. Each step adapts the greedy
/// solution of the previous radius and also solves from scratch.
/// Columns: seed,dataset,direction,variant,r_from,r_to,size,node_accesses,
/// wall_ms,jaccard_prev,coverage,independence
Table run_zoom_suite(const BenchConfig& cfg);

/// Columns: seed,dataset,policy,capacity,height,nodes,fat_factor,
/// build_accesses,workload_accesses,size
Table run_tree_suite(const BenchConfig& cfg);

Table run(const BenchConfig& cfg);

/// Means of `value_columns` grouped by `key_columns` (plot data).
Table summarize(const Table& t, const std::vector<std::string>& key_columns,
                const std::vector<std::string>& value_columns);

Table read_table_csv(std::istream& in);

}  // namespace disc
