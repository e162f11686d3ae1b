#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "disc/metrics.hpp"

namespace disc {

/// n points drawn uniformly from [0,1]^d.
Dataset gen_uniform(std::size_t n, std::size_t d, std::uint64_t seed);

struct ClusterParams {
  std::size_t clusters = 5;
  double sigma_min = 0.02;
  double sigma_max = 0.08;
};

/// Gaussian clusters around uniform centers, clipped to [0,1]^d. Cluster
/// weights are drawn from [1, 4] so sizes differ; each cluster draws its own
/// spread from [sigma_min, sigma_max].
Dataset gen_clustered(std::size_t n, std::size_t d, std::uint64_t seed, ClusterParams params = {});

/// n tuples of d attributes, each label drawn uniformly from `arity`
/// values named "a0", "a1", ...
Dataset gen_categorical(std::size_t n, std::size_t d, std::size_t arity, std::uint64_t seed);

struct CsvOptions {
  std::optional<PointKind> kind;  // inferred when empty: numeric iff every cell parses
  bool normalize = true;          // min-max per numeric column
};

/// Header row names the dimensions. Throws std::runtime_error on an empty
/// input, ragged rows, or (with a numeric kind) non-numeric cells, and when
/// inference finds a mix of numeric and non-numeric columns.
Dataset read_csv(std::istream& in, CsvOptions options = {});
Dataset load_csv(const std::string& path, CsvOptions options = {});
void write_csv(std::ostream& out, const Dataset& data);
void save_csv(const std::string& path, const Dataset& data);

/// Generator description, e.g.
///   {"generator": "clustered", "n": 10000, "d": 2, "seed": 7, "clusters": 5}
/// Unknown keys are rejected.
struct GeneratorSpec {
  std::string generator = "clustered";  // uniform | clustered | categorical
  std::size_t n = 10000;
  std::size_t d = 2;
  std::uint64_t seed = 0;
  ClusterParams cluster{};
  std::size_t arity = 4;

  static GeneratorSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  Dataset generate() const;
};

}  // namespace disc
