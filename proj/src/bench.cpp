#include "disc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "disc/baselines.hpp"
#include "disc/export.hpp"
#include "disc/solvers.hpp"
#include "disc/zoom.hpp"

namespace disc {

namespace {

using nlohmann::json;

template <class T>
std::vector<T> list(const json& v) {
  if (!v.is_array()) throw std::invalid_argument("expected a JSON array");
  return v.get<std::vector<T>>();
}

std::string yes_no(bool b) { return b ? "1" : "0"; }

MTreeConfig tree_config(std::size_t capacity, const std::string& policy, std::uint64_t seed) {
  MTreeConfig t;
  t.node_capacity = capacity;
  t.split_policy = SplitPolicy::parse(policy);
  t.seed = seed;
  return t;
}

}  // namespace

BenchConfig BenchConfig::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("bench config must be a JSON object");
  BenchConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "suite") c.suite = v.get<std::string>();
    else if (key == "dataset") {
      if (v.contains("csv")) {
        for (const auto& [k, x] : v.items()) {
          if (k == "csv") c.csv_path = x.get<std::string>();
          else if (k == "kind") c.csv_kind = parse_kind(x.get<std::string>());
          else if (k == "normalize") c.csv_normalize = x.get<bool>();
          else throw std::invalid_argument("unknown csv dataset key '" + k + "'");
        }
      } else {
        c.generator = GeneratorSpec::from_json(v);
      }
    } else if (key == "metric") c.metric = parse_metric(v.get<std::string>());
    else if (key == "seeds") c.seeds = list<std::uint64_t>(v);
    else if (key == "radii") c.radii = list<double>(v);
    else if (key == "algorithms") c.algorithms = list<std::string>(v);
    else if (key == "tree") {
      for (const auto& [k, x] : v.items()) {
        if (k == "capacity") c.capacity = x.get<std::size_t>();
        else if (k == "split_policy") c.split_policy = x.get<std::string>();
        else if (k == "count_at_build") c.count_at_build = x.get<bool>();
        else throw std::invalid_argument("unknown tree key '" + k + "'");
      }
    } else if (key == "zoom_in") c.zoom_in = list<std::string>(v);
    else if (key == "zoom_out") c.zoom_out = list<std::string>(v);
    else if (key == "policies") c.policies = list<std::string>(v);
    else if (key == "capacities") c.capacities = list<std::size_t>(v);
    else if (key == "workload_radius") c.workload_radius = v.get<double>();
    else if (key == "timing") c.timing = v.get<bool>();
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  c.validate();
  return c;
}

void BenchConfig::validate() const {
  if (suite != "disc" && suite != "zoom" && suite != "tree")
    throw std::invalid_argument("unknown suite '" + suite + "'");
  if (seeds.empty()) throw std::invalid_argument("no seeds");
  for (double r : radii)
    if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
  for (const auto& a : algorithms) AlgorithmSpec::parse(a);
  SplitPolicy::parse(split_policy);
  if (capacity < 4) throw std::invalid_argument("node capacity must be at least 4");
  for (const auto& v : zoom_in) {
    const auto z = parse_zoom_variant(v);
    if (z != ZoomVariant::plain && z != ZoomVariant::greedy)
      throw std::invalid_argument("zoom-in variant '" + v + "' is not plain or greedy");
  }
  for (const auto& v : zoom_out) parse_zoom_variant(v);
  for (const auto& p : policies) SplitPolicy::parse(p);
  for (auto cap : capacities)
    if (cap < 4) throw std::invalid_argument("node capacity must be at least 4");
  if (suite == "disc" && (radii.empty() || algorithms.empty()))
    throw std::invalid_argument("disc suite needs radii and algorithms");
  if (suite == "zoom") {
    if (radii.size() < 2) throw std::invalid_argument("zoom ladder needs at least two radii");
    std::vector<double> sorted = radii;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("zoom ladder has repeated radii");
  }
  if (suite == "tree") {
    if (policies.empty()) throw std::invalid_argument("tree suite needs at least one policy");
    if (capacities.empty()) throw std::invalid_argument("tree suite needs at least one capacity");
    if (!(workload_radius > 0.0)) throw std::invalid_argument("workload radius must be positive");
  }
}

Dataset BenchConfig::dataset(std::uint64_t seed) const {
  if (csv_path) return load_csv(*csv_path, CsvOptions{csv_kind, csv_normalize});
  GeneratorSpec g = generator;
  g.seed = seed;
  return g.generate();
}

std::string BenchConfig::dataset_name() const {
  if (csv_path) return *csv_path;
  return generator.generator + "_" + std::to_string(generator.n) + "x" + std::to_string(generator.d);
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::invalid_argument("no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

Table run_suite(const BenchConfig& cfg) {
  cfg.validate();
  Table t{{"seed", "dataset", "n", "d", "metric", "algorithm", "radius", "size", "node_accesses",
           "wall_ms", "coverage", "independence"},
          {}};
  for (std::uint64_t seed : cfg.seeds) {
    auto data = std::make_shared<const Dataset>(cfg.dataset(seed));
    for (double r : cfg.radii) {
      MTreeConfig tc = tree_config(cfg.capacity, cfg.split_policy, seed);
      tc.count_neighborhoods_at_build = cfg.count_at_build;
      tc.build_radius = cfg.count_at_build ? r : 0.0;
      MTree tree(data, cfg.metric, tc);
      for (const auto& name : cfg.algorithms) {
        const AlgorithmSpec spec = AlgorithmSpec::parse(name);
        const DiverseSubset s = solve(tree, r, spec);
        const Verification v = verify(*data, s, cfg.metric);
        if (!v.coverage || (spec.independent() && !v.independence))
          throw std::logic_error("solution failed verification: " + name);
        t.rows.push_back({std::to_string(seed), cfg.dataset_name(), std::to_string(data->size()),
                          std::to_string(data->dim()), std::string(to_string(cfg.metric)), name,
                          format_number(r), std::to_string(s.size()),
                          std::to_string(s.access_cost),
                          cfg.timing ? format_number(s.wall_ms) : "-", yes_no(v.coverage),
                          yes_no(v.independence)});
      }
    }
  }
  return t;
}

Table run_zoom_suite(const BenchConfig& cfg) {
  cfg.validate();
  if (cfg.radii.size() < 2) throw std::invalid_argument("zoom ladder needs at least two radii");
  Table t{{"seed", "dataset", "direction", "variant", "r_from", "r_to", "size", "node_accesses",
           "wall_ms", "jaccard_prev", "coverage", "independence"},
          {}};
  std::vector<double> ladder = cfg.radii;
  std::sort(ladder.begin(), ladder.end());

  for (std::uint64_t seed : cfg.seeds) {
    auto data = std::make_shared<const Dataset>(cfg.dataset(seed));
    MTree tree(data, cfg.metric, tree_config(cfg.capacity, cfg.split_policy, seed));
    std::map<double, DiverseSubset> scratch;
    for (double r : ladder) scratch[r] = greedy_disc(tree, r, GreedyVariant::grey, false);

    auto emit = [&](const std::string& dir, const std::string& variant, double from, double to,
                    const DiverseSubset& s, const DiverseSubset& prev) {
      const Verification v = verify(*data, s, cfg.metric);
      if (!v.valid()) throw std::logic_error("zoom result failed verification: " + variant);
      t.rows.push_back({std::to_string(seed), cfg.dataset_name(), dir, variant, format_number(from),
                        format_number(to), std::to_string(s.size()), std::to_string(s.access_cost),
                        cfg.timing ? format_number(s.wall_ms) : "-",
                        format_number(jaccard(s.ids, prev.ids)), yes_no(v.coverage),
                        yes_no(v.independence)});
    };

    auto step = [&](const std::string& dir, double from, double to,
                    const std::vector<std::string>& variants) {
      const DiverseSubset& prev = scratch.at(from);
      for (const auto& name : variants) {
        maintain_closest_black(tree, prev);
        const auto start = std::chrono::steady_clock::now();
        DiverseSubset s = zoom(tree, prev, to, parse_zoom_variant(name));
        s.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        emit(dir, name, from, to, s, prev);
      }
      emit(dir, "scratch", from, to, scratch.at(to), prev);
    };

    for (std::size_t i = ladder.size() - 1; i > 0; --i) step("in", ladder[i], ladder[i - 1], cfg.zoom_in);
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) step("out", ladder[i], ladder[i + 1], cfg.zoom_out);
  }
  return t;
}

Table run_tree_suite(const BenchConfig& cfg) {
  cfg.validate();
  Table t{{"seed", "dataset", "policy", "capacity", "height", "nodes", "fat_factor",
           "build_accesses", "workload_accesses", "size"},
          {}};
  for (std::uint64_t seed : cfg.seeds) {
    auto data = std::make_shared<const Dataset>(cfg.dataset(seed));
    for (const auto& policy : cfg.policies)
      for (std::size_t cap : cfg.capacities) {
        MTree tree(data, cfg.metric, tree_config(cap, policy, seed));
        const DiverseSubset s = greedy_disc(tree, cfg.workload_radius, GreedyVariant::grey, false);
        if (!verify(*data, s, cfg.metric).valid())
          throw std::logic_error("workload solution failed verification");
        t.rows.push_back({std::to_string(seed), cfg.dataset_name(), policy, std::to_string(cap),
                          std::to_string(tree.height()), std::to_string(tree.node_count()),
                          format_number(tree.fat_factor()), std::to_string(tree.build_accesses()),
                          std::to_string(s.access_cost), std::to_string(s.size())});
      }
  }
  return t;
}

Table run(const BenchConfig& cfg) {
  if (cfg.suite == "zoom") return run_zoom_suite(cfg);
  if (cfg.suite == "tree") return run_tree_suite(cfg);
  return run_suite(cfg);
}

Table summarize(const Table& t, const std::vector<std::string>& key_columns,
                const std::vector<std::string>& value_columns) {
  std::vector<std::size_t> keys, values;
  for (const auto& k : key_columns) keys.push_back(t.column(k));
  for (const auto& v : value_columns) values.push_back(t.column(v));
  // Groups keep first-appearance order.
  std::vector<std::vector<std::string>> order;
  std::map<std::vector<std::string>, std::pair<std::vector<double>, std::size_t>> acc;
  for (const auto& row : t.rows) {
    std::vector<std::string> key;
    for (auto k : keys) key.push_back(row.at(k));
    auto [it, fresh] = acc.try_emplace(key, std::vector<double>(values.size(), 0.0), 0);
    if (fresh) order.push_back(key);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string& cell = row.at(values[i]);
      it->second.first[i] += cell == "-" ? 0.0 : std::stod(cell);
    }
    ++it->second.second;
  }
  Table out;
  out.columns = key_columns;
  for (const auto& v : value_columns) out.columns.push_back("mean_" + v);
  out.columns.push_back("runs");
  for (const auto& key : order) {
    const auto& [sums, count] = acc.at(key);
    std::vector<std::string> row = key;
    for (double s : sums) row.push_back(format_number(s / static_cast<double>(count)));
    row.push_back(std::to_string(count));
    out.rows.push_back(std::move(row));
  }
  return out;
}

Table read_table_csv(std::istream& in) {
  Table t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line)) throw std::runtime_error("empty table");
  t.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split(line);
    if (row.size() != t.columns.size()) throw std::runtime_error("ragged table row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace disc
