// Command-line front end: dataset generation, indexing, solving, zooming,
// benchmarks, reports and the HTTP service.

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>

#include "disc/bench.hpp"
#include "disc/data.hpp"
#include "disc/export.hpp"
#include "disc/service.hpp"

using namespace disc;
using nlohmann::json;

namespace {

struct DataOptions {
  std::string input;
  std::string kind;
  bool no_normalize = false;
  std::string generator = "clustered";
  std::size_t n = 10000;
  std::size_t d = 2;
  std::uint64_t seed = 0;
  std::size_t clusters = 5;
  std::size_t arity = 4;

  void add(CLI::App* app) {
    app->add_option("-i,--input", input, "CSV file to load instead of generating");
    app->add_option("--kind", kind, "numeric | categorical (CSV input; inferred if absent)")
        ->check(CLI::IsMember({"numeric", "categorical"}));
    app->add_flag("--no-normalize", no_normalize, "keep raw CSV values");
    app->add_option("--generator", generator, "uniform | clustered | categorical")
        ->check(CLI::IsMember({"uniform", "clustered", "categorical"}))
        ->capture_default_str();
    app->add_option("-n,--n", n, "number of objects")->capture_default_str();
    app->add_option("-d,--dim", d, "dimensionality")->capture_default_str();
    app->add_option("--seed", seed)->capture_default_str();
    app->add_option("--clusters", clusters)->capture_default_str();
    app->add_option("--arity", arity, "labels per categorical attribute")->capture_default_str();
  }

  Dataset load() const {
    if (!input.empty()) {
      CsvOptions o;
      if (!kind.empty()) o.kind = parse_kind(kind);
      o.normalize = !no_normalize;
      return load_csv(input, o);
    }
    GeneratorSpec g;
    g.generator = generator;
    g.n = n;
    g.d = d;
    g.seed = seed;
    g.cluster.clusters = clusters;
    g.arity = arity;
    return g.generate();
  }
};

struct TreeOptions {
  std::size_t capacity = 50;
  std::string policy = "min_overlap";
  std::string metric;
  std::uint64_t tree_seed = 0;

  void add(CLI::App* app) {
    app->add_option("--capacity", capacity, "M-tree node capacity")->capture_default_str();
    app->add_option("--split-policy", policy, "min_overlap | max_distance | balanced | random")
        ->capture_default_str();
    app->add_option("--metric", metric, "euclidean | manhattan | hamming (default by kind)");
    app->add_option("--tree-seed", tree_seed, "seed of the random promote policy");
  }

  std::unique_ptr<MTree> build(std::shared_ptr<const Dataset> data) const {
    MTreeConfig cfg;
    cfg.node_capacity = capacity;
    cfg.split_policy = SplitPolicy::parse(policy);
    cfg.seed = tree_seed;
    const Metric m = metric.empty()
                         ? (data->kind() == PointKind::numeric ? Metric::euclidean : Metric::hamming)
                         : parse_metric(metric);
    return std::make_unique<MTree>(std::move(data), m, cfg);
  }
};

// Writes to the file named by `path`, or stdout when it is empty.
template <typename F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
}

void print_solution(const std::string& path, const std::string& format, const Dataset& data,
                    const DiverseSubset& s, json extra) {
  emit(path, [&](std::ostream& out) {
    if (format == "csv") {
      write_solution_csv(out, data, s);
      return;
    }
    json j = to_json(s);
    for (auto& [k, v] : extra.items()) j[k] = v;
    out << j.dump(2) << '\n';
  });
}

HttpServer* running = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diverse subset engine"};
  app.require_subcommand(1);

  DataOptions data_opts;
  TreeOptions tree_opts;
  std::string output, format = "json";

  auto* gen = app.add_subcommand("gen", "generate a dataset as CSV");
  data_opts.add(gen);
  gen->add_option("-o,--output", output);

  auto* index = app.add_subcommand("index", "build an M-tree and print its statistics");
  data_opts.add(index);
  tree_opts.add(index);
  bool audit = false;
  index->add_flag("--audit", audit, "also check the tree's structural invariants");

  double radius = 0.0;
  std::string algorithm = "grey";
  auto* solve_cmd = app.add_subcommand("disc", "compute a diverse subset");
  data_opts.add(solve_cmd);
  tree_opts.add(solve_cmd);
  solve_cmd->add_option("-r,--radius", radius)->required()->check(CLI::PositiveNumber);
  solve_cmd->add_option("-a,--algorithm", algorithm,
                        "basic | grey | white | lazy_grey | lazy_white (each with _pruned), greedy_c, fast_c")
      ->capture_default_str();
  solve_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  solve_cmd->add_option("-o,--output", output);

  double r_prime = 0.0;
  std::string variant = "plain";
  std::int64_t focus = -1;
  auto* zoom_cmd = app.add_subcommand("zoom", "solve at one radius, then adapt to another");
  data_opts.add(zoom_cmd);
  tree_opts.add(zoom_cmd);
  zoom_cmd->add_option("-r,--radius", radius)->required()->check(CLI::PositiveNumber);
  zoom_cmd->add_option("--r-prime", r_prime)->required()->check(CLI::PositiveNumber);
  zoom_cmd->add_option("-a,--algorithm", algorithm, "solver for the starting subset")
      ->capture_default_str();
  zoom_cmd->add_option("--variant", variant, "plain | greedy | greedy_a | greedy_b | greedy_c")
      ->capture_default_str();
  zoom_cmd->add_option("--focus", focus, "zoom locally around this member");
  zoom_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  zoom_cmd->add_option("-o,--output", output);

  std::string config_path;
  bool timing = false;
  auto* bench = app.add_subcommand("bench", "run an experiment suite from a JSON config");
  bench->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  bench->add_flag("--timing", timing, "fill the wall_ms column");
  bench->add_option("-o,--output", output);

  std::string table_path;
  std::vector<std::string> keys{"algorithm", "radius"}, values{"size", "node_accesses"};
  auto* report = app.add_subcommand("report", "average benchmark columns per group");
  report->add_option("table", table_path)->required()->check(CLI::ExistingFile);
  report->add_option("--keys", keys)->delimiter(',')->capture_default_str();
  report->add_option("--values", values)->delimiter(',')->capture_default_str();
  report->add_option("-o,--output", output);

  ServiceConfig svc = ServiceConfig::from_env();
  std::string bind;
  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--bind", bind, "host:port (default from DISC_BIND or 127.0.0.1:8080)");
  serve->add_option("--max-points", svc.max_points)->capture_default_str();
  serve->add_option("--persist", svc.persist_path, "JSON snapshot file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const Dataset d = data_opts.load();
      emit(output, [&](std::ostream& out) { write_csv(out, d); });
    } else if (index->parsed()) {
      auto tree = tree_opts.build(std::make_shared<const Dataset>(data_opts.load()));
      json j = to_json(tree->stats());
      if (audit) j["audit"] = tree->audit();
      std::cout << j.dump(2) << '\n';
      if (audit && !tree->audit().empty()) return 1;
    } else if (solve_cmd->parsed()) {
      auto data = std::make_shared<const Dataset>(data_opts.load());
      auto tree = tree_opts.build(data);
      const auto spec = AlgorithmSpec::parse(algorithm);
      const auto s = solve(*tree, radius, spec);
      const auto v = verify(*data, s, tree->metric());
      print_solution(output, format, *data, s, {{"verification", to_json(v)}});
      const bool ok = spec.independent() ? v.valid() : v.coverage;
      if (!ok) return 1;
    } else if (zoom_cmd->parsed()) {
      auto data = std::make_shared<const Dataset>(data_opts.load());
      auto tree = tree_opts.build(data);
      const auto spec = AlgorithmSpec::parse(algorithm);
      if (!spec.independent()) throw std::invalid_argument("zooming needs an independent starting subset");
      const auto base = solve(*tree, radius, spec);
      const auto v = parse_zoom_variant(variant);
      DiverseSubset next;
      json extra;
      if (focus >= 0) {
        const auto res = local_zoom(*tree, base, static_cast<ObjectId>(focus), r_prime, v);
        next = res.merged;
        extra["region"] = res.region;
        extra["local_valid"] = res.local_valid;
        extra["uncovered"] = res.uncovered;
        extra["boundary_conflicts"] = res.boundary_conflicts.size();
      } else {
        next = zoom(*tree, base, r_prime, v);
      }
      extra["base"] = to_json(base);
      extra["diff"] = to_json(diff(base.ids, next.ids));
      extra["verification"] = to_json(verify(*data, next, tree->metric()));
      print_solution(output, format, *data, next, extra);
    } else if (bench->parsed()) {
      std::ifstream in(config_path);
      json j = json::parse(in);
      if (timing) j["timing"] = true;
      const Table t = run(BenchConfig::from_json(j));
      emit(output, [&](std::ostream& out) { t.write_csv(out); });
    } else if (report->parsed()) {
      std::ifstream in(table_path);
      const Table t = summarize(read_table_csv(in), keys, values);
      emit(output, [&](std::ostream& out) { t.write_csv(out); });
    } else if (serve->parsed()) {
      if (!bind.empty()) {
        const auto colon = bind.rfind(':');
        svc.host = bind.substr(0, colon);
        if (colon != std::string::npos) svc.port = std::stoi(bind.substr(colon + 1));
      }
      Service service(svc);
      HttpServer server(service);
      running = &server;
      std::signal(SIGINT, [](int) { running->stop(); });
      std::signal(SIGTERM, [](int) { running->stop(); });
      std::cerr << "listening on " << svc.host << ':' << svc.port << '\n';
      if (!server.listen(svc.host, svc.port)) {
        std::cerr << "cannot bind " << svc.host << ':' << svc.port << '\n';
        return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
