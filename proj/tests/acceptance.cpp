// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "disc/baselines.hpp"
#include "disc/bench.hpp"
#include "disc/data.hpp"
#include "disc/metrics.hpp"
#include "disc/mtree.hpp"
#include "disc/oracle.hpp"
#include "disc/solvers.hpp"
#include "disc/zoom.hpp"

using namespace disc;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::shared_ptr<const Dataset> shared(Dataset d) { return std::make_shared<const Dataset>(std::move(d)); }

MTreeConfig tree_config(std::size_t capacity = 50, const std::string& policy = "min_overlap",
                        std::uint64_t seed = 0) {
  MTreeConfig c;
  c.node_capacity = capacity;
  c.split_policy = SplitPolicy::parse(policy);
  c.seed = seed;
  return c;
}

const std::vector<AlgorithmSpec>& independent_solvers() {
  static const std::vector<AlgorithmSpec> all = [] {
    std::vector<AlgorithmSpec> v;
    for (const char* name : {"basic", "basic_pruned", "grey", "grey_pruned", "white", "white_pruned",
                             "lazy_grey", "lazy_grey_pruned", "lazy_white", "lazy_white_pruned"})
      v.push_back(AlgorithmSpec::parse(name));
    return v;
  }();
  return all;
}

Dataset random_points(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  for (ObjectId i = 0; i < n; ++i) pts.push_back(Point::numeric(i, {u(rng), u(rng)}));
  return Dataset(std::move(pts));
}

std::string ids_text(const std::vector<ObjectId>& ids) {
  std::ostringstream s;
  for (std::size_t i = 0; i < ids.size(); ++i) s << (i ? "," : "") << ids[i];
  return s.str();
}

// ---------------------------------------------------------------------------

Outcome validity() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t checked = 0;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(50, 500);
  std::uniform_real_distribution<double> radius(0.03, 0.2);

  auto check_all = [&](const std::shared_ptr<const Dataset>& data, Metric metric, double r,
                       double r_in, double r_out, const std::string& tag) {
    MTree tree(data, metric, tree_config(10));
    auto valid = [&](const DiverseSubset& s, bool independent, const std::string& what) {
      const auto v = verify(*data, s, metric);
      ++checked;
      o.expect(independent ? v.valid() : v.coverage, tag + " " + what);
    };
    for (const auto& spec : independent_solvers()) valid(solve(tree, r, spec), true, spec.name());
    valid(greedy_c(tree, r), false, "greedy_c");
    valid(fast_c(tree, r), false, "fast_c");
    const auto base = greedy_disc(tree, r, GreedyVariant::grey, false);
    const auto basic = basic_disc(tree, r, false);
    for (const auto* b : {&base, &basic}) {
      valid(zoom_in(tree, *b, r_in, false), true, "zoom_in plain");
      valid(zoom_in(tree, *b, r_in, true), true, "zoom_in greedy");
      for (auto v : {ZoomVariant::plain, ZoomVariant::greedy_a, ZoomVariant::greedy_b,
                     ZoomVariant::greedy_c})
        valid(zoom_out(tree, *b, r_out, v), true, "zoom_out " + std::string(to_string(v)));
    }
  };

  for (int i = 0; i < 200; ++i) {
    const std::size_t n = size(rng);
    const double r = radius(rng);
    const Metric metric = i % 2 ? Metric::manhattan : Metric::euclidean;
    auto data = shared(i % 4 < 2 ? gen_uniform(n, 2, i) : gen_clustered(n, 2, i));
    check_all(data, metric, r, r * 0.6, r * 1.7, "instance " + std::to_string(i));
  }
  for (int i = 0; i < 10; ++i) {
    auto data = shared(gen_categorical(200, 7, 3 + i % 3, 500 + i));
    const double r = 1.0 + i % 4;
    check_all(data, Metric::hamming, r, r - 1.0 > 0 ? r - 1.0 : 0.5, r + 1.0,
              "categorical " + std::to_string(i));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.expect(secs <= 120.0, "runtime " + fmt("%.1f s", secs));
  o.detail = std::to_string(checked) + " outputs verified in " + fmt("%.1f s", secs);
  return o;
}

Outcome oracle_bounds() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> size(6, 14);
  std::uniform_real_distribution<double> radius(0.1, 0.5);
  double worst_b = 0.0, worst_h = 0.0;
  std::size_t ratio_checks = 0;
  for (int seed = 0; seed < 50; ++seed) {
    for (Metric metric : {Metric::euclidean, Metric::manhattan}) {
      const double r = radius(rng);
      auto data = shared(random_points(rng, size(rng)));
      const auto g = oracle::build_disc_graph(*data, r, metric);
      const auto best = oracle::min_independent_dominating_set(g).size();
      const auto best_cover = oracle::min_dominating_set(g).size();
      const double b = *independence_bound(metric, 2);
      MTree tree(data, metric, tree_config(4));
      for (const auto& spec : independent_solvers()) {
        const auto s = solve(tree, r, spec);
        worst_b = std::max(worst_b, static_cast<double>(s.size()) / best);
        o.expect(s.size() <= b * best, "seed " + std::to_string(seed) + " " + spec.name() + " size " +
                                           std::to_string(s.size()) + " vs optimum " + std::to_string(best));
      }
      double h = 0.0;
      for (std::size_t i = 1; i <= g.max_degree() + 1; ++i) h += 1.0 / static_cast<double>(i);
      for (const auto& s : {greedy_c(tree, r), fast_c(tree, r)}) {
        worst_h = std::max(worst_h, static_cast<double>(s.size()) / (h * best_cover));
        o.expect(s.size() <= h * best_cover + 1e-9,
                 "seed " + std::to_string(seed) + " " + s.algorithm + " above the harmonic bound");
      }
      const auto ratio = check_maxmin_ratio(*data, metric, r);
      ++ratio_checks;
      o.expect(ratio.ok, "seed " + std::to_string(seed) + " maxmin ratio " +
                             fmt("%.3f", ratio.lambda_star / ratio.lambda));
    }
  }
  o.detail = "100 instances; worst |S|/|S*| " + fmt("%.2f", worst_b) + ", worst covering size / H bound " +
             fmt("%.2f", worst_h) + ", " + std::to_string(ratio_checks) + " maxmin checks";
  return o;
}

Outcome empirical_b() {
  Outcome o;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0), radius(0.15, 0.45);
  std::uniform_int_distribution<std::size_t> size(8, 20);
  std::map<Metric, std::size_t> worst{{Metric::euclidean, 0}, {Metric::manhattan, 0}};
  for (int i = 0; i < 1000; ++i) {
    const Metric metric = i % 2 ? Metric::manhattan : Metric::euclidean;
    const double r = radius(rng);
    const std::size_t n = size(rng);
    std::vector<Point> pts;
    if (i % 4 < 2) {
      for (ObjectId k = 0; k < n; ++k) pts.push_back(Point::numeric(k, {u(rng), u(rng)}));
    } else {
      // A center with neighbors pushed to the edge of its ball.
      pts.push_back(Point::numeric(0, {0.5, 0.5}));
      for (ObjectId k = 1; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * u(rng);
        const double rho = r * (0.85 + 0.15 * u(rng));
        double dx = std::cos(a), dy = std::sin(a);
        if (metric == Metric::manhattan) {
          const double norm = std::abs(dx) + std::abs(dy);
          dx /= norm;
          dy /= norm;
        }
        pts.push_back(Point::numeric(k, {0.5 + rho * dx, 0.5 + rho * dy}));
      }
    }
    const Dataset data(std::move(pts));
    const std::size_t got = oracle::max_independent_neighbors(data, metric, r);
    worst[metric] = std::max(worst[metric], got);
    const auto bound = static_cast<std::size_t>(*independence_bound(metric, 2));
    o.expect(got <= bound, "instance " + std::to_string(i) + " has " + std::to_string(got));
  }
  o.detail = "1000 instances; max euclidean " + std::to_string(worst[Metric::euclidean]) +
             " (bound 5), max manhattan " + std::to_string(worst[Metric::manhattan]) + " (bound 7)";
  return o;
}

Outcome index_correctness() {
  Outcome o;
  auto data = shared(gen_clustered(2000, 2, 5));
  MTree tree(data, Metric::euclidean, tree_config(20));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0), radius(0.0, 0.2);
  std::uniform_int_distribution<ObjectId> pick(0, 1999);
  AccessCounter counter;
  for (int q = 0; q < 500; ++q) {
    const double r = radius(rng);
    const ObjectId c = pick(rng);
    const Point free_center = Point::numeric(0, {u(rng), u(rng)});
    const Point& center = q % 2 ? (*data)[c] : free_center;
    std::vector<ObjectId> expect;
    for (const auto& p : data->points())
      if (distance_unchecked(Metric::euclidean, center, p) <= r) expect.push_back(p.id);
    auto ids = [](std::vector<Neighbor> hits) {
      std::vector<ObjectId> v;
      for (const auto& h : hits) v.push_back(h.id);
      std::sort(v.begin(), v.end());
      return v;
    };
    o.expect(ids(tree.range_query(center, r, {QueryMode::top_down}, counter)) == expect,
             "top-down query " + std::to_string(q));
    if (q % 2)
      o.expect(ids(tree.range_query(c, r, {QueryMode::bottom_up}, counter)) == expect,
               "bottom-up query " + std::to_string(q));
  }

  std::size_t pairs = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto d = shared(seed % 2 ? gen_uniform(3000, 2, seed) : gen_clustered(3000, 2, seed));
    MTree t(d, Metric::euclidean, tree_config(25));
    for (double r : {0.01, 0.03, 0.06}) {
      for (const char* name : {"basic", "grey", "white", "lazy_grey", "lazy_white"}) {
        auto spec = AlgorithmSpec::parse(name);
        const auto plain = solve(t, r, spec);
        spec.pruned = true;
        const auto pruned = solve(t, r, spec);
        ++pairs;
        const std::string tag = std::string(name) + " seed " + std::to_string(seed) + " r " + fmt("%g", r);
        o.expect(pruned.ids == plain.ids, tag + " ids differ");
        o.expect(pruned.access_cost <= plain.access_cost, tag + " pruned costs more");
      }
    }
  }

  auto uniform = shared(gen_uniform(10000, 2, 1));
  MTree big(uniform, Metric::euclidean, tree_config());
  const auto plain = basic_disc(big, 0.01, false);
  const auto pruned = basic_disc(big, 0.01, true);
  const double saving = 1.0 - static_cast<double>(pruned.access_cost) / plain.access_cost;
  o.expect(saving >= 0.10, "pruning saves only " + fmt("%.1f%%", 100 * saving));
  o.detail = "500 queries exact; " + std::to_string(pairs) + " pruned/unpruned pairs; basic r=0.01 saving " +
             fmt("%.1f%%", 100 * saving);
  return o;
}

Outcome table_envelope() {
  Outcome o;
  const std::vector<double> radii{0.01, 0.02, 0.04, 0.07};
  const std::vector<double> basic_ref{3839, 1360, 411, 145}, greedy_ref{3260, 1120, 352, 130};
  std::vector<double> basic_sum(radii.size()), greedy_sum(radii.size());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    MTree tree(shared(gen_uniform(10000, 2, seed)), Metric::euclidean, tree_config());
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const auto b = basic_disc(tree, radii[i], true).size();
      const auto g = greedy_disc(tree, radii[i], GreedyVariant::grey, true).size();
      basic_sum[i] += b;
      greedy_sum[i] += g;
      const std::string tag = "seed " + std::to_string(seed) + " r " + fmt("%g", radii[i]);
      o.expect(std::abs(b - basic_ref[i]) <= 0.2 * basic_ref[i], tag + " basic " + std::to_string(b));
      o.expect(std::abs(g - greedy_ref[i]) <= 0.2 * greedy_ref[i], tag + " greedy " + std::to_string(g));
    }
  }
  std::ostringstream s;
  s << "mean basic/greedy:";
  for (std::size_t i = 0; i < radii.size(); ++i) {
    o.expect(greedy_sum[i] <= basic_sum[i], "mean greedy above basic at r " + fmt("%g", radii[i]));
    s << ' ' << fmt("%.0f", basic_sum[i] / 10) << '/' << fmt("%.0f", greedy_sum[i] / 10);
  }
  o.detail = s.str();
  return o;
}

Outcome zoom_continuity() {
  Outcome o;
  const std::vector<double> ladder{0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07};
  // Pooled and per-variant Jaccard distances to the previous solution.
  std::map<std::string, std::pair<double, int>> in, out;
  auto add = [](auto& m, const std::string& k, double v) {
    m[k].first += v;
    ++m[k].second;
  };
  std::size_t superset_runs = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    MTree tree(shared(gen_clustered(10000, 2, seed)), Metric::euclidean, tree_config());
    std::vector<DiverseSubset> scratch;
    for (double r : ladder) scratch.push_back(greedy_disc(tree, r, GreedyVariant::grey, true));
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      if (k > 0) {
        const auto& prev = scratch[k];
        for (bool greedy : {false, true}) {
          const auto z = zoom_in(tree, prev, ladder[k - 1], greedy);
          std::vector<ObjectId> a = z.ids, b = prev.ids;
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          ++superset_runs;
          o.expect(std::includes(a.begin(), a.end(), b.begin(), b.end()),
                   "zoom-in lost a member, seed " + std::to_string(seed));
          add(in, greedy ? "greedy" : "plain", jaccard(z.ids, prev.ids));
        }
        add(in, "scratch", jaccard(scratch[k - 1].ids, prev.ids));
      }
      if (k + 1 < ladder.size()) {
        const auto& prev = scratch[k];
        for (auto v : {ZoomVariant::plain, ZoomVariant::greedy_a, ZoomVariant::greedy_b,
                       ZoomVariant::greedy_c})
          add(out, std::string(to_string(v)), jaccard(zoom_out(tree, prev, ladder[k + 1], v).ids, prev.ids));
        add(out, "scratch", jaccard(scratch[k + 1].ids, prev.ids));
      }
    }
  }
  std::ostringstream s;
  for (auto* m : {&in, &out}) {
    const char* dir = m == &in ? "in" : "out";
    const double base = (*m)["scratch"].first / (*m)["scratch"].second;
    s << dir << ": scratch " << fmt("%.3f", base);
    for (const auto& [k, v] : *m) {
      if (k == "scratch") continue;
      const double mean = v.first / v.second;
      s << ", " << k << ' ' << fmt("%.3f", mean);
      o.expect(mean < base, std::string("zoom-") + dir + " " + k + " not closer than scratch");
    }
    s << "; ";
  }
  s << superset_runs << " zoom-in runs kept every member";
  o.detail = s.str();
  return o;
}

Outcome tree_quality() {
  Outcome o;
  nlohmann::json j{{"suite", "tree"},
                   {"dataset", {{"generator", "uniform"}, {"n", 10000}, {"d", 2}}},
                   {"seeds", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}},
                   {"policies", {"min_overlap", "random"}},
                   {"capacities", {25, 50, 100}},
                   {"workload_radius", 0.01}};
  const Table t = run(BenchConfig::from_json(j));
  const auto seed = t.column("seed"), policy = t.column("policy"), cap = t.column("capacity"),
             fat = t.column("fat_factor"), work = t.column("workload_accesses");
  std::map<std::string, std::map<std::string, double>> fat_at_50, work_min_overlap;
  double fat_lo = 1.0, fat_hi = 0.0;
  for (const auto& row : t.rows) {
    const double f = std::stod(row[fat]);
    fat_lo = std::min(fat_lo, f);
    fat_hi = std::max(fat_hi, f);
    o.expect(f >= 0.0 && f <= 1.0, "fat factor " + row[fat] + " out of range");
    if (row[cap] == "50") fat_at_50[row[seed]][row[policy]] = f;
    if (row[policy] == "min_overlap") work_min_overlap[row[seed]][row[cap]] = std::stod(row[work]);
  }
  double fat_mo = 0, fat_rnd = 0, w25 = 0, w100 = 0;
  for (auto& [s, m] : fat_at_50) {
    o.expect(m["min_overlap"] < m["random"], "seed " + s + " min_overlap fat factor not below random");
    fat_mo += m["min_overlap"] / 10;
    fat_rnd += m["random"] / 10;
  }
  for (auto& [s, m] : work_min_overlap) {
    o.expect(m["100"] < m["25"], "seed " + s + " capacity 100 not cheaper than 25");
    w25 += m["25"] / 10;
    w100 += m["100"] / 10;
  }
  o.detail = "mean fat factor min_overlap " + fmt("%.3f", fat_mo) + " vs random " + fmt("%.3f", fat_rnd) +
             "; range [" + fmt("%.3f", fat_lo) + ", " + fmt("%.3f", fat_hi) + "]; workload accesses cap100 " +
             fmt("%.0f", w100) + " vs cap25 " + fmt("%.0f", w25);
  return o;
}

Outcome zoom_bound() {
  Outcome o;
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<std::size_t> size(5, 14);
  std::uniform_real_distribution<double> radius(0.1, 0.5), shrink(0.2, 0.95);
  std::size_t runs = 0;
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const Metric metric = i % 2 ? Metric::manhattan : Metric::euclidean;
    auto data = shared(random_points(rng, size(rng)));
    const double r = radius(rng), r_new = r * shrink(rng);
    MTree tree(data, metric, tree_config(4));
    const auto bound = static_cast<double>(annulus_independence_bound(metric, r_new, r));
    for (const auto& base : {greedy_disc(tree, r, GreedyVariant::grey, false), basic_disc(tree, r, false)})
      for (bool greedy : {false, true}) {
        const auto z = zoom_in(tree, base, r_new, greedy);
        ++runs;
        worst = std::max(worst, static_cast<double>(z.size()) / (bound * base.size()));
        o.expect(z.size() <= bound * base.size(),
                 "instance " + std::to_string(i) + " grew to " + std::to_string(z.size()) + " from " +
                     ids_text(base.ids));
      }
  }
  o.detail = std::to_string(runs) + " zoom-ins; worst size / bound " + fmt("%.3f", worst);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"validity", validity},
      {"oracle-bounds", oracle_bounds},
      {"empirical-independence-bound", empirical_b},
      {"index-correctness", index_correctness},
      {"solution-size-envelope", table_envelope},
      {"zoom-continuity", zoom_continuity},
      {"tree-quality", tree_quality},
      {"zoom-in-size-bound", zoom_bound},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  int failed = 0;
  for (const auto& [name, run_one] : criteria) {
    if (!only.empty() && name != only) continue;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = run_one();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
