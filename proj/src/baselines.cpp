#include "disc/baselines.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <stdexcept>

#include "disc/mtree.hpp"
#include "disc/oracle.hpp"
#include "disc/solvers.hpp"

namespace disc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_k(const Dataset& data, std::size_t k) {
  if (k < 1 || k > data.size()) throw std::invalid_argument("k out of range");
}

std::vector<ObjectId> farthest_pair(const Dataset& data, Metric metric) {
  if (data.size() == 1) return {0};
  ObjectId a = 0, b = 1;
  double best = -1.0;
  for (ObjectId i = 0; i < data.size(); ++i)
    for (ObjectId j = i + 1; j < data.size(); ++j) {
      const double d = distance(metric, data[i], data[j]);
      if (d > best) {
        best = d;
        a = i;
        b = j;
      }
    }
  return {a, b};
}

// Grows the farthest pair one object at a time; `score` keeps a per-object
// aggregate of distances to the chosen set, `combine` folds in a new one.
template <class Combine>
std::vector<ObjectId> grow(const Dataset& data, std::size_t k, Metric metric, double init,
                           Combine combine) {
  check_k(data, k);
  std::vector<ObjectId> chosen = farthest_pair(data, metric);
  if (k == 1) return {chosen.front()};
  std::vector<bool> in(data.size(), false);
  std::vector<double> score(data.size(), init);
  for (ObjectId c : chosen) {
    in[c] = true;
    for (ObjectId i = 0; i < data.size(); ++i)
      score[i] = combine(score[i], distance(metric, data[i], data[c]));
  }
  while (chosen.size() < k) {
    ObjectId pick = 0;
    double best = -1.0;
    for (ObjectId i = 0; i < data.size(); ++i)
      if (!in[i] && score[i] > best) {
        best = score[i];
        pick = i;
      }
    in[pick] = true;
    chosen.push_back(pick);
    for (ObjectId i = 0; i < data.size(); ++i)
      score[i] = combine(score[i], distance(metric, data[i], data[pick]));
  }
  return chosen;
}

}  // namespace

std::vector<ObjectId> greedy_maxmin(const Dataset& data, std::size_t k, Metric metric) {
  return grow(data, k, metric, kInf, [](double s, double d) { return std::min(s, d); });
}

std::vector<ObjectId> greedy_maxsum(const Dataset& data, std::size_t k, Metric metric) {
  return grow(data, k, metric, 0.0, [](double s, double d) { return s + d; });
}

double medoid_cost(const Dataset& data, std::span<const ObjectId> medoids, Metric metric) {
  if (data.empty()) return 0.0;
  if (medoids.empty()) return kInf;
  double total = 0.0;
  for (const Point& p : data.points()) {
    double best = kInf;
    for (ObjectId m : medoids) best = std::min(best, distance(metric, p, data[m]));
    total += best;
  }
  return total / static_cast<double>(data.size());
}

MedoidResult k_medoids(const Dataset& data, std::size_t k, Metric metric, std::uint64_t seed) {
  check_k(data, k);
  const std::size_t n = data.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  for (ObjectId i = 0; i < n; ++i)
    for (ObjectId j = 0; j < n; ++j) dist[i][j] = distance_unchecked(metric, data[i], data[j]);

  std::vector<ObjectId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> nearest(n, kInf);
  std::vector<bool> is_medoid(n, false);
  std::vector<ObjectId> medoids;
  // Build: add the object that lowers the total cost most; shuffled scan
  // order decides ties.
  while (medoids.size() < k) {
    double best_total = kInf;
    ObjectId pick = order.front();
    for (ObjectId c : order) {
      if (is_medoid[c]) continue;
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) total += std::min(nearest[i], dist[i][c]);
      if (total < best_total) {
        best_total = total;
        pick = c;
      }
    }
    is_medoid[pick] = true;
    medoids.push_back(pick);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dist[i][pick]);
  }

  auto total_cost = [&](const std::vector<ObjectId>& ms) {
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double b = kInf;
      for (ObjectId m : ms) b = std::min(b, dist[i][m]);
      t += b;
    }
    return t;
  };

  MedoidResult res;
  double cost = total_cost(medoids);
  res.cost_trace.push_back(cost / static_cast<double>(n));
  while (true) {
    double best = cost;
    std::size_t swap_slot = 0;
    ObjectId swap_in = 0;
    for (std::size_t s = 0; s < medoids.size(); ++s)
      for (ObjectId c = 0; c < n; ++c) {
        if (is_medoid[c]) continue;
        std::vector<ObjectId> trial = medoids;
        trial[s] = c;
        const double t = total_cost(trial);
        if (t < best - 1e-12) {
          best = t;
          swap_slot = s;
          swap_in = c;
        }
      }
    if (best >= cost) break;
    is_medoid[medoids[swap_slot]] = false;
    is_medoid[swap_in] = true;
    medoids[swap_slot] = swap_in;
    cost = best;
    res.cost_trace.push_back(cost / static_cast<double>(n));
  }
  std::sort(medoids.begin(), medoids.end());
  res.medoids = medoids;
  res.cost = cost / static_cast<double>(n);
  return res;
}

double jaccard(std::span<const ObjectId> a, std::span<const ObjectId> b) {
  std::vector<ObjectId> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  std::sort(y.begin(), y.end());
  y.erase(std::unique(y.begin(), y.end()), y.end());
  if (x.empty() && y.empty()) return 0.0;
  std::vector<ObjectId> common;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
  const double uni = static_cast<double>(x.size() + y.size() - common.size());
  return 1.0 - static_cast<double>(common.size()) / uni;
}

QualityReport quality(const Dataset& data, std::span<const ObjectId> subset, double r,
                      Metric metric, std::optional<std::span<const ObjectId>> reference) {
  for (ObjectId id : subset) data.at(id);
  QualityReport q{kInf, 0.0, 0.0, 0.0, subset.empty(), std::nullopt};
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      const double d = distance(metric, data[subset[i]], data[subset[j]]);
      q.f_min = std::min(q.f_min, d);
      q.f_sum += d;
    }
  q.medoid_cost = medoid_cost(data, subset, metric);
  std::size_t covered = 0;
  for (const Point& p : data.points())
    for (ObjectId m : subset)
      if (distance(metric, p, data[m]) <= r) {
        ++covered;
        break;
      }
  q.coverage_fraction = data.empty() ? 1.0 : static_cast<double>(covered) / data.size();
  if (reference) q.jaccard_to = jaccard(subset, *reference);
  return q;
}

MaxMinCheck check_maxmin_ratio(const Dataset& data, Metric metric, double r) {
  auto shared = std::make_shared<const Dataset>(data);
  MTree tree(shared, metric, MTreeConfig{});
  const DiverseSubset s = greedy_disc(tree, r, GreedyVariant::grey, false);
  MaxMinCheck c{};
  c.size = s.size();
  c.lambda = oracle::min_pairwise(data, s.ids, metric);
  const auto opt = oracle::optimal_maxmin(data, s.size(), metric);
  c.lambda_star = oracle::min_pairwise(data, opt, metric);
  c.ok = c.lambda_star <= 3.0 * c.lambda;
  return c;
}

}  // namespace disc
