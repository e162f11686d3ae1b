#pragma once

#include <algorithm>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "disc/data.hpp"
#include "disc/metrics.hpp"
#include "disc/mtree.hpp"

namespace disc::testing {

inline std::shared_ptr<const Dataset> points2d(const std::vector<std::pair<double, double>>& xy) {
  std::vector<Point> pts;
  for (const auto& [x, y] : xy)
    pts.push_back(Point::numeric(static_cast<ObjectId>(pts.size()), {x, y}));
  return std::make_shared<const Dataset>(std::move(pts));
}

inline std::shared_ptr<const Dataset> shared(Dataset d) {
  return std::make_shared<const Dataset>(std::move(d));
}

inline MTreeConfig small_nodes(std::size_t capacity = 4) {
  MTreeConfig c;
  c.node_capacity = capacity;
  return c;
}

inline std::vector<ObjectId> brute_range(const Dataset& data, const Point& q, double r, Metric m) {
  std::vector<ObjectId> out;
  for (const Point& p : data.points())
    if (distance(m, q, p) <= r) out.push_back(p.id);
  return out;
}

inline std::vector<ObjectId> ids_of(const std::vector<Neighbor>& hits) {
  std::vector<ObjectId> ids;
  for (const auto& h : hits) ids.push_back(h.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline std::vector<ObjectId> sorted(std::vector<ObjectId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Six points whose graph at r = 0.3 is the path 0-1-2-3-4-5 plus the chord
// 1-4. Edge lengths are 0.25, non-edges at least 0.354.
inline std::shared_ptr<const Dataset> path_with_chord() {
  return points2d({{0.2, 0.5}, {0.45, 0.5}, {0.45, 0.25}, {0.7, 0.25}, {0.7, 0.5}, {0.95, 0.5}});
}
inline constexpr double kChordRadius = 0.3;

// Small random instance with n in [lo, hi].
inline Dataset small_instance(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  std::uniform_int_distribution<std::size_t> n(lo, hi);
  return gen_uniform(n(rng), 2, rng());
}

}  // namespace disc::testing
