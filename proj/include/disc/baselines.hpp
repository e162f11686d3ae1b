#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "disc/metrics.hpp"

namespace disc {

/// Farthest pair first, then the object whose nearest chosen object is
/// farthest away; ties by smaller id. Throws std::invalid_argument unless
/// 1 <= k <= n.
std::vector<ObjectId> greedy_maxmin(const Dataset& data, std::size_t k, Metric metric);

/// As greedy_maxmin with the summed distance to the chosen set.
std::vector<ObjectId> greedy_maxsum(const Dataset& data, std::size_t k, Metric metric);

struct MedoidResult {
  std::vector<ObjectId> medoids;  // ascending
  double cost;                    // mean distance to the closest medoid
  std::vector<double> cost_trace; // after the build phase and after each swap
};

/// PAM: greedy build (ties broken by a seeded shuffle), then best-improvement
/// swaps until none lowers the cost.
MedoidResult k_medoids(const Dataset& data, std::size_t k, Metric metric, std::uint64_t seed);

double medoid_cost(const Dataset& data, std::span<const ObjectId> medoids, Metric metric);

/// 1 - |a ∩ b| / |a ∪ b|; 0 for two empty sets.
double jaccard(std::span<const ObjectId> a, std::span<const ObjectId> b);

struct QualityReport {
  double f_min;   // infinity below two members
  double f_sum;
  double medoid_cost;
  double coverage_fraction;  // objects with a member within r (members count)
  bool degenerate;           // empty subset
  std::optional<double> jaccard_to;
};

/// Brute-force quality measures. Throws std::out_of_range on unknown ids.
QualityReport quality(const Dataset& data, std::span<const ObjectId> subset, double r,
                      Metric metric,
                      std::optional<std::span<const ObjectId>> reference = std::nullopt);

struct MaxMinCheck {
  double lambda;       // f_min of the greedy DisC subset
  double lambda_star;  // best f_min of any subset of the same size
  std::size_t size;
  bool ok;             // lambda_star <= 3 * lambda
};

/// Builds a greedy DisC subset for r and compares its f_min with the exact
/// MaxMin optimum of the same size (n <= 14).
MaxMinCheck check_maxmin_ratio(const Dataset& data, Metric metric, double r);

}  // namespace disc
