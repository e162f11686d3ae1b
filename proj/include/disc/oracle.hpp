#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disc/metrics.hpp"

// Exhaustive solvers for small instances. Sets are ascending id vectors.
namespace disc::oracle {

inline constexpr std::size_t kMaxVertices = 64;

/// Undirected graph without self-loops, adjacency as bit masks (n <= 64).
class Graph {
 public:
  explicit Graph(std::size_t n);

  std::size_t size() const { return adj_.size(); }
  void add_edge(std::size_t a, std::size_t b);
  bool adjacent(std::size_t a, std::size_t b) const { return (adj_[a] >> b) & 1u; }
  std::uint64_t neighbors(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const;
  std::size_t max_degree() const;

  bool independent(std::uint64_t set) const;
  bool dominating(std::uint64_t set) const;

 private:
  std::vector<std::uint64_t> adj_;
};

std::uint64_t to_mask(std::span<const ObjectId> ids);
std::vector<ObjectId> to_ids(std::uint64_t mask);

/// Edge iff distance <= r.
Graph build_disc_graph(const Dataset& data, double r, Metric metric);

/// Smallest independent dominating set, lexicographically least among the
/// smallest. Throws std::length_error above 20 vertices.
std::vector<ObjectId> min_independent_dominating_set(const Graph& g);
/// Smallest dominating set, same tie rule and limit.
std::vector<ObjectId> min_dominating_set(const Graph& g);

/// All maximal independent sets in ascending mask order. Throws above 16
/// vertices.
std::vector<std::vector<ObjectId>> enumerate_maximal_independent_sets(const Graph& g);

/// Largest independent set inside each N_r(p), maximized over p. Throws
/// std::length_error when some neighborhood exceeds 20 objects.
std::size_t max_independent_neighbors(const Dataset& data, Metric metric, double r);

/// The k-subset maximizing the minimum pairwise distance, lexicographically
/// least among optima. Throws std::length_error for n > 14 and
/// std::invalid_argument for k outside [1, n].
std::vector<ObjectId> optimal_maxmin(const Dataset& data, std::size_t k, Metric metric);

/// Minimum pairwise distance of a set (infinity below two members).
double min_pairwise(const Dataset& data, std::span<const ObjectId> ids, Metric metric);

}  // namespace disc::oracle
