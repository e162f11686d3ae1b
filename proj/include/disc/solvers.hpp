#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "disc/coloring.hpp"
#include "disc/metrics.hpp"
#include "disc/mtree.hpp"

namespace disc {

/// A diverse subset and how it was obtained. `ids` are in selection order.
struct DiverseSubset {
  double radius = 0.0;
  std::vector<ObjectId> ids;
  std::string algorithm;
  std::uint64_t access_cost = 0;
  double wall_ms = 0.0;

  std::size_t size() const { return ids.size(); }
};

enum class GreedyVariant { grey, white, lazy_grey, lazy_white };

enum class Algorithm { basic, greedy_grey, greedy_white, lazy_grey, lazy_white, greedy_c, fast_c };

/// An algorithm plus its pruning switch, named e.g. "basic", "grey_pruned",
/// "lazy_white", "greedy_c", "fast_c".
struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::greedy_grey;
  bool pruned = false;

  static AlgorithmSpec parse(std::string_view name);
  std::string name() const;
  /// True for the solvers whose output must also be pairwise independent.
  bool independent() const {
    return algorithm != Algorithm::greedy_c && algorithm != Algorithm::fast_c;
  }
};

/// Called after each greedy selection with the selected object and the
/// coloring state at that point.
using SelectionObserver = std::function<void(ObjectId, const Coloring&)>;

/// Visits objects in leaf-chain order; each white object becomes black and its
/// neighborhood grey.
DiverseSubset basic_disc(MTree& tree, double r, bool pruned);

/// Repeatedly selects the white object with the most white neighbors (ties by
/// smaller id). The variant decides how white counts are refreshed after a
/// selection:
///   grey       - one r-query per newly grey object
///   white      - one 2r-query around the selected object
///   lazy_grey  - as grey with radius r/2 (counts may go stale)
///   lazy_white - as white with radius 3r/2 (counts may go stale)
DiverseSubset greedy_disc(MTree& tree, double r, GreedyVariant variant, bool pruned,
                          const SelectionObserver& observer = {});

/// Greedy covering that may also select grey objects; output covers but need
/// not be independent. Grey pruning does not apply.
DiverseSubset greedy_c(MTree& tree, double r, const SelectionObserver& observer = {});

/// Greedy-C with bottom-up, grey-pruned selection queries that stop climbing
/// at the first grey ancestor. Counts are refreshed by one 2r query around
/// each pick; a candidate whose count turns out stale is re-queued rather
/// than selected.
DiverseSubset fast_c(MTree& tree, double r);

DiverseSubset solve(MTree& tree, double r, AlgorithmSpec spec);

struct Verification {
  bool coverage = false;
  bool independence = false;
  bool valid() const { return coverage && independence; }
};

/// Index-free brute-force check of the coverage and dissimilarity conditions.
/// Throws std::out_of_range on an unknown id.
Verification verify(const Dataset& data, std::span<const ObjectId> ids, double r, Metric metric);
inline Verification verify(const Dataset& data, const DiverseSubset& s, Metric metric) {
  return verify(data, s.ids, s.radius, metric);
}

/// |N_r(p)| for every object, via one unpruned query each (or the counts
/// gathered at build time when they match r).
std::vector<std::int64_t> neighborhood_counts(const MTree& tree, double r, AccessCounter& counter);

}  // namespace disc
