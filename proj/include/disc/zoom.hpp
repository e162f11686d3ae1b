#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disc/solvers.hpp"

namespace disc {

/// plain/greedy apply to zooming in; plain/greedy_a/greedy_b/greedy_c to
/// zooming out, where "greedy" is accepted as greedy_a.
///   greedy_a - retained objects picked by most red neighbors
///   greedy_b - by fewest red neighbors
///   greedy_c - by most white neighbors
enum class ZoomVariant { plain, greedy, greedy_a, greedy_b, greedy_c };

ZoomVariant parse_zoom_variant(std::string_view name);
std::string_view to_string(ZoomVariant v);

struct ZoomDiff {
  std::vector<ObjectId> kept;  // all ascending
  std::vector<ObjectId> added;
  std::vector<ObjectId> removed;
};

ZoomDiff diff(const std::vector<ObjectId>& before, const std::vector<ObjectId>& after);

/// Recomputes the closest-black distance of every leaf entry for `subset`
/// (0 for members, infinity where no member lies within the subset radius)
/// and tags the tree with the subset. Returns the node accesses spent.
std::uint64_t maintain_closest_black(MTree& tree, const DiverseSubset& subset);

/// True when the tree's closest-black distances were computed for `subset`.
bool closest_black_current(const MTree& tree, const DiverseSubset& subset);

/// Adapts `base` to a smaller radius. The result is a superset of base. If the
/// tree's closest-black distances do not belong to base they are recomputed
/// first and that work is included in access_cost.
DiverseSubset zoom_in(MTree& tree, const DiverseSubset& base, double r_new, bool greedy);

/// Adapts `base` to a larger radius in two passes: retained base objects,
/// then new objects for whatever is left uncovered. `pin_first` forces one
/// base object to be retained first.
DiverseSubset zoom_out(MTree& tree, const DiverseSubset& base, double r_new, ZoomVariant variant,
                       std::optional<ObjectId> pin_first = std::nullopt);

/// Direction from the radii; throws std::invalid_argument on r_new == base
/// radius, r_new <= 0 or a variant that does not apply to the direction.
DiverseSubset zoom(MTree& tree, const DiverseSubset& base, double r_new, ZoomVariant variant);

struct BoundaryConflict {
  ObjectId outside;
  ObjectId inside;
  double distance;
};

struct LocalZoomResult {
  DiverseSubset merged;        // ids of the full dataset
  DiverseSubset local;         // ids of the full dataset, region part only
  std::vector<ObjectId> region;  // ascending
  bool local_valid = false;    // local part is valid at r_new inside the region
  std::vector<BoundaryConflict> boundary_conflicts;  // members closer than min(r, r_new)
  std::vector<ObjectId> uncovered;  // objects with no member within max(r, r_new)
};

/// Zooms only around `focus`, a member of base. The region is the focus plus
/// its neighbors within the base radius (zoom-in) or within r_new (zoom-out);
/// members outside the region are kept unchanged. Zoom-out always retains the
/// focus.
LocalZoomResult local_zoom(const MTree& tree, const DiverseSubset& base, ObjectId focus,
                           double r_new, ZoomVariant variant);

}  // namespace disc
