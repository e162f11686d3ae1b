#include "disc/zoom.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace disc {

namespace {

constexpr QueryOptions kPlain{QueryMode::top_down, false, false};
constexpr QueryOptions kPruned{QueryMode::top_down, true, false};

std::uint64_t subset_tag(const DiverseSubset& s) {
  std::vector<ObjectId> ids = s.ids;
  std::sort(ids.begin(), ids.end());
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(std::bit_cast<std::uint64_t>(s.radius));
  mix(ids.size());
  for (ObjectId id : ids) mix(id);
  return h == 0 ? 1 : h;
}

void check_members(const MTree& tree, const DiverseSubset& base) {
  for (ObjectId id : base.ids)
    if (id >= tree.size()) throw std::out_of_range("subset id outside the dataset");
}

// Selects whites by largest white-neighbor count until none remain; every
// query result also refreshes the closest-black distances.
void greedy_cover(MTree& tree, Coloring& col, double r, std::vector<ObjectId>& out,
                  AccessCounter& counter, bool track_closest_black) {
  CandidateQueue queue(tree.size());
  for (ObjectId id = 0; id < tree.size(); ++id) {
    if (!col.is(id, Color::white)) continue;
    std::int64_t n = 0;
    for (const auto& h : tree.range_query(id, r, kPruned, counter))
      if (h.id != id && col.is(h.id, Color::white)) ++n;
    col.set_white_count(id, n);
    queue.put(id, n);
  }
  while (!queue.empty()) {
    const ObjectId p = queue.pop();
    col.set(p, Color::black);
    out.push_back(p);
    std::vector<ObjectId> newly_grey;
    const auto hits = tree.range_query(p, r, track_closest_black ? kPlain : kPruned, counter);
    for (const auto& h : hits) {
      if (track_closest_black && h.distance < tree.closest_black(h.id))
        tree.set_closest_black(h.id, h.distance);
      if (!col.is(h.id, Color::white)) continue;
      col.set(h.id, Color::grey);
      queue.erase(h.id);
      newly_grey.push_back(h.id);
    }
    for (ObjectId g : newly_grey)
      for (const auto& h : tree.range_query(g, r, kPruned, counter))
        if (col.is(h.id, Color::white)) {
          col.set_white_count(h.id, col.white_count(h.id) - 1);
          queue.put(h.id, col.white_count(h.id));
        }
  }
}

}  // namespace

ZoomVariant parse_zoom_variant(std::string_view name) {
  if (name == "plain") return ZoomVariant::plain;
  if (name == "greedy") return ZoomVariant::greedy;
  if (name == "greedy_a") return ZoomVariant::greedy_a;
  if (name == "greedy_b") return ZoomVariant::greedy_b;
  if (name == "greedy_c") return ZoomVariant::greedy_c;
  throw std::invalid_argument("unknown zoom variant '" + std::string(name) + "'");
}

std::string_view to_string(ZoomVariant v) {
  switch (v) {
    case ZoomVariant::plain: return "plain";
    case ZoomVariant::greedy: return "greedy";
    case ZoomVariant::greedy_a: return "greedy_a";
    case ZoomVariant::greedy_b: return "greedy_b";
    case ZoomVariant::greedy_c: return "greedy_c";
  }
  return "?";
}

ZoomDiff diff(const std::vector<ObjectId>& before, const std::vector<ObjectId>& after) {
  std::vector<ObjectId> a = before, b = after;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  ZoomDiff d;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d.kept));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(d.added));
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d.removed));
  return d;
}

std::uint64_t maintain_closest_black(MTree& tree, const DiverseSubset& subset) {
  check_members(tree, subset);
  AccessCounter counter;
  tree.reset_closest_black();
  for (ObjectId b : subset.ids) {
    for (const auto& h : tree.range_query(b, subset.radius, kPlain, counter))
      if (h.distance < tree.closest_black(h.id)) tree.set_closest_black(h.id, h.distance);
    tree.set_closest_black(b, 0.0);
  }
  tree.set_closest_black_owner(subset_tag(subset));
  return counter.node_accesses;
}

bool closest_black_current(const MTree& tree, const DiverseSubset& subset) {
  return tree.closest_black_owner() == subset_tag(subset);
}

DiverseSubset zoom_in(MTree& tree, const DiverseSubset& base, double r_new, bool greedy) {
  if (!(r_new > 0.0)) throw std::invalid_argument("new radius must be positive");
  if (!(r_new < base.radius)) throw std::invalid_argument("zoom-in needs a smaller radius");
  check_members(tree, base);
  AccessCounter counter;
  if (!closest_black_current(tree, base))
    counter.node_accesses += maintain_closest_black(tree, base);

  DiverseSubset out{r_new, base.ids, greedy ? "zoom_in_greedy" : "zoom_in", 0, 0.0};
  Coloring col(tree, Color::grey);
  for (ObjectId b : base.ids) col.set(b, Color::black);

  if (greedy) {
    for (auto it = tree.leaves_begin(); it != tree.leaves_end(); ++it)
      if (col.is(it->object, Color::grey) && it->closest_black > r_new)
        col.set(it->object, Color::white);
    greedy_cover(tree, col, r_new, out.ids, counter, true);
  } else {
    for (NodeId leaf = tree.first_leaf(); leaf != kNoNode; leaf = tree.node(leaf).next_leaf) {
      counter.visit();
      for (std::size_t s = 0; s < tree.node(leaf).entries.size(); ++s) {
        const LeafEntry& e = tree.node(leaf).entries[s];
        const ObjectId p = e.object;
        if (!col.is(p, Color::grey) || e.closest_black <= r_new) continue;
        col.set(p, Color::black);
        out.ids.push_back(p);
        tree.set_closest_black(p, 0.0);
        for (const auto& h : tree.range_query(p, r_new, kPlain, counter))
          if (h.distance < tree.closest_black(h.id)) tree.set_closest_black(h.id, h.distance);
      }
    }
  }
  tree.set_closest_black_owner(subset_tag(out));
  out.access_cost = counter.node_accesses;
  return out;
}

DiverseSubset zoom_out(MTree& tree, const DiverseSubset& base, double r_new, ZoomVariant variant,
                       std::optional<ObjectId> pin_first) {
  if (!(r_new > base.radius)) throw std::invalid_argument("zoom-out needs a larger radius");
  check_members(tree, base);
  if (variant == ZoomVariant::greedy) variant = ZoomVariant::greedy_a;
  AccessCounter counter;
  DiverseSubset out{r_new, {}, "zoom_out_" + std::string(to_string(variant)), 0, 0.0};
  Coloring col(tree, Color::white);
  for (ObjectId b : base.ids) col.set(b, Color::red);
  if (pin_first && !col.is(*pin_first, Color::red))
    throw std::invalid_argument("pinned object is not in the base subset");

  // Selecting p greys every red and white object within r_new of it.
  std::vector<ObjectId> greyed_red, greyed_white;
  auto select = [&](ObjectId p) {
    col.set(p, Color::black);
    out.ids.push_back(p);
    greyed_red.clear();
    greyed_white.clear();
    for (const auto& h : tree.range_query(p, r_new, kPruned, counter)) {
      if (col.is(h.id, Color::red)) {
        col.set(h.id, Color::grey);
        greyed_red.push_back(h.id);
      } else if (col.is(h.id, Color::white)) {
        col.set(h.id, Color::grey);
        greyed_white.push_back(h.id);
      }
    }
  };

  if (pin_first) select(*pin_first);

  // Pass 1: retained base objects.
  if (variant == ZoomVariant::plain) {
    for (NodeId leaf = tree.first_leaf(); leaf != kNoNode; leaf = tree.node(leaf).next_leaf) {
      counter.visit();
      for (std::size_t s = 0; s < tree.node(leaf).entries.size(); ++s) {
        const ObjectId p = tree.node(leaf).entries[s].object;
        if (col.is(p, Color::red)) select(p);
      }
    }
  } else if (variant == ZoomVariant::greedy_a || variant == ZoomVariant::greedy_b) {
    std::vector<std::vector<ObjectId>> red_nb(tree.size());
    CandidateQueue queue(tree.size(), variant == ZoomVariant::greedy_a
                                          ? CandidateQueue::Order::largest_first
                                          : CandidateQueue::Order::smallest_first);
    for (ObjectId b : base.ids) {
      if (!col.is(b, Color::red)) continue;
      for (const auto& h : tree.range_query(b, r_new, kPruned, counter))
        if (h.id != b && col.is(h.id, Color::red)) red_nb[b].push_back(h.id);
      col.set_white_count(b, static_cast<std::int64_t>(red_nb[b].size()));
      queue.put(b, col.white_count(b));
    }
    while (!queue.empty()) {
      const ObjectId p = queue.pop();
      select(p);
      for (ObjectId q : greyed_red) {
        queue.erase(q);
        for (ObjectId x : red_nb[q])
          if (col.is(x, Color::red)) {
            col.set_white_count(x, col.white_count(x) - 1);
            queue.put(x, col.white_count(x));
          }
      }
    }
  } else {
    CandidateQueue queue(tree.size());
    for (ObjectId b : base.ids) {
      if (!col.is(b, Color::red)) continue;
      std::int64_t n = 0;
      for (const auto& h : tree.range_query(b, r_new, kPruned, counter))
        if (col.is(h.id, Color::white)) ++n;
      col.set_white_count(b, n);
      queue.put(b, n);
    }
    while (!queue.empty()) {
      const ObjectId p = queue.pop();
      select(p);
      for (ObjectId q : greyed_red) queue.erase(q);
      const std::vector<ObjectId> lost = greyed_white;
      for (ObjectId w : lost)
        for (const auto& h : tree.range_query(w, r_new, kPruned, counter))
          if (col.is(h.id, Color::red)) {
            col.set_white_count(h.id, col.white_count(h.id) - 1);
            queue.put(h.id, col.white_count(h.id));
          }
    }
  }

  // Pass 2: cover what the removed base objects left behind.
  if (variant == ZoomVariant::plain) {
    for (NodeId leaf = tree.first_leaf(); leaf != kNoNode; leaf = tree.node(leaf).next_leaf) {
      counter.visit();
      for (std::size_t s = 0; s < tree.node(leaf).entries.size(); ++s) {
        const ObjectId p = tree.node(leaf).entries[s].object;
        if (col.is(p, Color::white)) select(p);
      }
    }
  } else if (col.count(Color::white) > 0) {
    greedy_cover(tree, col, r_new, out.ids, counter, false);
  }

  // The stored distances no longer describe any solution.
  tree.set_closest_black_owner(0);
  out.access_cost = counter.node_accesses;
  return out;
}

DiverseSubset zoom(MTree& tree, const DiverseSubset& base, double r_new, ZoomVariant variant) {
  if (!(r_new > 0.0)) throw std::invalid_argument("new radius must be positive");
  if (r_new == base.radius) throw std::invalid_argument("new radius equals the current one");
  if (r_new < base.radius) {
    if (variant != ZoomVariant::plain && variant != ZoomVariant::greedy)
      throw std::invalid_argument("zoom-in supports the plain and greedy variants only");
    return zoom_in(tree, base, r_new, variant == ZoomVariant::greedy);
  }
  return zoom_out(tree, base, r_new, variant);
}

LocalZoomResult local_zoom(const MTree& tree, const DiverseSubset& base, ObjectId focus,
                           double r_new, ZoomVariant variant) {
  if (std::find(base.ids.begin(), base.ids.end(), focus) == base.ids.end())
    throw std::invalid_argument("focus object is not in the subset");
  if (!(r_new > 0.0)) throw std::invalid_argument("new radius must be positive");
  if (r_new == base.radius) throw std::invalid_argument("new radius equals the current one");
  const bool in = r_new < base.radius;
  if (in && variant != ZoomVariant::plain && variant != ZoomVariant::greedy)
    throw std::invalid_argument("zoom-in supports the plain and greedy variants only");

  LocalZoomResult res;
  AccessCounter counter;
  const double reach = in ? base.radius : r_new;
  for (const auto& h : tree.range_query(focus, reach, kPlain, counter)) res.region.push_back(h.id);
  std::sort(res.region.begin(), res.region.end());

  // Local ids are positions in the region.
  std::vector<std::int64_t> local_of(tree.size(), -1);
  for (std::size_t i = 0; i < res.region.size(); ++i) local_of[res.region[i]] = static_cast<std::int64_t>(i);
  auto sub = std::make_shared<const Dataset>(tree.data().subset(res.region));
  MTreeConfig cfg = tree.config();
  cfg.count_neighborhoods_at_build = false;
  MTree sub_tree(sub, tree.metric(), cfg);

  DiverseSubset local_base{base.radius, {}, base.algorithm, 0, 0.0};
  for (ObjectId id : base.ids)
    if (local_of[id] >= 0) local_base.ids.push_back(static_cast<ObjectId>(local_of[id]));

  const ObjectId local_focus = static_cast<ObjectId>(local_of[focus]);
  DiverseSubset local =
      in ? zoom_in(sub_tree, local_base, r_new, variant == ZoomVariant::greedy)
         : zoom_out(sub_tree, local_base, r_new, variant, local_focus);
  res.local_valid = verify(*sub, local.ids, r_new, tree.metric()).valid();

  res.local = local;
  for (ObjectId& id : res.local.ids) id = res.region[id];
  res.local.access_cost += counter.node_accesses;
  res.local.algorithm = "local_" + local.algorithm;

  res.merged = res.local;
  res.merged.ids.clear();
  std::vector<ObjectId> outside;
  for (ObjectId id : base.ids)
    if (local_of[id] < 0) outside.push_back(id);
  res.merged.ids = outside;
  res.merged.ids.insert(res.merged.ids.end(), res.local.ids.begin(), res.local.ids.end());

  const Dataset& data = tree.data();
  const double near = std::min(base.radius, r_new);
  for (ObjectId o : outside)
    for (ObjectId l : res.local.ids) {
      const double d = tree.distance(o, l);
      if (d <= near) res.boundary_conflicts.push_back({o, l, d});
    }
  const double far = std::max(base.radius, r_new);
  for (const Point& p : data.points()) {
    bool ok = false;
    for (ObjectId m : res.merged.ids)
      if (tree.distance(p.id, m) <= far) {
        ok = true;
        break;
      }
    if (!ok) res.uncovered.push_back(p.id);
  }
  return res;
}

}  // namespace disc
