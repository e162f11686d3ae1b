#include "disc/mtree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace disc {

namespace {

// Slack added to triangle-inequality pruning tests so that rounding in
// stored distances never excludes an object lying exactly on the boundary.
constexpr double kSlack = 1e-9;

}  // namespace

// ---------------------------------------------------------------------------
// Split policies

SplitPolicy SplitPolicy::parse(std::string_view name) {
  if (name == "min_overlap" || name == "MinOverlap") return {};
  if (name == "max_distance")
    return {PromotePolicy::max_distance, PartitionPolicy::closest_pivot};
  if (name == "balanced") return {PromotePolicy::max_distance, PartitionPolicy::balanced};
  if (name == "random") return {PromotePolicy::random, PartitionPolicy::closest_pivot};
  const auto colon = name.find(':');
  if (colon != std::string_view::npos) {
    SplitPolicy p;
    const auto promote = name.substr(0, colon);
    const auto partition = name.substr(colon + 1);
    if (promote == "min_overlap") p.promote = PromotePolicy::min_overlap;
    else if (promote == "max_distance") p.promote = PromotePolicy::max_distance;
    else if (promote == "random") p.promote = PromotePolicy::random;
    else throw std::invalid_argument("unknown promote policy '" + std::string(promote) + "'");
    if (partition == "closest_pivot") p.partition = PartitionPolicy::closest_pivot;
    else if (partition == "balanced") p.partition = PartitionPolicy::balanced;
    else throw std::invalid_argument("unknown partition policy '" + std::string(partition) + "'");
    return p;
  }
  throw std::invalid_argument("unknown split policy '" + std::string(name) + "'");
}

std::string SplitPolicy::name() const {
  if (*this == SplitPolicy{}) return "min_overlap";
  if (*this == SplitPolicy{PromotePolicy::max_distance, PartitionPolicy::closest_pivot})
    return "max_distance";
  if (*this == SplitPolicy{PromotePolicy::max_distance, PartitionPolicy::balanced})
    return "balanced";
  if (*this == SplitPolicy{PromotePolicy::random, PartitionPolicy::closest_pivot}) return "random";
  std::string s;
  s += promote == PromotePolicy::min_overlap ? "min_overlap"
       : promote == PromotePolicy::max_distance ? "max_distance"
                                                : "random";
  s += partition == PartitionPolicy::closest_pivot ? ":closest_pivot" : ":balanced";
  return s;
}

void MTreeConfig::validate() const {
  if (node_capacity < 4) throw std::invalid_argument("node capacity must be at least 4");
  if (count_neighborhoods_at_build && !(build_radius > 0.0))
    throw std::invalid_argument("build radius must be positive when counting at build");
}

SplitResult split_entries(std::span<const SplitItem> items,
                          std::optional<std::size_t> current_pivot, SplitPolicy policy,
                          Metric metric, const Dataset& data, std::mt19937_64& rng) {
  const std::size_t n = items.size();
  if (n < 2) throw std::invalid_argument("split needs at least two entries");
  auto dist = [&](std::size_t i, std::size_t j) {
    return distance_unchecked(metric, data[items[i].object], data[items[j].object]);
  };

  std::size_t a = 0;
  std::size_t b = 1;
  switch (policy.promote) {
    case PromotePolicy::min_overlap: {
      a = current_pivot.value_or(0);
      double best = -1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == a) continue;
        const double d = dist(a, j);
        if (d > best) {
          best = d;
          b = j;
        }
      }
      break;
    }
    case PromotePolicy::max_distance: {
      double best = -1.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const double d = dist(i, j);
          if (d > best) {
            best = d;
            a = i;
            b = j;
          }
        }
      break;
    }
    case PromotePolicy::random: {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      a = pick(rng);
      do b = pick(rng);
      while (b == a);
      break;
    }
  }

  SplitResult res{a, b, {}, {}, 0.0, 0.0};
  std::vector<double> da(n), db(n);
  for (std::size_t i = 0; i < n; ++i) {
    da[i] = i == a ? 0.0 : dist(a, i);
    db[i] = i == b ? 0.0 : dist(b, i);
  }

  if (policy.partition == PartitionPolicy::closest_pivot) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == a) res.group_a.push_back(i);
      else if (i == b) res.group_b.push_back(i);
      else if (da[i] <= db[i]) res.group_a.push_back(i);
      else res.group_b.push_back(i);
    }
  } else {
    // Alternate: each pivot in turn takes its nearest unassigned entry.
    std::vector<bool> taken(n, false);
    taken[a] = taken[b] = true;
    res.group_a.push_back(a);
    res.group_b.push_back(b);
    std::size_t remaining = n - 2;
    bool turn_a = true;
    while (remaining > 0) {
      const auto& dv = turn_a ? da : db;
      std::size_t best = n;
      for (std::size_t i = 0; i < n; ++i)
        if (!taken[i] && (best == n || dv[i] < dv[best])) best = i;
      taken[best] = true;
      (turn_a ? res.group_a : res.group_b).push_back(best);
      --remaining;
      turn_a = !turn_a;
    }
    std::sort(res.group_a.begin(), res.group_a.end());
    std::sort(res.group_b.begin(), res.group_b.end());
  }

  for (std::size_t i : res.group_a) res.radius_a = std::max(res.radius_a, da[i] + items[i].radius);
  for (std::size_t i : res.group_b) res.radius_b = std::max(res.radius_b, db[i] + items[i].radius);
  return res;
}

// ---------------------------------------------------------------------------
// Construction

MTree::MTree(std::shared_ptr<const Dataset> data, Metric metric, MTreeConfig config)
    : data_(std::move(data)), metric_(metric), config_(config), rng_(config.seed) {
  config_.validate();
  if (!data_ || data_->empty()) throw std::invalid_argument("cannot index an empty dataset");
  if (!metric_supports(metric_, data_->kind()))
    throw std::invalid_argument(std::string(to_string(metric_)) + " does not apply to " +
                                std::string(to_string(data_->kind())) + " points");
  const std::size_t n = data_->size();
  leaf_of_.assign(n, kNoNode);
  slot_of_.assign(n, 0);
  nodes_.reserve(2 * n / config_.node_capacity + 4);
  root_ = first_leaf_ = new_node(true);
  if (config_.count_neighborhoods_at_build) build_counts_.assign(n, 0);

  AccessCounter build_counter;
  for (ObjectId id = 0; id < n; ++id) {
    if (config_.count_neighborhoods_at_build && id > 0) {
      const auto hits = range_query((*data_)[id], config_.build_radius, {}, build_counter);
      build_counts_[id] = static_cast<std::uint32_t>(hits.size());
      for (const auto& h : hits) ++build_counts_[h.id];
    }
    insert(id);
  }
  build_accesses_ = build_counter.node_accesses;
}

NodeId MTree::new_node(bool leaf) {
  nodes_.emplace_back();
  nodes_.back().leaf = leaf;
  return static_cast<NodeId>(nodes_.size() - 1);
}

void MTree::insert(ObjectId id) {
  const Point& p = (*data_)[id];
  NodeId nid = root_;
  double d_to_pivot = 0.0;
  while (!nodes_[nid].leaf) {
    NodeId best = kNoNode;
    double best_enlarge = 0.0;
    double best_d = 0.0;
    for (NodeId c : nodes_[nid].children) {
      const MTreeNode& child = nodes_[c];
      const double d = distance_unchecked(metric_, p, (*data_)[*child.pivot]);
      const double enlarge = std::max(0.0, d - child.covering_radius);
      if (best == kNoNode || enlarge < best_enlarge ||
          (enlarge == best_enlarge && d < best_d)) {
        best = c;
        best_enlarge = enlarge;
        best_d = d;
      }
    }
    MTreeNode& chosen = nodes_[best];
    chosen.covering_radius = std::max(chosen.covering_radius, best_d);
    d_to_pivot = best_d;
    nid = best;
  }
  MTreeNode& leaf = nodes_[nid];
  if (leaf.pivot) leaf.covering_radius = std::max(leaf.covering_radius, d_to_pivot);
  leaf.entries.push_back({id, leaf.pivot ? d_to_pivot : 0.0, kNoBlack});
  leaf_of_[id] = nid;
  slot_of_[id] = static_cast<std::uint32_t>(leaf.entries.size() - 1);
  if (leaf.entries.size() > config_.node_capacity) split_node(nid);
}

void MTree::collect_leaves(NodeId nid, std::vector<NodeId>& out) const {
  const MTreeNode& n = nodes_[nid];
  if (n.leaf) {
    out.push_back(nid);
    return;
  }
  for (NodeId c : n.children) collect_leaves(c, out);
}

void MTree::rethread(NodeId first_old, NodeId last_old, std::span<const NodeId> subtrees) {
  const NodeId before = nodes_[first_old].prev_leaf;
  const NodeId after = nodes_[last_old].next_leaf;
  std::vector<NodeId> order;
  for (NodeId s : subtrees) collect_leaves(s, order);
  NodeId prev = before;
  for (NodeId l : order) {
    nodes_[l].prev_leaf = prev;
    if (prev == kNoNode) first_leaf_ = l;
    else nodes_[prev].next_leaf = l;
    prev = l;
  }
  nodes_[prev].next_leaf = after;
  if (after != kNoNode) nodes_[after].prev_leaf = prev;
}

void MTree::split_node(NodeId nid) {
  const bool leaf = nodes_[nid].leaf;

  // Leaves of this subtree form a contiguous run of the chain; remember its
  // ends so the run can be re-threaded after the split.
  NodeId first_old = nid;
  NodeId last_old = nid;
  if (!leaf) {
    std::vector<NodeId> old_leaves;
    collect_leaves(nid, old_leaves);
    first_old = old_leaves.front();
    last_old = old_leaves.back();
  }

  std::vector<SplitItem> items;
  std::optional<std::size_t> current;
  const auto& pivot = nodes_[nid].pivot;
  if (leaf) {
    for (const auto& e : nodes_[nid].entries) {
      if (pivot && e.object == *pivot) current = items.size();
      items.push_back({e.object, 0.0});
    }
  } else {
    for (NodeId c : nodes_[nid].children) {
      if (pivot && *nodes_[c].pivot == *pivot) current = items.size();
      items.push_back({*nodes_[c].pivot, nodes_[c].covering_radius});
    }
  }
  const SplitResult res =
      split_entries(items, current, config_.split_policy, metric_, *data_, rng_);

  const NodeId other = new_node(leaf);
  MTreeNode& a = nodes_[nid];
  const ObjectId pivot_a = items[res.pivot_a].object;
  const ObjectId pivot_b = items[res.pivot_b].object;

  if (leaf) {
    std::vector<LeafEntry> old = std::move(a.entries);
    a.entries.clear();
    auto place = [&](NodeId target, ObjectId pv, const std::vector<std::size_t>& group) {
      MTreeNode& t = nodes_[target];
      for (std::size_t i : group) {
        LeafEntry e = old[i];
        e.dist_to_parent = distance(e.object, pv);
        leaf_of_[e.object] = target;
        slot_of_[e.object] = static_cast<std::uint32_t>(t.entries.size());
        t.entries.push_back(e);
      }
    };
    place(nid, pivot_a, res.group_a);
    place(other, pivot_b, res.group_b);
    // Splice the new leaf directly after the old one.
    MTreeNode& na = nodes_[nid];
    MTreeNode& nb = nodes_[other];
    nb.prev_leaf = nid;
    nb.next_leaf = na.next_leaf;
    if (na.next_leaf != kNoNode) nodes_[na.next_leaf].prev_leaf = other;
    na.next_leaf = other;
  } else {
    std::vector<NodeId> old = std::move(a.children);
    a.children.clear();
    auto place = [&](NodeId target, ObjectId pv, const std::vector<std::size_t>& group) {
      for (std::size_t i : group) {
        const NodeId c = old[i];
        nodes_[c].parent = target;
        nodes_[c].dist_to_parent = distance(*nodes_[c].pivot, pv);
        nodes_[target].children.push_back(c);
      }
    };
    place(nid, pivot_a, res.group_a);
    place(other, pivot_b, res.group_b);
  }

  nodes_[nid].pivot = pivot_a;
  nodes_[nid].covering_radius = res.radius_a;
  nodes_[other].pivot = pivot_b;
  nodes_[other].covering_radius = res.radius_b;
  nodes_[other].grey = nodes_[nid].grey = false;

  const NodeId parent = nodes_[nid].parent;
  if (parent == kNoNode) {
    const NodeId r = new_node(false);
    nodes_[r].children = {nid, other};
    nodes_[nid].parent = nodes_[other].parent = r;
    nodes_[nid].dist_to_parent = nodes_[other].dist_to_parent = 0.0;
    root_ = r;
    ++height_;
  } else {
    nodes_[other].parent = parent;
    auto& siblings = nodes_[parent].children;
    siblings.insert(std::find(siblings.begin(), siblings.end(), nid) + 1, other);
    const auto& ppivot = nodes_[parent].pivot;
    nodes_[nid].dist_to_parent = ppivot ? distance(pivot_a, *ppivot) : 0.0;
    nodes_[other].dist_to_parent = ppivot ? distance(pivot_b, *ppivot) : 0.0;
  }

  if (!leaf) {
    const NodeId parts[] = {nid, other};
    rethread(first_old, last_old, parts);
  }

  if (parent != kNoNode && nodes_[parent].children.size() > config_.node_capacity)
    split_node(parent);
}

// ---------------------------------------------------------------------------
// Queries

double MTree::pivot_distance(const Point& q, const MTreeNode& n) const {
  return distance_unchecked(metric_, q, (*data_)[*n.pivot]);
}

void MTree::scan_leaf(const MTreeNode& leaf, const Point& q, double r,
                      std::optional<double> d_pivot, std::vector<Neighbor>& out) const {
  for (const auto& e : leaf.entries) {
    if (d_pivot && std::abs(*d_pivot - e.dist_to_parent) > r + kSlack) continue;
    const double d = distance_unchecked(metric_, q, (*data_)[e.object]);
    if (d <= r) out.push_back({e.object, d});
  }
}

void MTree::search(NodeId nid, const Point& q, double r, std::optional<double> d_pivot,
                   bool prune, std::vector<Neighbor>& out, AccessCounter& counter) const {
  const MTreeNode& n = nodes_[nid];
  counter.visit();
  if (n.leaf) {
    scan_leaf(n, q, r, d_pivot, out);
    return;
  }
  for (NodeId c : n.children) {
    const MTreeNode& child = nodes_[c];
    if (prune && child.grey) continue;
    const double reach = r + child.covering_radius + kSlack;
    if (d_pivot && std::abs(*d_pivot - child.dist_to_parent) > reach) continue;
    const double d = pivot_distance(q, child);
    if (d <= reach) search(c, q, r, d, prune, out, counter);
  }
}

std::vector<Neighbor> MTree::range_query(const Point& center, double r, const QueryOptions& opts,
                                         AccessCounter& counter) const {
  if (center.kind != data_->kind() || center.dim() != data_->dim())
    throw std::invalid_argument("query center does not match the indexed points");
  std::vector<Neighbor> out;
  if (opts.mode == QueryMode::top_down) {
    if (opts.prune_grey && nodes_[root_].grey) return out;
    search(root_, center, r, std::nullopt, opts.prune_grey, out, counter);
    return out;
  }

  if (center.id >= size() || distance_unchecked(metric_, center, (*data_)[center.id]) != 0.0)
    throw std::invalid_argument("bottom-up queries must start from an indexed object");
  const NodeId start = leaf_of_[center.id];
  const MTreeNode& home = nodes_[start];
  if (!(opts.prune_grey && home.grey)) {
    counter.visit();
    const auto d_home = home.pivot ? std::optional<double>(home.entries[slot_of_[center.id]].dist_to_parent)
                                   : std::nullopt;
    scan_leaf(home, center, r, d_home, out);
  }
  NodeId child = start;
  NodeId cur = home.parent;
  while (cur != kNoNode) {
    const MTreeNode& n = nodes_[cur];
    if (opts.stop_at_grey_ancestor && n.grey) break;
    counter.visit();
    const std::optional<double> d_pivot =
        n.pivot ? std::optional<double>(pivot_distance(center, n)) : std::nullopt;
    for (NodeId c : n.children) {
      if (c == child) continue;
      const MTreeNode& sib = nodes_[c];
      if (opts.prune_grey && sib.grey) continue;
      const double reach = r + sib.covering_radius + kSlack;
      if (d_pivot && std::abs(*d_pivot - sib.dist_to_parent) > reach) continue;
      const double d = pivot_distance(center, sib);
      if (d <= reach) search(c, center, r, d, opts.prune_grey, out, counter);
    }
    child = cur;
    cur = n.parent;
  }
  return out;
}

std::vector<Neighbor> MTree::range_query(ObjectId center, double r, const QueryOptions& opts,
                                         AccessCounter& counter) const {
  return range_query(data_->at(center), r, opts, counter);
}

std::size_t MTree::leaf_count() const {
  std::size_t k = 0;
  for (NodeId l = first_leaf_; l != kNoNode; l = nodes_[l].next_leaf) ++k;
  return k;
}

std::vector<ObjectId> MTree::leaf_order() const {
  std::vector<ObjectId> ids;
  ids.reserve(size());
  for (auto it = leaves_begin(); it != leaves_end(); ++it) ids.push_back(it->object);
  return ids;
}

MTree::LeafIterator& MTree::LeafIterator::operator++() {
  ++slot_;
  skip_empty();
  return *this;
}

void MTree::LeafIterator::skip_empty() {
  while (leaf_ != kNoNode && slot_ >= tree_->nodes_[leaf_].entries.size()) {
    leaf_ = tree_->nodes_[leaf_].next_leaf;
    slot_ = 0;
  }
}

// ---------------------------------------------------------------------------
// Node colors and leaf annotations

void MTree::color_grey_upward(NodeId leaf, std::span<const Color> colors) {
  MTreeNode& l = nodes_.at(leaf);
  if (!l.leaf) throw std::invalid_argument("color_grey_upward expects a leaf node");
  for (const auto& e : l.entries)
    if (is_active(colors[e.object]))
      throw std::logic_error("leaf still holds white objects");
  l.grey = true;
  for (NodeId cur = l.parent; cur != kNoNode; cur = nodes_[cur].parent) {
    MTreeNode& n = nodes_[cur];
    if (n.grey) break;
    for (NodeId c : n.children)
      if (!nodes_[c].grey) return;
    n.grey = true;
  }
}

void MTree::clear_grey_upward(NodeId leaf) {
  for (NodeId cur = leaf; cur != kNoNode && nodes_[cur].grey; cur = nodes_[cur].parent)
    nodes_[cur].grey = false;
}

void MTree::clear_node_colors() {
  for (auto& n : nodes_) n.grey = false;
}

void MTree::recolor_nodes(std::span<const Color> colors) {
  // Post-order over the tree: children are resolved before their parent.
  auto resolve = [&](auto&& self, NodeId nid) -> bool {
    MTreeNode& n = nodes_[nid];
    bool grey = true;
    if (n.leaf) {
      for (const auto& e : n.entries)
        if (is_active(colors[e.object])) grey = false;
    } else {
      for (NodeId c : n.children)
        if (!self(self, c)) grey = false;
    }
    n.grey = grey;
    return grey;
  };
  resolve(resolve, root_);
}

double MTree::closest_black(ObjectId id) const {
  return nodes_[leaf_of_.at(id)].entries[slot_of_[id]].closest_black;
}

void MTree::set_closest_black(ObjectId id, double d) {
  nodes_[leaf_of_.at(id)].entries[slot_of_[id]].closest_black = d;
}

void MTree::reset_closest_black(double value) {
  for (auto& n : nodes_)
    for (auto& e : n.entries) e.closest_black = value;
  cbd_owner_ = 0;
}

const std::vector<std::uint32_t>* MTree::build_counts_for(double r) const {
  if (!config_.count_neighborhoods_at_build || config_.build_radius != r) return nullptr;
  return &build_counts_;
}

// ---------------------------------------------------------------------------
// Quality measures

double MTree::fat_factor() const {
  const double n = static_cast<double>(size());
  const double h = static_cast<double>(height_);
  const double m = static_cast<double>(nodes_.size());
  if (m <= h) return 0.0;
  AccessCounter counter;
  for (const Point& p : data_->points()) range_query(p, 0.0, {}, counter);
  const double z = static_cast<double>(counter.node_accesses);
  return (z - n * h) / n / (m - h);
}

TreeStats MTree::stats() const {
  TreeStats s{size(), height_, nodes_.size(), leaf_count(), config_.node_capacity,
              config_.split_policy.name(), fat_factor(), build_accesses_, {}};
  std::vector<NodeId> level{root_};
  for (std::size_t depth = 0; !level.empty(); ++depth) {
    std::vector<NodeId> next;
    std::size_t entries = 0;
    for (NodeId nid : level) {
      const MTreeNode& n = nodes_[nid];
      entries += n.leaf ? n.entries.size() : n.children.size();
      next.insert(next.end(), n.children.begin(), n.children.end());
    }
    s.levels.push_back({depth, level.size(), entries,
                        static_cast<double>(entries) /
                            static_cast<double>(level.size() * config_.node_capacity)});
    level = std::move(next);
  }
  return s;
}

std::vector<std::string> MTree::audit() const {
  std::vector<std::string> problems;
  auto report = [&](const std::string& msg) {
    if (problems.size() < 20) problems.push_back(msg);
  };

  // Every object under a node must lie within that node's covering radius.
  auto objects_under = [&](auto&& self, NodeId nid, std::vector<ObjectId>& out) -> void {
    const MTreeNode& n = nodes_[nid];
    if (n.leaf) {
      for (const auto& e : n.entries) out.push_back(e.object);
      return;
    }
    for (NodeId c : n.children) self(self, c, out);
  };

  std::size_t leaf_depth = 0;
  bool depth_known = false;
  auto visit = [&](auto&& self, NodeId nid, std::size_t depth) -> void {
    const MTreeNode& n = nodes_[nid];
    if (n.pivot) {
      std::vector<ObjectId> under;
      objects_under(objects_under, nid, under);
      for (ObjectId o : under)
        if (distance(o, *n.pivot) > n.covering_radius + kSlack)
          report("object " + std::to_string(o) + " outside covering radius of node " +
                 std::to_string(nid));
    }
    if (n.parent != kNoNode) {
      const MTreeNode& p = nodes_[n.parent];
      const double expect = p.pivot ? distance(*n.pivot, *p.pivot) : 0.0;
      if (std::abs(expect - n.dist_to_parent) > kSlack)
        report("stale parent distance on node " + std::to_string(nid));
    }
    if (n.leaf) {
      if (!depth_known) {
        leaf_depth = depth;
        depth_known = true;
      } else if (depth != leaf_depth) {
        report("unbalanced leaf " + std::to_string(nid));
      }
      if (n.entries.empty() || n.entries.size() > config_.node_capacity)
        report("leaf occupancy out of range at node " + std::to_string(nid));
      for (std::size_t s = 0; s < n.entries.size(); ++s) {
        const auto& e = n.entries[s];
        if (leaf_of_[e.object] != nid || slot_of_[e.object] != s)
          report("stale back-reference for object " + std::to_string(e.object));
        const double expect = n.pivot ? distance(e.object, *n.pivot) : 0.0;
        if (std::abs(expect - e.dist_to_parent) > kSlack)
          report("stale entry distance for object " + std::to_string(e.object));
      }
      return;
    }
    const std::size_t least = nid == root_ ? 2 : 1;
    if (n.children.size() < least || n.children.size() > config_.node_capacity)
      report("internal occupancy out of range at node " + std::to_string(nid));
    for (NodeId c : n.children) {
      if (nodes_[c].parent != nid) report("broken parent link at node " + std::to_string(c));
      self(self, c, depth + 1);
    }
  };
  visit(visit, root_, 0);
  if (depth_known && leaf_depth + 1 != height_) report("height does not match leaf depth");

  std::vector<NodeId> dfs;
  collect_leaves(root_, dfs);
  std::vector<NodeId> chain;
  NodeId prev = kNoNode;
  for (NodeId l = first_leaf_; l != kNoNode; l = nodes_[l].next_leaf) {
    if (nodes_[l].prev_leaf != prev) report("broken prev link at leaf " + std::to_string(l));
    chain.push_back(l);
    prev = l;
    if (chain.size() > nodes_.size()) {
      report("leaf chain cycle");
      break;
    }
  }
  if (chain != dfs) report("leaf chain differs from depth-first leaf order");

  std::vector<int> seen(size(), 0);
  for (ObjectId o : leaf_order())
    if (o < seen.size()) ++seen[o];
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] != 1) report("object " + std::to_string(i) + " appears " +
                             std::to_string(seen[i]) + " times in leaf chain");
  return problems;
}

}  // namespace disc
