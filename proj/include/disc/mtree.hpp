#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "disc/metrics.hpp"

namespace disc {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr double kNoBlack = std::numeric_limits<double>::infinity();

/// Per-object state used by the diversification algorithms. White and red
/// objects are "active": a node whose subtree holds no active object can be
/// skipped by pruned range queries.
enum class Color : std::uint8_t { white, grey, black, red };

inline bool is_active(Color c) { return c == Color::white || c == Color::red; }

enum class PromotePolicy { min_overlap, max_distance, random };
enum class PartitionPolicy { closest_pivot, balanced };

struct SplitPolicy {
  PromotePolicy promote = PromotePolicy::min_overlap;
  PartitionPolicy partition = PartitionPolicy::closest_pivot;

  /// Accepts the presets "min_overlap", "max_distance", "balanced"
  /// (max_distance promote + balanced partition) and "random", or an explicit
  /// "<promote>:<partition>" pair.
  static SplitPolicy parse(std::string_view name);
  std::string name() const;

  friend bool operator==(const SplitPolicy&, const SplitPolicy&) = default;
};

struct MTreeConfig {
  std::size_t node_capacity = 50;
  SplitPolicy split_policy{};
  bool count_neighborhoods_at_build = false;
  double build_radius = 0.0;
  std::uint64_t seed = 0;  // drives the random promote policy only

  void validate() const;
};

/// Node-access accounting; models the I/O cost of an in-memory tree.
struct AccessCounter {
  std::uint64_t node_accesses = 0;
  void visit() { ++node_accesses; }
};

enum class QueryMode { top_down, bottom_up };

struct QueryOptions {
  QueryMode mode = QueryMode::top_down;
  bool prune_grey = false;
  /// Bottom-up only: stop climbing at the first grey internal ancestor.
  bool stop_at_grey_ancestor = false;
};

struct Neighbor {
  ObjectId id;
  double distance;
};

struct LeafEntry {
  ObjectId object;
  double dist_to_parent;
  double closest_black = kNoBlack;
};

struct MTreeNode {
  bool leaf = true;
  NodeId parent = kNoNode;
  std::optional<ObjectId> pivot;  // empty for the root
  double covering_radius = 0.0;
  double dist_to_parent = 0.0;  // pivot distance to the parent's pivot
  std::vector<NodeId> children;
  std::vector<LeafEntry> entries;
  NodeId prev_leaf = kNoNode;
  NodeId next_leaf = kNoNode;
  bool grey = false;
};

/// Input to a node split: the routing object of each entry and the radius of
/// the ball it stands for (0 for leaf entries).
struct SplitItem {
  ObjectId object;
  double radius;
};

struct SplitResult {
  std::size_t pivot_a;  // index into the items
  std::size_t pivot_b;
  std::vector<std::size_t> group_a;  // ascending item indices, contains pivot_a
  std::vector<std::size_t> group_b;
  double radius_a;
  double radius_b;
};

/// Chooses two pivots among `items` and partitions the items between them.
/// `current_pivot` is the index of the item routed by the overflowing node's
/// own pivot, if any (used by the min_overlap promote policy).
SplitResult split_entries(std::span<const SplitItem> items,
                          std::optional<std::size_t> current_pivot, SplitPolicy policy,
                          Metric metric, const Dataset& data, std::mt19937_64& rng);

struct LevelStats {
  std::size_t level;
  std::size_t nodes;
  std::size_t entries;
  double mean_fill;
};

struct TreeStats {
  std::size_t objects;
  std::size_t height;
  std::size_t node_count;
  std::size_t leaf_count;
  std::size_t capacity;
  std::string policy;
  double fat_factor;
  std::uint64_t build_accesses;
  std::vector<LevelStats> levels;
};

/// Balanced metric index over a dataset. Objects are inserted in id order;
/// leaves are chained left to right in depth-first order.
class MTree {
 public:
  MTree(std::shared_ptr<const Dataset> data, Metric metric, MTreeConfig config = {});

  const Dataset& data() const { return *data_; }
  std::shared_ptr<const Dataset> data_ptr() const { return data_; }
  Metric metric() const { return metric_; }
  const MTreeConfig& config() const { return config_; }

  std::size_t size() const { return data_->size(); }
  std::size_t height() const { return height_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const;
  NodeId root() const { return root_; }
  NodeId first_leaf() const { return first_leaf_; }
  const MTreeNode& node(NodeId id) const { return nodes_.at(id); }
  NodeId leaf_of(ObjectId id) const { return leaf_of_.at(id); }

  double distance(ObjectId a, ObjectId b) const {
    return distance_unchecked(metric_, (*data_)[a], (*data_)[b]);
  }

  /// Objects within distance r of `center` (the center itself included when
  /// indexed). Bottom-up mode requires `center` to be an indexed object.
  std::vector<Neighbor> range_query(const Point& center, double r, const QueryOptions& opts,
                                    AccessCounter& counter) const;
  std::vector<Neighbor> range_query(ObjectId center, double r, const QueryOptions& opts,
                                    AccessCounter& counter) const;

  /// Object ids in leaf-chain order.
  std::vector<ObjectId> leaf_order() const;

  class LeafIterator {
   public:
    using value_type = LeafEntry;
    using difference_type = std::ptrdiff_t;
    LeafIterator() = default;
    LeafIterator(const MTree* tree, NodeId leaf) : tree_(tree), leaf_(leaf) { skip_empty(); }
    const LeafEntry& operator*() const { return tree_->nodes_[leaf_].entries[slot_]; }
    const LeafEntry* operator->() const { return &**this; }
    LeafIterator& operator++();
    LeafIterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    NodeId leaf() const { return leaf_; }
    bool operator==(const LeafIterator& o) const { return leaf_ == o.leaf_ && slot_ == o.slot_; }

   private:
    void skip_empty();
    const MTree* tree_ = nullptr;
    NodeId leaf_ = kNoNode;
    std::size_t slot_ = 0;
  };
  LeafIterator leaves_begin() const { return LeafIterator(this, first_leaf_); }
  LeafIterator leaves_end() const { return LeafIterator(this, kNoNode); }

  // Node colors (pruning state).
  bool is_grey(NodeId id) const { return nodes_.at(id).grey; }
  /// Marks a leaf without active objects grey and propagates upward: an
  /// internal node turns grey once all of its children are grey. Throws
  /// std::logic_error if the leaf still holds a white or red object.
  void color_grey_upward(NodeId leaf, std::span<const Color> colors);
  /// Clears grey on a leaf and all of its ancestors.
  void clear_grey_upward(NodeId leaf);
  /// Recomputes every node color from the object colors.
  void recolor_nodes(std::span<const Color> colors);
  void clear_node_colors();

  // Closest-black distances stored in leaf entries.
  double closest_black(ObjectId id) const;
  void set_closest_black(ObjectId id, double d);
  void reset_closest_black(double value = kNoBlack);
  /// Identifies the solution the stored distances belong to (0 = none).
  std::uint64_t closest_black_owner() const { return cbd_owner_; }
  void set_closest_black_owner(std::uint64_t tag) { cbd_owner_ = tag; }

  /// |N_r(p)| per object computed while building, if the tree was built with
  /// counting enabled for exactly this radius.
  const std::vector<std::uint32_t>* build_counts_for(double r) const;
  std::uint64_t build_accesses() const { return build_accesses_; }

  double fat_factor() const;
  TreeStats stats() const;

  /// Structural audit: covering radii, parent links, stored distances, leaf
  /// chain and back-references. Returns a list of violations (empty if sound).
  std::vector<std::string> audit() const;

 private:
  void insert(ObjectId id);
  void split_node(NodeId nid);
  void rethread(NodeId first_old, NodeId last_old, std::span<const NodeId> subtrees);
  void collect_leaves(NodeId nid, std::vector<NodeId>& out) const;
  NodeId new_node(bool leaf);
  void search(NodeId nid, const Point& q, double r, std::optional<double> d_pivot, bool prune,
              std::vector<Neighbor>& out, AccessCounter& counter) const;
  void scan_leaf(const MTreeNode& leaf, const Point& q, double r, std::optional<double> d_pivot,
                 std::vector<Neighbor>& out) const;
  double pivot_distance(const Point& q, const MTreeNode& n) const;

  std::shared_ptr<const Dataset> data_;
  Metric metric_;
  MTreeConfig config_;
  std::vector<MTreeNode> nodes_;
  NodeId root_ = kNoNode;
  NodeId first_leaf_ = kNoNode;
  std::size_t height_ = 1;
  std::vector<NodeId> leaf_of_;
  std::vector<std::uint32_t> slot_of_;
  std::vector<std::uint32_t> build_counts_;
  std::uint64_t build_accesses_ = 0;
  std::uint64_t cbd_owner_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace disc
