#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "disc/mtree.hpp"

namespace disc {

/// Object colors plus white-neighborhood counts for one solver run. Keeps the
/// tree's node colors in sync: a leaf is grey exactly when it holds no white
/// or red object, and an internal node is grey when all its children are.
class Coloring {
 public:
  Coloring(MTree& tree, Color initial);

  Color color(ObjectId id) const { return colors_[id]; }
  bool is(ObjectId id, Color c) const { return colors_[id] == c; }
  void set(ObjectId id, Color c);
  std::span<const Color> colors() const { return colors_; }
  std::size_t count(Color c) const { return by_color_[static_cast<std::size_t>(c)]; }

  std::int64_t white_count(ObjectId id) const { return white_count_[id]; }
  void set_white_count(ObjectId id, std::int64_t v) { white_count_[id] = v; }
  std::span<const std::int64_t> white_counts() const { return white_count_; }

  double closest_black(ObjectId id) const { return tree_->closest_black(id); }

  MTree& tree() { return *tree_; }
  const MTree& tree() const { return *tree_; }

 private:
  MTree* tree_;
  std::vector<Color> colors_;
  std::vector<std::int64_t> white_count_;
  std::vector<std::uint32_t> active_in_leaf_;
  std::size_t by_color_[4] = {0, 0, 0, 0};
};

/// Candidates ordered by (count, tier, id): count descending for
/// largest-first queues, ascending for smallest-first; lower tier first; then
/// smaller id.
class CandidateQueue {
 public:
  enum class Order { largest_first, smallest_first };

  explicit CandidateQueue(std::size_t universe, Order order = Order::largest_first)
      : order_(order), keys_(universe) {}

  void put(ObjectId id, std::int64_t count, int tier = 0);
  void erase(ObjectId id);
  bool contains(ObjectId id) const { return keys_[id].has_value(); }
  bool empty() const { return set_.empty(); }
  std::size_t size() const { return set_.size(); }
  ObjectId top() const { return std::get<2>(*set_.begin()); }
  ObjectId pop();

 private:
  using Key = std::tuple<std::int64_t, int, ObjectId>;
  Order order_;
  std::set<Key> set_;
  std::vector<std::optional<Key>> keys_;
};

}  // namespace disc
