#include "disc/coloring.hpp"

namespace disc {

Coloring::Coloring(MTree& tree, Color initial)
    : tree_(&tree),
      colors_(tree.size(), initial),
      white_count_(tree.size(), 0),
      active_in_leaf_(tree.node_count(), 0) {
  by_color_[static_cast<std::size_t>(initial)] = tree.size();
  if (is_active(initial))
    for (ObjectId id = 0; id < tree.size(); ++id) ++active_in_leaf_[tree.leaf_of(id)];
  tree.recolor_nodes(colors_);
}

void Coloring::set(ObjectId id, Color c) {
  const Color old = colors_[id];
  if (old == c) return;
  colors_[id] = c;
  --by_color_[static_cast<std::size_t>(old)];
  ++by_color_[static_cast<std::size_t>(c)];
  if (is_active(old) == is_active(c)) return;
  const NodeId leaf = tree_->leaf_of(id);
  if (is_active(c)) {
    if (active_in_leaf_[leaf]++ == 0) tree_->clear_grey_upward(leaf);
  } else {
    if (--active_in_leaf_[leaf] == 0) tree_->color_grey_upward(leaf, colors_);
  }
}

void CandidateQueue::put(ObjectId id, std::int64_t count, int tier) {
  erase(id);
  const Key k{order_ == Order::largest_first ? -count : count, tier, id};
  set_.insert(k);
  keys_[id] = k;
}

void CandidateQueue::erase(ObjectId id) {
  if (auto& k = keys_[id]) {
    set_.erase(*k);
    k.reset();
  }
}

ObjectId CandidateQueue::pop() {
  const ObjectId id = top();
  erase(id);
  return id;
}

}  // namespace disc
