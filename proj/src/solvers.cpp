#include "disc/solvers.hpp"

#include <chrono>
#include <stdexcept>

namespace disc {

namespace {

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void require_radius(double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("radius must be non-negative");
}

}  // namespace

AlgorithmSpec AlgorithmSpec::parse(std::string_view name) {
  AlgorithmSpec spec;
  std::string_view base = name;
  constexpr std::string_view suffix = "_pruned";
  if (base.size() > suffix.size() && base.ends_with(suffix)) {
    spec.pruned = true;
    base.remove_suffix(suffix.size());
  }
  if (base == "basic") spec.algorithm = Algorithm::basic;
  else if (base == "grey") spec.algorithm = Algorithm::greedy_grey;
  else if (base == "white") spec.algorithm = Algorithm::greedy_white;
  else if (base == "lazy_grey") spec.algorithm = Algorithm::lazy_grey;
  else if (base == "lazy_white") spec.algorithm = Algorithm::lazy_white;
  else if (base == "greedy_c" && !spec.pruned) spec.algorithm = Algorithm::greedy_c;
  else if (base == "fast_c" && !spec.pruned) spec.algorithm = Algorithm::fast_c;
  else throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
  return spec;
}

std::string AlgorithmSpec::name() const {
  std::string s;
  switch (algorithm) {
    case Algorithm::basic: s = "basic"; break;
    case Algorithm::greedy_grey: s = "grey"; break;
    case Algorithm::greedy_white: s = "white"; break;
    case Algorithm::lazy_grey: s = "lazy_grey"; break;
    case Algorithm::lazy_white: s = "lazy_white"; break;
    case Algorithm::greedy_c: return "greedy_c";
    case Algorithm::fast_c: return "fast_c";
  }
  if (pruned) s += "_pruned";
  return s;
}

std::vector<std::int64_t> neighborhood_counts(const MTree& tree, double r,
                                              AccessCounter& counter) {
  std::vector<std::int64_t> counts(tree.size(), 0);
  if (const auto* pre = tree.build_counts_for(r)) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] = (*pre)[i];
    return counts;
  }
  for (auto it = tree.leaves_begin(); it != tree.leaves_end(); ++it) {
    const auto hits = tree.range_query(it->object, r, {}, counter);
    counts[it->object] = static_cast<std::int64_t>(hits.size()) - 1;
  }
  return counts;
}

DiverseSubset basic_disc(MTree& tree, double r, bool pruned) {
  require_radius(r);
  Stopwatch clock;
  AccessCounter counter;
  Coloring col(tree, Color::white);
  DiverseSubset out{r, {}, AlgorithmSpec{Algorithm::basic, pruned}.name(), 0, 0.0};
  const QueryOptions q{QueryMode::top_down, pruned, false};

  for (NodeId leaf = tree.first_leaf(); leaf != kNoNode; leaf = tree.node(leaf).next_leaf) {
    counter.visit();
    // Entries are copied out: the queries below only touch colors.
    for (std::size_t s = 0; s < tree.node(leaf).entries.size(); ++s) {
      const ObjectId p = tree.node(leaf).entries[s].object;
      if (!col.is(p, Color::white)) continue;
      out.ids.push_back(p);
      col.set(p, Color::black);
      for (const auto& h : tree.range_query(p, r, q, counter))
        if (col.is(h.id, Color::white)) col.set(h.id, Color::grey);
    }
  }
  out.access_cost = counter.node_accesses;
  out.wall_ms = clock.elapsed_ms();
  return out;
}

DiverseSubset greedy_disc(MTree& tree, double r, GreedyVariant variant, bool pruned,
                          const SelectionObserver& observer) {
  require_radius(r);
  Stopwatch clock;
  AccessCounter counter;
  Coloring col(tree, Color::white);
  const Algorithm alg = variant == GreedyVariant::grey        ? Algorithm::greedy_grey
                        : variant == GreedyVariant::white     ? Algorithm::greedy_white
                        : variant == GreedyVariant::lazy_grey ? Algorithm::lazy_grey
                                                              : Algorithm::lazy_white;
  DiverseSubset out{r, {}, AlgorithmSpec{alg, pruned}.name(), 0, 0.0};
  const QueryOptions q{QueryMode::top_down, pruned, false};

  const auto counts = neighborhood_counts(tree, r, counter);
  CandidateQueue queue(tree.size());
  for (ObjectId id = 0; id < tree.size(); ++id) {
    col.set_white_count(id, counts[id]);
    queue.put(id, counts[id]);
  }

  std::vector<ObjectId> newly_grey;
  while (!queue.empty()) {
    const ObjectId p = queue.pop();
    // Lazy counts can be stale but colors never are.
    if (!col.is(p, Color::white)) continue;
    out.ids.push_back(p);
    col.set(p, Color::black);

    newly_grey.clear();
    for (const auto& h : tree.range_query(p, r, q, counter)) {
      if (!col.is(h.id, Color::white)) continue;
      col.set(h.id, Color::grey);
      queue.erase(h.id);
      newly_grey.push_back(h.id);
    }

    auto decrement = [&](ObjectId w, std::int64_t by) {
      col.set_white_count(w, col.white_count(w) - by);
      queue.put(w, col.white_count(w));
    };

    switch (variant) {
      case GreedyVariant::grey:
      case GreedyVariant::lazy_grey: {
        const double radius = variant == GreedyVariant::grey ? r : r / 2.0;
        for (ObjectId g : newly_grey)
          for (const auto& h : tree.range_query(g, radius, q, counter))
            if (col.is(h.id, Color::white)) decrement(h.id, 1);
        break;
      }
      case GreedyVariant::white:
      case GreedyVariant::lazy_white: {
        const double radius = variant == GreedyVariant::white ? 2.0 * r : 1.5 * r;
        if (newly_grey.empty()) break;
        for (const auto& h : tree.range_query(p, radius, q, counter)) {
          if (!col.is(h.id, Color::white)) continue;
          std::int64_t lost = 0;
          for (ObjectId g : newly_grey)
            if (tree.distance(h.id, g) <= r) ++lost;
          if (lost > 0) decrement(h.id, lost);
        }
        break;
      }
    }
    if (observer) observer(p, col);
  }
  out.access_cost = counter.node_accesses;
  out.wall_ms = clock.elapsed_ms();
  return out;
}

namespace {

// Shared body of Greedy-C and Fast-C. Candidates are every non-black object;
// white candidates rank ahead of grey ones with the same count, so the pick
// always maximizes the number of newly covered objects (itself included).
DiverseSubset covering_greedy(MTree& tree, double r, const QueryOptions& q, bool fast,
                              const SelectionObserver& observer) {
  require_radius(r);
  Stopwatch clock;
  AccessCounter counter;
  Coloring col(tree, Color::white);
  DiverseSubset out{r, {}, fast ? "fast_c" : "greedy_c", 0, 0.0};

  const auto counts = neighborhood_counts(tree, r, counter);
  CandidateQueue queue(tree.size());
  for (ObjectId id = 0; id < tree.size(); ++id) {
    col.set_white_count(id, counts[id]);
    queue.put(id, counts[id], 0);
  }

  std::vector<ObjectId> covered;
  while (col.count(Color::white) > 0) {
    const ObjectId p = queue.pop();
    const bool was_white = col.is(p, Color::white);
    covered.clear();
    if (was_white) covered.push_back(p);
    for (const auto& h : tree.range_query(p, r, q, counter))
      if (h.id != p && col.is(h.id, Color::white)) covered.push_back(h.id);
    // Pruned queries can miss decrements, so stored counts may overestimate.
    // A stale candidate is re-keyed instead of selected; a grey one that
    // covers nothing is dropped for good.
    const auto gain = static_cast<std::int64_t>(covered.size()) - (was_white ? 1 : 0);
    if (gain < col.white_count(p)) {
      col.set_white_count(p, gain);
      if (!was_white && gain == 0) continue;
      queue.put(p, gain, was_white ? 0 : 1);
      if (queue.top() != p) continue;
      queue.pop();
    }
    out.ids.push_back(p);
    col.set(p, Color::black);
    for (ObjectId c : covered) {
      if (c == p) continue;
      col.set(c, Color::grey);
      queue.put(c, col.white_count(c), 1);
    }
    if (fast) {
      // Every candidate that lost a white neighbor lies within 2r of p, so one
      // unpruned query replaces a query per covered object.
      const QueryOptions around{QueryMode::top_down, false, false};
      for (const auto& h : tree.range_query(p, 2.0 * r, around, counter)) {
        if (!queue.contains(h.id)) continue;
        std::int64_t lost = 0;
        for (ObjectId c : covered)
          if (c != h.id && tree.distance(h.id, c) <= r) ++lost;
        if (lost == 0) continue;
        col.set_white_count(h.id, col.white_count(h.id) - lost);
        queue.put(h.id, col.white_count(h.id), col.is(h.id, Color::white) ? 0 : 1);
      }
    } else {
      for (ObjectId c : covered)
        for (const auto& h : tree.range_query(c, r, q, counter)) {
          if (h.id == c || !queue.contains(h.id)) continue;
          col.set_white_count(h.id, col.white_count(h.id) - 1);
          queue.put(h.id, col.white_count(h.id), col.is(h.id, Color::white) ? 0 : 1);
        }
    }
    if (observer) observer(p, col);
  }
  out.access_cost = counter.node_accesses;
  out.wall_ms = clock.elapsed_ms();
  return out;
}

}  // namespace

DiverseSubset greedy_c(MTree& tree, double r, const SelectionObserver& observer) {
  const QueryOptions plain{QueryMode::top_down, false, false};
  return covering_greedy(tree, r, plain, false, observer);
}

DiverseSubset fast_c(MTree& tree, double r) {
  const QueryOptions sel{QueryMode::bottom_up, true, true};
  return covering_greedy(tree, r, sel, true, {});
}

DiverseSubset solve(MTree& tree, double r, AlgorithmSpec spec) {
  switch (spec.algorithm) {
    case Algorithm::basic: return basic_disc(tree, r, spec.pruned);
    case Algorithm::greedy_grey: return greedy_disc(tree, r, GreedyVariant::grey, spec.pruned);
    case Algorithm::greedy_white: return greedy_disc(tree, r, GreedyVariant::white, spec.pruned);
    case Algorithm::lazy_grey: return greedy_disc(tree, r, GreedyVariant::lazy_grey, spec.pruned);
    case Algorithm::lazy_white:
      return greedy_disc(tree, r, GreedyVariant::lazy_white, spec.pruned);
    case Algorithm::greedy_c: return greedy_c(tree, r);
    case Algorithm::fast_c: return fast_c(tree, r);
  }
  throw std::invalid_argument("unknown algorithm");
}

Verification verify(const Dataset& data, std::span<const ObjectId> ids, double r, Metric metric) {
  for (ObjectId id : ids) data.at(id);
  Verification v{true, true};
  std::vector<bool> member(data.size(), false);
  for (ObjectId id : ids) {
    if (member[id]) v.independence = false;
    member[id] = true;
  }
  for (std::size_t i = 0; i < ids.size() && v.independence; ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (distance(metric, data[ids[i]], data[ids[j]]) <= r) {
        v.independence = false;
        break;
      }
  for (const Point& p : data.points()) {
    if (member[p.id]) continue;
    bool covered = false;
    for (ObjectId id : ids)
      if (distance(metric, p, data[id]) <= r) {
        covered = true;
        break;
      }
    if (!covered) {
      v.coverage = false;
      break;
    }
  }
  return v;
}

}  // namespace disc
