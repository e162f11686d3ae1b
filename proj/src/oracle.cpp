#include "disc/oracle.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace disc::oracle {

Graph::Graph(std::size_t n) : adj_(n, 0) {
  if (n > kMaxVertices) throw std::length_error("graph too large for the exact oracle");
}

void Graph::add_edge(std::size_t a, std::size_t b) {
  if (a == b) return;
  adj_[a] |= std::uint64_t{1} << b;
  adj_[b] |= std::uint64_t{1} << a;
}

std::size_t Graph::degree(std::size_t v) const { return std::popcount(adj_[v]); }

std::size_t Graph::max_degree() const {
  std::size_t d = 0;
  for (std::size_t v = 0; v < size(); ++v) d = std::max(d, degree(v));
  return d;
}

bool Graph::independent(std::uint64_t set) const {
  for (std::uint64_t s = set; s; s &= s - 1)
    if (adj_[std::countr_zero(s)] & set) return false;
  return true;
}

bool Graph::dominating(std::uint64_t set) const {
  std::uint64_t covered = set;
  for (std::uint64_t s = set; s; s &= s - 1) covered |= adj_[std::countr_zero(s)];
  const std::uint64_t all = size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
  return covered == all;
}

std::uint64_t to_mask(std::span<const ObjectId> ids) {
  std::uint64_t m = 0;
  for (ObjectId id : ids) {
    if (id >= kMaxVertices) throw std::out_of_range("id too large for a mask");
    m |= std::uint64_t{1} << id;
  }
  return m;
}

std::vector<ObjectId> to_ids(std::uint64_t mask) {
  std::vector<ObjectId> ids;
  for (; mask; mask &= mask - 1) ids.push_back(static_cast<ObjectId>(std::countr_zero(mask)));
  return ids;
}

Graph build_disc_graph(const Dataset& data, double r, Metric metric) {
  Graph g(data.size());
  for (ObjectId i = 0; i < data.size(); ++i)
    for (ObjectId j = i + 1; j < data.size(); ++j)
      if (distance(metric, data[i], data[j]) <= r) g.add_edge(i, j);
  return g;
}

namespace {

// Visits k-subsets of {0..n-1} in lexicographic order of their sorted
// elements; stops at the first one accepted.
template <class Accept>
bool first_combination(std::size_t n, std::size_t k, Accept accept, std::uint64_t& found) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return false;
  while (true) {
    std::uint64_t m = 0;
    for (std::size_t i : idx) m |= std::uint64_t{1} << i;
    if (accept(m)) {
      found = m;
      return true;
    }
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Independent sets are extended in increasing vertex order, so the search
// never builds a set that already has an edge.
bool independent_dominating_of_size(const Graph& g, std::size_t k, std::size_t start,
                                    std::uint64_t chosen, std::uint64_t blocked,
                                    std::uint64_t& found) {
  if (k == 0) {
    if (g.dominating(chosen)) {
      found = chosen;
      return true;
    }
    return false;
  }
  for (std::size_t v = start; v < g.size(); ++v) {
    if ((blocked >> v) & 1u) continue;
    if (independent_dominating_of_size(g, k - 1, v + 1, chosen | (std::uint64_t{1} << v),
                                       blocked | g.neighbors(v), found))
      return true;
  }
  return false;
}

void require_size(const Graph& g, std::size_t limit) {
  if (g.size() > limit) throw std::length_error("instance too large for the exact oracle");
}

}  // namespace

std::vector<ObjectId> min_independent_dominating_set(const Graph& g) {
  require_size(g, 20);
  for (std::size_t k = 0; k <= g.size(); ++k) {
    std::uint64_t found = 0;
    if (independent_dominating_of_size(g, k, 0, 0, 0, found)) return to_ids(found);
  }
  return {};
}

std::vector<ObjectId> min_dominating_set(const Graph& g) {
  require_size(g, 20);
  for (std::size_t k = 0; k <= g.size(); ++k) {
    std::uint64_t found = 0;
    if (k == 0) {
      if (g.size() == 0) return {};
      continue;
    }
    if (first_combination(g.size(), k, [&](std::uint64_t m) { return g.dominating(m); }, found))
      return to_ids(found);
  }
  return {};
}

std::vector<std::vector<ObjectId>> enumerate_maximal_independent_sets(const Graph& g) {
  require_size(g, 16);
  std::vector<std::vector<ObjectId>> out;
  const std::uint64_t limit = std::uint64_t{1} << g.size();
  for (std::uint64_t m = 0; m < limit; ++m) {
    if (!g.independent(m)) continue;
    bool maximal = true;
    for (std::size_t v = 0; v < g.size() && maximal; ++v)
      if (!((m >> v) & 1u) && (g.neighbors(v) & m) == 0) maximal = false;
    if (maximal) out.push_back(to_ids(m));
  }
  return out;
}

std::size_t max_independent_neighbors(const Dataset& data, Metric metric, double r) {
  std::size_t best = 0;
  for (ObjectId p = 0; p < data.size(); ++p) {
    std::vector<ObjectId> nb;
    for (ObjectId q = 0; q < data.size(); ++q)
      if (q != p && distance(metric, data[p], data[q]) <= r) nb.push_back(q);
    if (nb.size() > 20) throw std::length_error("neighborhood too large for the exact oracle");
    if (nb.size() <= best) continue;
    Graph g = build_disc_graph(data.subset(nb), r, metric);
    // Largest independent set by descending size.
    for (std::size_t k = nb.size(); k > best; --k) {
      std::uint64_t found = 0;
      if (first_combination(nb.size(), k, [&](std::uint64_t m) { return g.independent(m); },
                            found)) {
        best = k;
        break;
      }
    }
  }
  return best;
}

double min_pairwise(const Dataset& data, std::span<const ObjectId> ids, Metric metric) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      best = std::min(best, distance(metric, data[ids[i]], data[ids[j]]));
  return best;
}

std::vector<ObjectId> optimal_maxmin(const Dataset& data, std::size_t k, Metric metric) {
  const std::size_t n = data.size();
  if (n > 14) throw std::length_error("instance too large for the exact oracle");
  if (k < 1 || k > n) throw std::invalid_argument("k out of range");
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dist[i][j] = distance(metric, data[static_cast<ObjectId>(i)], data[static_cast<ObjectId>(j)]);
  double best = -1.0;
  std::uint64_t best_mask = 0;
  std::uint64_t dummy = 0;
  first_combination(
      n, k,
      [&](std::uint64_t m) {
        double v = std::numeric_limits<double>::infinity();
        for (std::uint64_t a = m; a; a &= a - 1) {
          const int i = std::countr_zero(a);
          for (std::uint64_t b = a & (a - 1); b; b &= b - 1)
            v = std::min(v, dist[i][std::countr_zero(b)]);
        }
        if (v > best) {
          best = v;
          best_mask = m;
        }
        return false;
      },
      dummy);
  return to_ids(best_mask);
}

}  // namespace disc::oracle
