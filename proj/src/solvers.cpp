#include "wsm/solvers.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "wsm/errors.hpp"
#include "wsm/rng.hpp"

namespace wsm {

SimpleProjection simple_projection(const MultiGraph& g) {
  SimpleProjection p;
  p.neighbors.resize(g.n());
  p.looped.assign(g.n(), 0);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) {
      p.looped[e.u] = 1;
      continue;
    }
    p.neighbors[e.u].push_back(e.v);
    p.neighbors[e.v].push_back(e.u);
  }
  for (auto& list : p.neighbors) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return p;
}

bool is_maximal(const MultiGraph& g, const VertexSet& s) {
  const SimpleProjection p = simple_projection(g);
  for (std::size_t v = 0; v < g.n(); ++v) {
    if (s.contains(v) || p.looped[v]) continue;
    const auto& nb = p.neighbors[v];
    if (std::none_of(nb.begin(), nb.end(), [&](std::uint32_t u) { return s.contains(u); })) return false;
  }
  return true;
}

namespace {

// Vertex pool supporting O(1) uniform choice and removal.
class IndexedPool {
 public:
  explicit IndexedPool(std::size_t n) : pos_(n, kAbsent) {}

  void add(std::uint32_t v) {
    if (pos_[v] != kAbsent) return;
    pos_[v] = items_.size();
    items_.push_back(v);
  }
  void remove(std::uint32_t v) {
    const std::size_t i = pos_[v];
    if (i == kAbsent) return;
    const std::uint32_t last = items_.back();
    items_[i] = last;
    pos_[last] = i;
    items_.pop_back();
    pos_[v] = kAbsent;
  }
  bool empty() const { return items_.empty(); }
  std::uint32_t pick(Rng& rng) const { return items_[rng.below(items_.size())]; }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pos_;
  std::vector<std::uint32_t> items_;
};

}  // namespace

VertexSet karp_sipser(const MultiGraph& g, std::uint64_t seed) {
  const SimpleProjection p = simple_projection(g);
  const std::size_t n = g.n();
  Rng rng(seed);
  VertexSet chosen(n);
  std::vector<std::uint8_t> alive(n, 1);
  std::vector<std::size_t> degree(n);
  IndexedPool remaining(n);
  IndexedPool low(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    degree[v] = p.neighbors[v].size();
    remaining.add(v);
  }

  auto remove = [&](std::uint32_t v) {
    alive[v] = 0;
    remaining.remove(v);
    low.remove(v);
    for (std::uint32_t u : p.neighbors[v]) {
      if (!alive[u]) continue;
      if (--degree[u] <= 1) low.add(u);
    }
  };

  for (std::uint32_t v = 0; v < n; ++v) {
    if (p.looped[v]) remove(v);
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (alive[v] && degree[v] <= 1) low.add(v);
  }

  while (!remaining.empty()) {
    const bool forced = !low.empty();
    const std::uint32_t v = forced ? low.pick(rng) : remaining.pick(rng);
    chosen.insert(v);
    std::vector<std::uint32_t> doomed;
    for (std::uint32_t u : p.neighbors[v]) {
      if (alive[u]) doomed.push_back(u);
    }
    remove(v);
    for (std::uint32_t u : doomed) {
      if (alive[u]) remove(u);
    }
  }
  return chosen;
}

VertexSet greedy_random(const MultiGraph& g, std::uint64_t seed) {
  const SimpleProjection p = simple_projection(g);
  const std::size_t n = g.n();
  Rng rng(seed);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  VertexSet chosen(n);
  for (std::uint32_t v : order) {
    if (p.looped[v]) continue;
    const auto& nb = p.neighbors[v];
    if (std::none_of(nb.begin(), nb.end(), [&](std::uint32_t u) { return chosen.contains(u); })) {
      chosen.insert(v);
    }
  }
  return chosen;
}

namespace {

using Mask = std::uint64_t;

Mask bit(std::size_t v) { return Mask{1} << v; }

class BranchAndBound {
 public:
  explicit BranchAndBound(std::vector<Mask> adj) : adj_(std::move(adj)) {}

  Mask solve(Mask candidates) {
    search(candidates, 0, 0);
    return best_set_;
  }

 private:
  // Greedy clique cover of `p`; each clique holds at most one set vertex.
  int clique_cover(Mask p) const {
    int cliques = 0;
    while (p != 0) {
      const int v = std::countr_zero(p);
      Mask clique = bit(v);
      Mask grow = p & adj_[v];
      while (grow != 0) {
        const int u = std::countr_zero(grow);
        clique |= bit(u);
        grow &= adj_[u];
      }
      p &= ~clique;
      ++cliques;
    }
    return cliques;
  }

  void search(Mask p, int size, Mask current) {
    if (p == 0) {
      if (size > best_) {
        best_ = size;
        best_set_ = current;
      }
      return;
    }
    if (size + clique_cover(p) <= best_) return;

    int min_v = -1;
    int max_v = -1;
    int min_deg = 65;
    int max_deg = -1;
    for (Mask q = p; q != 0; q &= q - 1) {
      const int v = std::countr_zero(q);
      const int d = std::popcount(adj_[v] & p);
      if (d < min_deg) {
        min_deg = d;
        min_v = v;
      }
      if (d > max_deg) {
        max_deg = d;
        max_v = v;
      }
    }
    // A vertex of degree <= 1 belongs to some maximum set.
    if (min_deg <= 1) {
      search(p & ~(adj_[min_v] | bit(min_v)), size + 1, current | bit(min_v));
      return;
    }
    search(p & ~(adj_[max_v] | bit(max_v)), size + 1, current | bit(max_v));
    search(p & ~bit(max_v), size, current);
  }

  std::vector<Mask> adj_;
  int best_ = -1;
  Mask best_set_ = 0;
};

}  // namespace

VertexSet exact_mis(const MultiGraph& g, std::size_t cap) {
  const std::size_t n = g.n();
  if (cap > kExactMisCap) cap = kExactMisCap;
  if (n > cap) {
    throw SizeError("exact_mis: n = " + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
  }
  std::vector<Mask> adj(n, 0);
  Mask candidates = 0;
  for (std::size_t v = 0; v < n; ++v) candidates |= bit(v);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) {
      candidates &= ~bit(e.u);
      continue;
    }
    adj[e.u] |= bit(e.v);
    adj[e.v] |= bit(e.u);
  }
  BranchAndBound solver(std::move(adj));
  return VertexSet::from_mask(n, solver.solve(candidates));
}

}  // namespace wsm
