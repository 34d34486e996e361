#pragma once

// Independent-set algorithms on the loop-free simple projection of a
// MultiGraph: repeated edges collapse, loop vertices are excluded.

#include <cstdint>
#include <vector>

#include "wsm/graph.hpp"

namespace wsm {

struct SimpleProjection {
  std::vector<std::vector<std::uint32_t>> neighbors;  // sorted, no self entries
  std::vector<std::uint8_t> looped;
};

SimpleProjection simple_projection(const MultiGraph& g);

// No vertex outside s can be added: each is looped or has a neighbour in s.
bool is_maximal(const MultiGraph& g, const VertexSet& s);

// Degree-1 priority greedy. While some remaining vertex has degree <= 1, a
// uniformly chosen one joins the set and is deleted with its neighbour;
// otherwise a uniformly chosen remaining vertex joins and is deleted with all
// its neighbours. Loop vertices are deleted up front.
VertexSet karp_sipser(const MultiGraph& g, std::uint64_t seed);

// Scan vertices in a uniformly random order, keeping each one with no kept
// neighbour.
VertexSet greedy_random(const MultiGraph& g, std::uint64_t seed);

inline constexpr std::size_t kExactMisCap = 64;

// Maximum independent set by branch and bound on bitmasks (max-degree
// branching, degree <= 1 reduction, greedy clique-cover bound). Throws
// SizeError when n exceeds `cap` (at most 64).
VertexSet exact_mis(const MultiGraph& g, std::size_t cap = kExactMisCap);

}  // namespace wsm
