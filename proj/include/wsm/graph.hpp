#pragma once

// The multigraph model: m ordered vertex pairs drawn uniformly with
// replacement. Loops and repeated edges are kept; a loop vertex can never be
// in an independent set.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace wsm {

struct Edge {
  std::uint32_t u;
  std::uint32_t v;
  bool operator==(const Edge&) const = default;
};

class MultiGraph {
 public:
  MultiGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t n() const { return n_; }
  std::size_t m() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  // A loop at v counts 2 towards deg(v), so the degrees sum to 2m.
  const std::vector<std::size_t>& degrees() const { return degree_; }
  bool has_loop(std::size_t v) const { return looped_[v] != 0; }

  bool operator==(const MultiGraph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> degree_;
  std::vector<std::uint8_t> looped_;
};

// Dense membership bitmap over [0, n).
class VertexSet {
 public:
  explicit VertexSet(std::size_t n = 0) : n_(n), words_((n + 63) / 64, 0) {}

  static VertexSet from_members(std::size_t n, std::span<const std::size_t> members);
  // Vertices 0..63 taken from the bits of `mask`; n must be at most 64.
  static VertexSet from_mask(std::size_t n, std::uint64_t mask);

  std::size_t universe() const { return n_; }
  void insert(std::size_t v);
  void erase(std::size_t v);
  bool contains(std::size_t v) const { return v < n_ && ((words_[v / 64] >> (v % 64)) & 1U) != 0; }
  std::size_t size() const;
  std::vector<std::size_t> members() const;

  bool operator==(const VertexSet&) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> words_;
};

// m ordered pairs, each uniform over the n^2 possibilities; deterministic in seed.
MultiGraph sample(std::size_t n, std::size_t m, std::uint64_t seed);

// No edge, loops included, has both endpoints in s.
bool is_independent(const MultiGraph& g, const VertexSet& s);

// mu^k computed by k successive multiplications, so that it matches a
// product of per-edge factors bit for bit.
double power_of(double mu, std::size_t k);

// mu^(number of edges with both endpoints outside s), or 0 when s is not
// independent.
double weight(const MultiGraph& g, const VertexSet& s, double mu);

// The same weight as a product over edges of mu (both outside), 1 (one
// endpoint inside) or 0 (both inside).
double weight_by_edge_product(const MultiGraph& g, const VertexSet& s, double mu);

// Text format: "n m" on the first line, then m lines "u v" (0-indexed).
void write_graph(std::ostream& os, const MultiGraph& g);
MultiGraph read_graph(std::istream& is);

}  // namespace wsm
