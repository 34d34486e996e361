#include "wsm/graph.hpp"

#include <bit>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "wsm/errors.hpp"
#include "wsm/rng.hpp"

namespace wsm {

MultiGraph::MultiGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), degree_(n, 0), looped_(n, 0) {
  if (n > std::numeric_limits<std::uint32_t>::max()) throw DomainError("MultiGraph: too many vertices");
  for (const Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_) throw DomainError("MultiGraph: edge endpoint out of range");
    ++degree_[e.u];
    ++degree_[e.v];
    if (e.u == e.v) looped_[e.u] = 1;
  }
}

VertexSet VertexSet::from_members(std::size_t n, std::span<const std::size_t> members) {
  VertexSet s(n);
  for (std::size_t v : members) s.insert(v);
  return s;
}

VertexSet VertexSet::from_mask(std::size_t n, std::uint64_t mask) {
  if (n > 64) throw DomainError("VertexSet::from_mask: n must be at most 64");
  if (n < 64 && (mask >> n) != 0) throw DomainError("VertexSet::from_mask: bits beyond n");
  VertexSet s(n);
  if (n > 0) s.words_[0] = mask;
  return s;
}

void VertexSet::insert(std::size_t v) {
  if (v >= n_) throw DomainError("VertexSet: vertex out of range");
  words_[v / 64] |= std::uint64_t{1} << (v % 64);
}

void VertexSet::erase(std::size_t v) {
  if (v >= n_) throw DomainError("VertexSet: vertex out of range");
  words_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
}

std::size_t VertexSet::size() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::size_t> VertexSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w != 0) {
      out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

MultiGraph sample(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample: need at least one vertex");
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto u = static_cast<std::uint32_t>(rng.below(n));
    const auto v = static_cast<std::uint32_t>(rng.below(n));
    edges.push_back({u, v});
  }
  return MultiGraph(n, std::move(edges));
}

namespace {

void require_same_universe(const MultiGraph& g, const VertexSet& s) {
  if (s.universe() != g.n()) throw DomainError("vertex set and graph disagree on n");
}

}  // namespace

bool is_independent(const MultiGraph& g, const VertexSet& s) {
  require_same_universe(g, s);
  for (const Edge& e : g.edges()) {
    if (s.contains(e.u) && s.contains(e.v)) return false;
  }
  return true;
}

double power_of(double mu, std::size_t k) {
  double out = 1.0;
  for (std::size_t i = 0; i < k; ++i) out *= mu;
  return out;
}

double weight(const MultiGraph& g, const VertexSet& s, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("weight: mu must lie in [0, 1]");
  if (!is_independent(g, s)) return 0.0;
  std::size_t outside = 0;
  for (const Edge& e : g.edges()) {
    if (!s.contains(e.u) && !s.contains(e.v)) ++outside;
  }
  return power_of(mu, outside);
}

double weight_by_edge_product(const MultiGraph& g, const VertexSet& s, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("weight: mu must lie in [0, 1]");
  require_same_universe(g, s);
  double w = 1.0;
  for (const Edge& e : g.edges()) {
    const int inside = static_cast<int>(s.contains(e.u)) + static_cast<int>(s.contains(e.v));
    if (inside == 2) return 0.0;
    if (inside == 0) w *= mu;
  }
  return w;
}

void write_graph(std::ostream& os, const MultiGraph& g) {
  os << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

MultiGraph read_graph(std::istream& is) {
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(is, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) return;
    }
    throw ParseError(std::string("graph file: missing ") + what);
  };
  auto parse_pair = [&](const char* what) {
    std::istringstream ls(line);
    long long a = -1;
    long long b = -1;
    std::string extra;
    if (!(ls >> a >> b) || (ls >> extra) || a < 0 || b < 0) {
      throw ParseError(std::string("graph file: malformed ") + what + ": '" + line + "'");
    }
    return std::pair<long long, long long>{a, b};
  };

  next_line("header");
  const auto [n, m] = parse_pair("header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    next_line("edge line");
    const auto [u, v] = parse_pair("edge line");
    if (u >= n || v >= n) throw ParseError("graph file: endpoint out of range: '" + line + "'");
    edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)});
  }
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw ParseError("graph file: more edge lines than the header declares");
    }
  }
  return MultiGraph(static_cast<std::size_t>(n), std::move(edges));
}

}  // namespace wsm
