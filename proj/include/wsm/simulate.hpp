#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wsm/graph.hpp"

namespace wsm {

enum class Algorithm { Exact, KarpSipser, GreedyRandom };

std::string to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct SimResult {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  Algorithm algorithm = Algorithm::KarpSipser;
  std::size_t set_size = 0;
  double ratio = 0.0;  // set_size / n
  double wall_seconds = 0.0;
  bool independent = false;
  bool maximal = false;
};

// m = round(c n / 2).
std::size_t edge_count(std::size_t n, double c);

// Seed for the solver's own random stream on trial seed s; kept distinct from
// the graph stream Rng(s).
std::uint64_t solver_seed(std::uint64_t trial_seed);

SimResult run_on_graph(const MultiGraph& g, Algorithm algorithm, std::uint64_t seed);

// Trial i samples its graph with seed + i. Trials may run on `threads` worker
// threads; results are ordered by trial index either way.
std::vector<SimResult> run_trials(std::size_t n, double c, std::size_t trials, Algorithm algorithm,
                                  std::uint64_t seed, unsigned threads = 1);

struct RatioSummary {
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

// Quantiles of set_size / n (linear interpolation between order statistics).
RatioSummary summarize(const std::vector<SimResult>& results);

}  // namespace wsm
