#include "wsm/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "wsm/errors.hpp"
#include "wsm/rng.hpp"
#include "wsm/solvers.hpp"

namespace wsm {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Exact:
      return "exact";
    case Algorithm::KarpSipser:
      return "karp-sipser";
    case Algorithm::GreedyRandom:
      return "greedy-random";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "exact") return Algorithm::Exact;
  if (name == "karp-sipser") return Algorithm::KarpSipser;
  if (name == "greedy-random") return Algorithm::GreedyRandom;
  return std::nullopt;
}

std::size_t edge_count(std::size_t n, double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("edge_count: c must be nonnegative");
  return static_cast<std::size_t>(std::llround(c * static_cast<double>(n) / 2.0));
}

std::uint64_t solver_seed(std::uint64_t trial_seed) { return splitmix64(trial_seed ^ 0x5bd1e9955bd1e995ULL); }

SimResult run_on_graph(const MultiGraph& g, Algorithm algorithm, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  VertexSet s(g.n());
  switch (algorithm) {
    case Algorithm::Exact:
      s = exact_mis(g);
      break;
    case Algorithm::KarpSipser:
      s = karp_sipser(g, solver_seed(seed));
      break;
    case Algorithm::GreedyRandom:
      s = greedy_random(g, solver_seed(seed));
      break;
  }
  const auto stop = std::chrono::steady_clock::now();

  SimResult r;
  r.seed = seed;
  r.n = g.n();
  r.m = g.m();
  r.algorithm = algorithm;
  r.set_size = s.size();
  r.ratio = g.n() == 0 ? 0.0 : static_cast<double>(r.set_size) / static_cast<double>(g.n());
  r.wall_seconds = std::chrono::duration<double>(stop - start).count();
  r.independent = is_independent(g, s);
  r.maximal = is_maximal(g, s);
  return r;
}

std::vector<SimResult> run_trials(std::size_t n, double c, std::size_t trials, Algorithm algorithm,
                                  std::uint64_t seed, unsigned threads) {
  if (n < 1) throw DomainError("run_trials: n must be positive");
  if (algorithm == Algorithm::Exact && n > kExactMisCap) {
    throw SizeError("run_trials: exact solver supports n <= " + std::to_string(kExactMisCap));
  }
  const std::size_t m = edge_count(n, c);
  std::vector<SimResult> results(trials);
  auto run_one = [&](std::size_t i) {
    const std::uint64_t s = seed + i;
    results[i] = run_on_graph(sample(n, m, s), algorithm, s);
  };

  if (threads <= 1 || trials <= 1) {
    for (std::size_t i = 0; i < trials; ++i) run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < trials && !failed; i = next++) {
        try {
          run_one(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

RatioSummary summarize(const std::vector<SimResult>& results) {
  RatioSummary s;
  if (results.empty()) return s;
  std::vector<double> r;
  r.reserve(results.size());
  for (const auto& x : results) r.push_back(x.ratio);
  std::sort(r.begin(), r.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(r.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, r.size() - 1);
    return r[lo] + (pos - static_cast<double>(lo)) * (r[hi] - r[lo]);
  };
  s.min = r.front();
  s.max = r.back();
  s.q25 = quantile(0.25);
  s.median = quantile(0.5);
  s.q75 = quantile(0.75);
  double total = 0.0;
  for (double x : r) total += x;
  s.mean = total / static_cast<double>(r.size());
  return s;
}

}  // namespace wsm
