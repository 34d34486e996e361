#include "wsm/moments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "wsm/errors.hpp"
#include "wsm/graph.hpp"

namespace wsm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_setup(std::int64_t n, std::int64_t m, std::int64_t k, double mu, const char* who) {
  if (n < 1) throw DomainError(std::string(who) + ": n must be positive");
  if (m < 0) throw DomainError(std::string(who) + ": m must be nonnegative");
  if (k < 0 || k > n) throw DomainError(std::string(who) + ": k must lie in [0, n]");
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError(std::string(who) + ": mu must lie in [0, 1]");
}

// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

unsigned __int128 exact_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
  }
  return r;
}

double to_double(unsigned __int128 x) { return static_cast<double>(x); }

// m log w, with 0^0 = 1.
double scaled_log(std::int64_t m, double w) {
  if (m == 0) return 0.0;
  return w == 0.0 ? kNegInf : static_cast<double>(m) * std::log(w);
}

double log_multinomial(std::int64_t n, std::int64_t k, std::int64_t z) {
  return log_binomial(n, k) + log_binomial(k, z) + log_binomial(n - k, k - z);
}

std::int64_t z_min(std::int64_t n, std::int64_t k) { return std::max<std::int64_t>(0, 2 * k - n); }

// Sum over all k-subsets of the n <= 63 vertices of the weight, with edges
// held as endpoint masks.
double total_weight(std::int64_t n, std::int64_t k, const std::vector<std::uint64_t>& edge_masks,
                    const std::vector<std::uint8_t>& edge_is_loop, double mu) {
  if (k == 0) return std::pow(mu, static_cast<double>(edge_masks.size()));
  CompensatedSum total;
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t s = (std::uint64_t{1} << k) - 1;
  while (s < limit) {
    std::size_t outside = 0;
    bool independent = true;
    for (std::size_t e = 0; e < edge_masks.size(); ++e) {
      const int hits = std::popcount(s & edge_masks[e]);
      if (hits == 2 || (hits == 1 && edge_is_loop[e])) {
        independent = false;
        break;
      }
      if (hits == 0) ++outside;
    }
    if (independent) total.add(power_of(mu, outside));
    // Gosper's hack: next subset of the same size.
    const std::uint64_t low = s & (~s + 1);
    const std::uint64_t ripple = s + low;
    s = (((ripple ^ s) >> 2) / low) | ripple;
  }
  return total.value();
}

}  // namespace

double default_work_budget() {
  if (const char* env = std::getenv("WSMIS_WORK_BUDGET")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
  }
  return kDefaultWorkBudget;
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return kNegInf;
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double w1_counts(std::int64_t n, std::int64_t k, double mu) {
  const auto out = static_cast<double>(n - k);
  const auto in = static_cast<double>(k);
  const auto nn = static_cast<double>(n) * static_cast<double>(n);
  return (out * out * mu + 2.0 * in * out) / nn;
}

double w2_counts(std::int64_t n, std::int64_t k, std::int64_t z, double mu) {
  const auto free = static_cast<double>(n - 2 * k + z);
  const auto gap = static_cast<double>(k - z);
  const auto both = static_cast<double>(z);
  const auto nn = static_cast<double>(n) * static_cast<double>(n);
  return (free * free * mu * mu + 4.0 * gap * free * mu + 2.0 * gap * gap + 2.0 * both * free) / nn;
}

double log_expected_x(std::int64_t n, std::int64_t m, std::int64_t k, double mu) {
  require_setup(n, m, k, mu, "log_expected_x");
  return log_binomial(n, k) + scaled_log(m, w1_counts(n, k, mu));
}

double expected_x_formula(std::int64_t n, std::int64_t m, std::int64_t k, double mu) {
  require_setup(n, m, k, mu, "expected_x_formula");
  if (n <= 60) {
    return to_double(exact_binomial(n, k)) * std::pow(w1_counts(n, k, mu), static_cast<double>(m));
  }
  return std::exp(log_expected_x(n, m, k, mu));
}

double log_expected_x2(std::int64_t n, std::int64_t m, std::int64_t k, double mu) {
  require_setup(n, m, k, mu, "log_expected_x2");
  std::vector<double> logs;
  for (std::int64_t z = z_min(n, k); z <= k; ++z) {
    logs.push_back(log_multinomial(n, k, z) + scaled_log(m, w2_counts(n, k, z, mu)));
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  if (top == kNegInf) return kNegInf;
  CompensatedSum sum;
  for (double t : logs) sum.add(std::exp(t - top));
  return top + std::log(sum.value());
}

double expected_x2_formula(std::int64_t n, std::int64_t m, std::int64_t k, double mu) {
  require_setup(n, m, k, mu, "expected_x2_formula");
  if (n <= 30) {
    CompensatedSum sum;
    const unsigned __int128 outer = exact_binomial(n, k);
    for (std::int64_t z = z_min(n, k); z <= k; ++z) {
      const unsigned __int128 count = outer * exact_binomial(k, z) * exact_binomial(n - k, k - z);
      sum.add(to_double(count) * std::pow(w2_counts(n, k, z, mu), static_cast<double>(m)));
    }
    return sum.value();
  }
  return std::exp(log_expected_x2(n, m, k, mu));
}

BruteMoments brute_moments(std::int64_t n, std::int64_t m, std::int64_t k, double mu, double budget) {
  require_setup(n, m, k, mu, "brute_moments");
  if (n > 63) throw SizeError("brute_moments: n must be at most 63");
  const double sequences = std::pow(static_cast<double>(n), 2.0 * static_cast<double>(m));
  const double work = sequences * to_double(exact_binomial(n, k));
  if (work > budget) {
    throw SizeError("brute_moments: work " + std::to_string(work) + " exceeds budget " + std::to_string(budget));
  }

  // Enumerate k-subsets once, as vertex sets.
  std::vector<VertexSet> subsets;
  {
    const std::uint64_t limit = std::uint64_t{1} << n;
    if (k == 0) {
      subsets.emplace_back(static_cast<std::size_t>(n));
    } else {
      std::uint64_t s = (std::uint64_t{1} << k) - 1;
      while (s < limit) {
        subsets.push_back(VertexSet::from_mask(static_cast<std::size_t>(n), s));
        const std::uint64_t low = s & (~s + 1);
        const std::uint64_t ripple = s + low;
        s = (((ripple ^ s) >> 2) / low) | ripple;
      }
    }
  }

  const auto digits = static_cast<std::size_t>(2 * m);
  std::vector<std::uint32_t> seq(digits, 0);
  CompensatedSum sum_x;
  CompensatedSum sum_x2;
  std::uint64_t graphs = 0;
  while (true) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (std::size_t e = 0; e < static_cast<std::size_t>(m); ++e) edges.push_back({seq[2 * e], seq[2 * e + 1]});
    const MultiGraph g(static_cast<std::size_t>(n), std::move(edges));
    CompensatedSum x;
    for (const VertexSet& s : subsets) x.add(weight(g, s, mu));
    const double xv = x.value();
    sum_x.add(xv);
    sum_x2.add(xv * xv);
    ++graphs;

    // Next sequence in base n.
    std::size_t d = 0;
    while (d < digits && ++seq[d] == static_cast<std::uint32_t>(n)) seq[d++] = 0;
    if (d == digits) break;
  }
  const auto total = static_cast<double>(graphs);
  return {sum_x.value() / total, sum_x2.value() / total, graphs};
}

McMoments mc_moments(std::int64_t n, std::int64_t m, std::int64_t k, double mu, std::uint64_t trials,
                     std::uint64_t seed, double budget) {
  require_setup(n, m, k, mu, "mc_moments");
  if (trials == 0) throw DomainError("mc_moments: need at least one trial");
  if (n > 63) throw SizeError("mc_moments: n must be at most 63");
  const double work = to_double(exact_binomial(n, k));
  if (work > budget) {
    throw SizeError("mc_moments: per-graph work " + std::to_string(work) + " exceeds budget " +
                    std::to_string(budget));
  }

  // Welford accumulators for X and X^2.
  double mean_x = 0.0, m2_x = 0.0, mean_x2 = 0.0, m2_x2 = 0.0;
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(m));
  std::vector<std::uint8_t> loops(static_cast<std::size_t>(m));
  for (std::uint64_t t = 0; t < trials; ++t) {
    const MultiGraph g = sample(static_cast<std::size_t>(n), static_cast<std::size_t>(m), seed + t);
    for (std::size_t e = 0; e < g.m(); ++e) {
      const Edge& edge = g.edges()[e];
      masks[e] = (std::uint64_t{1} << edge.u) | (std::uint64_t{1} << edge.v);
      loops[e] = edge.u == edge.v ? 1 : 0;
    }
    const double x = total_weight(n, k, masks, loops, mu);
    const double x2 = x * x;
    const auto count = static_cast<double>(t + 1);
    const double dx = x - mean_x;
    mean_x += dx / count;
    m2_x += dx * (x - mean_x);
    const double dx2 = x2 - mean_x2;
    mean_x2 += dx2 / count;
    m2_x2 += dx2 * (x2 - mean_x2);
  }

  McMoments out;
  out.trials = trials;
  out.e_x = mean_x;
  out.e_x2 = mean_x2;
  out.se_defined = trials > 1;
  if (out.se_defined) {
    const auto t = static_cast<double>(trials);
    out.e_x_se = std::sqrt(m2_x / (t - 1.0) / t);
    out.e_x2_se = std::sqrt(m2_x2 / (t - 1.0) / t);
  } else {
    out.e_x_se = std::numeric_limits<double>::quiet_NaN();
    out.e_x2_se = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

RatioProfile ratio_profile(std::int64_t n, std::int64_t m, std::int64_t k, double mu) {
  require_setup(n, m, k, mu, "ratio_profile");
  const std::int64_t lo = z_min(n, k);
  const auto rows = static_cast<Eigen::Index>(k - lo + 1);
  RatioProfile p;
  p.z.resize(rows);
  p.log_contribution.resize(rows);
  const double log_first = log_expected_x(n, m, k, mu);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::int64_t z = lo + i;
    p.z(i) = static_cast<int>(z);
    p.log_contribution(i) = log_multinomial(n, k, z) + scaled_log(m, w2_counts(n, k, z, mu)) - 2.0 * log_first;
  }
  Eigen::Index best = 0;
  const double top = p.log_contribution.maxCoeff(&best);
  p.argmax_z = p.z(best);
  p.expected_argmax_z = static_cast<int>(std::llround(static_cast<double>(k) * static_cast<double>(k) / static_cast<double>(n)));
  CompensatedSum sum;
  for (Eigen::Index i = 0; i < rows; ++i) sum.add(std::exp(p.log_contribution(i) - top));
  p.log_ratio = top + std::log(sum.value());
  return p;
}

MomentReport moment_report(std::int64_t n, std::int64_t m, std::int64_t k, double mu, const MomentOptions& opts) {
  MomentReport r;
  r.n = n;
  r.m = m;
  r.k = k;
  r.mu = mu;
  r.e_x_formula = expected_x_formula(n, m, k, mu);
  r.e_x2_formula = expected_x2_formula(n, m, k, mu);
  r.log_e_x_formula = log_expected_x(n, m, k, mu);
  r.log_e_x2_formula = log_expected_x2(n, m, k, mu);
  if (opts.brute) {
    r.brute = brute_moments(n, m, k, mu, opts.budget);
    r.max_abs_discrepancy = std::max({r.max_abs_discrepancy, std::abs(r.brute->e_x - r.e_x_formula),
                                      std::abs(r.brute->e_x2 - r.e_x2_formula)});
  }
  if (opts.mc_trials > 0) {
    r.mc = mc_moments(n, m, k, mu, opts.mc_trials, opts.seed, opts.budget);
    r.max_abs_discrepancy = std::max({r.max_abs_discrepancy, std::abs(r.mc->e_x - r.e_x_formula),
                                      std::abs(r.mc->e_x2 - r.e_x2_formula)});
  }
  return r;
}

}  // namespace wsm
