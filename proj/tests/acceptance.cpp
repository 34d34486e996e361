// Acceptance suite: one PASS/FAIL line per criterion, each with a runtime limit.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "wsm/analytic.hpp"
#include "wsm/bounds.hpp"
#include "wsm/graph.hpp"
#include "wsm/moments.hpp"
#include "wsm/simulate.hpp"
#include "wsm/solvers.hpp"
#include "wsm/stationary.hpp"

namespace {

constexpr double kE = std::numbers::e;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const std::vector<double> kLemmaGrid = {1e-4, 1e-5, 1e-6, 1e-7, 1e-8};

// |r - 1| shrinks from the first to the last grid point, with at most one
// step going the wrong way.
bool trends_to_one(const std::vector<double>& ratios) {
  int wrong = 0;
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (std::abs(ratios[i] - 1) > std::abs(ratios[i - 1] - 1)) ++wrong;
  }
  return wrong <= 1 && std::abs(ratios.back() - 1) < std::abs(ratios.front() - 1);
}

Outcome moment_identity() {
  Outcome o;
  double worst = 0;
  for (std::int64_t n = 1; n <= 5; ++n) {
    for (std::int64_t m = 0; m <= 2; ++m) {
      for (std::int64_t k = 0; k <= n; ++k) {
        for (double mu : {0.0, 0.5, 1.0}) {
          const auto b = wsm::brute_moments(n, m, k, mu);
          worst = std::max(worst, std::abs(b.e_x - wsm::expected_x_formula(n, m, k, mu)));
          worst = std::max(worst, std::abs(b.e_x2 - wsm::expected_x2_formula(n, m, k, mu)));
        }
      }
    }
  }
  o.require(worst <= 1e-13, "max discrepancy " + fmt("%.3g", worst));
  o.detail = o.ok ? "max discrepancy " + fmt("%.3g", worst) : o.detail;
  return o;
}

Outcome w2_identity() {
  Outcome o;
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> ua(1e-6, 0.5);
  std::uniform_real_distribution<double> um(0.0, 1.0);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const double a = ua(gen);
    const double mu = um(gen);
    const double lhs = wsm::w2(a, a * a, mu);
    const double rhs = wsm::w1(a, mu) * wsm::w1(a, mu);
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  o.require(worst <= 1e-13, "relative error " + fmt("%.3g", worst));
  if (o.ok) o.detail = "max relative error " + fmt("%.3g", worst);
  return o;
}

Outcome tuning_condition() {
  Outcome o;
  double worst = 0;
  for (double a : {0.01, 0.1, 0.3}) {
    for (double c : {1.0, 10.0, 100.0}) {
      const auto p = wsm::Params::tuned(a, c);
      const double h = 1e-7 * a;
      const double d = (wsm::phi(p, a * a + h) - wsm::phi(p, a * a - h)) / (2 * h);
      worst = std::max(worst, std::abs(d));
    }
  }
  o.require(worst <= 1e-6, "|phi'(alpha^2)| " + fmt("%.3g", worst));
  if (o.ok) o.detail = "max |phi'(alpha^2)| " + fmt("%.3g", worst);
  return o;
}

Outcome lemma_scaling(wsm::LemmaMode mode, double lo, double hi) {
  Outcome o;
  std::vector<double> ratios;
  for (const auto& row : wsm::lemma_diagnostics(kLemmaGrid, mode)) {
    const double r = mode == wsm::LemmaMode::Lemma2 ? row.report.lemma2_ratio : row.report.lemma3_ratio;
    ratios.push_back(r);
    o.require(r >= lo && r <= hi, "ratio " + fmt("%.6g", r) + " at alpha " + fmt("%.0e", row.alpha));
  }
  o.require(trends_to_one(ratios), "ratios do not trend to 1");
  if (o.ok) {
    o.detail = "ratios";
    for (double r : ratios) o.detail += " " + fmt("%.5f", r);
  }
  return o;
}

Outcome lemma4_sign() {
  Outcome o;
  const double a = 1e-6;
  const auto p = wsm::Params::tuned(a, wsm::lemma_degree(wsm::LemmaMode::Lemma4, a, 1.6));
  const auto rep = wsm::stationary_report(p);
  const double predicted = wsm::lemma4_prediction(a, 1.6);
  o.require(rep.exists_second_max, "no second maximum at x = 1.6");
  o.require(rep.psi_at_zeta3 < 0, "psi(zeta3) = " + fmt("%.4g", rep.psi_at_zeta3) + " at x = 1.6");
  const double factor = std::abs(rep.psi_at_zeta3) / std::abs(predicted);
  o.require(factor >= 1.0 / 3 && factor <= 3, "|psi(zeta3)| off the prediction by " + fmt("%.3g", factor));
  const auto cert = wsm::certify_global_max(p);
  o.require(cert.verdict == wsm::Verdict::MaxAtAlphaSquared, "certify: " + wsm::to_string(cert.verdict));

  const auto q = wsm::Params::tuned(a, wsm::lemma_degree(wsm::LemmaMode::Lemma4, a, 1.4));
  const auto low = wsm::stationary_report(q);
  o.require(low.exists_second_max && low.psi_at_zeta3 > 0,
            "psi(zeta3) = " + fmt("%.4g", low.psi_at_zeta3) + " at x = 1.4");
  if (o.ok) {
    o.detail = "psi(zeta3) " + fmt("%.4g", rep.psi_at_zeta3) + " vs " + fmt("%.4g", predicted) +
               ", x=1.4 gives " + fmt("%.4g", low.psi_at_zeta3);
  }
  return o;
}

Outcome lambert_round_trips() {
  Outcome o;
  double worst = 0;
  for (int i = 0; i <= 1500; ++i) {
    const double z = std::pow(10.0, -3.0 + 15.0 * i / 1500.0);
    const double w = wsm::lambert_w(z);
    worst = std::max(worst, std::abs(w * std::exp(w) - z) / z);
  }
  o.require(worst <= 1e-13, "W residual " + fmt("%.3g", worst));
  for (int e = 1; e <= 6; ++e) {
    const double c = std::pow(10.0, e);
    const double a = wsm::alpha_bounds(c).upper;
    const double back = 2 * (std::log(1 / a) + 1) / a;
    o.require(std::abs(back - c) <= 1e-10 * c, "alpha_upper round trip at c = " + fmt("%g", c));
  }
  o.require(std::abs(wsm::lambert_w(kE) - 1) <= 1e-14, "W(e) != 1");
  o.require(std::abs(wsm::lambert_w(2 * kE * kE) - 2) <= 1e-14, "W(2e^2) != 2");
  if (o.ok) o.detail = "max W residual " + fmt("%.3g", worst);
  return o;
}

Outcome expansion_fidelity() {
  Outcome o;
  double previous = INFINITY;
  std::string errs;
  for (double c : {1e6, 1e9, 1e12}) {
    const double err = std::abs(wsm::w_expansion(c, 9).value - wsm::lambert_w(kE * c / 2));
    const double bound = 5 * std::pow(std::log(std::log(c)) / std::log(c), 3);
    o.require(err <= bound, "error " + fmt("%.3g", err) + " above bound at c = " + fmt("%g", c));
    o.require(err < previous, "error not decreasing at c = " + fmt("%g", c));
    previous = err;
    errs += " " + fmt("%.3g", err);
  }
  if (o.ok) o.detail = "errors" + errs;
  return o;
}

Outcome overlap_concentration() {
  Outcome o;
  const double a = 0.3;
  const std::int64_t n = 200;
  const auto m = static_cast<std::int64_t>(std::llround(1.0 * n / 2));
  const auto profile = wsm::ratio_profile(n, m, std::llround(a * n), wsm::mu_star(a));
  const long target = std::lround(a * a * n);
  o.require(std::abs(profile.argmax_z - target) <= 1,
            "argmax z = " + std::to_string(profile.argmax_z) + ", expected " + std::to_string(target));
  if (o.ok) o.detail = "argmax z = " + std::to_string(profile.argmax_z);
  return o;
}

std::size_t exhaustive_mis(const wsm::MultiGraph& g) {
  std::vector<std::uint64_t> adj(g.n(), 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= std::uint64_t{1} << e.v;
    adj[e.v] |= std::uint64_t{1} << e.u;
  }
  int best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.n()); ++s) {
    bool ok = true;
    for (std::uint64_t rest = s; rest != 0 && ok; rest &= rest - 1) ok = (adj[std::countr_zero(rest)] & s) == 0;
    if (ok) best = std::max(best, std::popcount(s));
  }
  return static_cast<std::size_t>(best);
}

std::string run_simulate_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"wsmis"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  if (wsm::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err) != 0) return "error: " + err.str();
  return out.str();
}

Outcome solvers() {
  Outcome o;
  std::mt19937_64 gen(10);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + gen() % 16;
    const std::size_t m = gen() % (2 * n + 1);
    const auto g = wsm::sample(n, m, gen());
    const auto s = wsm::exact_mis(g);
    o.require(wsm::is_independent(g, s) && s.size() == exhaustive_mis(g),
              "exact_mis disagrees on graph " + std::to_string(i));
  }

  std::size_t runs = 0;
  for (double c : {1.0, 2.0, 4.0}) {
    for (auto algo : {wsm::Algorithm::Exact, wsm::Algorithm::KarpSipser}) {
      const std::uint64_t seed = 42;
      const auto results = wsm::run_trials(40, c, 100, algo, seed);
      for (std::size_t t = 0; t < results.size(); ++t) {
        const auto g = wsm::sample(40, wsm::edge_count(40, c), seed + t);
        const auto s = algo == wsm::Algorithm::Exact ? wsm::exact_mis(g) : wsm::karp_sipser(g, wsm::solver_seed(seed + t));
        o.require(s.size() == results[t].set_size, "trial set size does not match a rerun");
        o.require(wsm::is_independent(g, s) && wsm::is_maximal(g, s), "set not independent and maximal");
        o.require(results[t].independent && results[t].maximal, "trial flagged not independent or maximal");
        ++runs;
      }
    }
  }

  for (const char* algo : {"exact", "karp-sipser"}) {
    const std::vector<std::string> args = {"simulate", "--n", "40", "--c", "2", "--trials", "200",
                                           "--algo", algo, "--seed", "42"};
    const std::string first = run_simulate_cli(args);
    o.require(first.rfind("error", 0) != 0, first);
    o.require(first == run_simulate_cli(args), std::string("simulate output differs between runs for ") + algo);
  }
  if (o.ok) o.detail = "500 oracle graphs, " + std::to_string(runs) + " simulate runs";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact moment identity", 10, moment_identity},
      {2, "w2 at alpha^2 equals w1^2", 1, w2_identity},
      {3, "tuning condition", 1, tuning_condition},
      {4, "lemma 2 scaling", 5, [] { return lemma_scaling(wsm::LemmaMode::Lemma2, 0.5, 2.0); }},
      {5, "lemma 3 scaling", 5, [] { return lemma_scaling(wsm::LemmaMode::Lemma3, 0.7, 1.4); }},
      {6, "lemma 4 sign and certification", 5, lemma4_sign},
      {7, "lambert W round trips", 1, lambert_round_trips},
      {8, "expansion fidelity", 1, expansion_fidelity},
      {9, "finite-n overlap concentration", 2, overlap_concentration},
      {10, "combinatorial solvers", 60, solvers},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit_seconds) {
      o.ok = false;
      o.detail = "over the " + fmt("%g", c.limit_seconds) + " s limit";
    }
    if (!o.ok) ++failures;
    std::printf("%s %2d %-32s %7.3fs  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
