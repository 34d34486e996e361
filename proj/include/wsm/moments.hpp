#pragma once

// Exact finite-n moments of the weighted count
//   X = sum over k-sets S of w(S)
// in the multigraph model with n vertices and m edges, together with the
// brute-force and Monte Carlo routes that check them.

#include <cstdint>
#include <optional>

#include <Eigen/Core>

namespace wsm {

inline constexpr double kDefaultWorkBudget = 1e8;

// kDefaultWorkBudget unless the WSMIS_WORK_BUDGET environment variable holds
// a positive number.
double default_work_budget();

double log_binomial(std::int64_t n, std::int64_t k);

// w1 and w2 at alpha = k/n, zeta = z/n, formed from integer counts and one
// final division by n^2.
double w1_counts(std::int64_t n, std::int64_t k, double mu);
double w2_counts(std::int64_t n, std::int64_t k, std::int64_t z, double mu);

// log E[X] = log C(n,k) + m log w1.
double log_expected_x(std::int64_t n, std::int64_t m, std::int64_t k, double mu);
// C(n,k) w1^m; exact binomials for n <= 60, otherwise exp of the log form
// (may overflow to infinity).
double expected_x_formula(std::int64_t n, std::int64_t m, std::int64_t k, double mu);

// log E[X^2] = log sum_z multinomial(n; z, k-z, k-z, n-2k+z) w2^m.
double log_expected_x2(std::int64_t n, std::int64_t m, std::int64_t k, double mu);
// Exact multinomials and compensated summation for n <= 30, otherwise exp of
// the log form.
double expected_x2_formula(std::int64_t n, std::int64_t m, std::int64_t k, double mu);

struct BruteMoments {
  double e_x;
  double e_x2;
  std::uint64_t graphs;
};

// Averages X and X^2 over all n^(2m) equally likely edge sequences, with X
// summed set by set through weight(). Throws SizeError when
// n^(2m) * C(n,k) exceeds `budget`.
BruteMoments brute_moments(std::int64_t n, std::int64_t m, std::int64_t k, double mu,
                           double budget = default_work_budget());

struct McMoments {
  double e_x = 0.0;
  double e_x_se = 0.0;
  double e_x2 = 0.0;
  double e_x2_se = 0.0;
  // False for a single trial; the standard errors are then NaN.
  bool se_defined = false;
  std::uint64_t trials = 0;
};

// Monte Carlo over sampled graphs (trial i uses seed + i), X computed exactly
// per graph. Throws SizeError when C(n,k) exceeds `budget`.
McMoments mc_moments(std::int64_t n, std::int64_t m, std::int64_t k, double mu, std::uint64_t trials,
                     std::uint64_t seed, double budget = default_work_budget());

struct RatioProfile {
  Eigen::ArrayXi z;
  // log of multinomial(z) w2^m / (C(n,k) w1^m)^2
  Eigen::ArrayXd log_contribution;
  int argmax_z = 0;
  int expected_argmax_z = 0;  // round(k^2 / n)
  double log_ratio = 0.0;     // log(E[X^2] / E[X]^2)
};

RatioProfile ratio_profile(std::int64_t n, std::int64_t m, std::int64_t k, double mu);

struct MomentOptions {
  bool brute = false;
  std::uint64_t mc_trials = 0;
  std::uint64_t seed = 0;
  double budget = default_work_budget();
};

struct MomentReport {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t k = 0;
  double mu = 0.0;
  double e_x_formula = 0.0;
  double e_x2_formula = 0.0;
  double log_e_x_formula = 0.0;
  double log_e_x2_formula = 0.0;
  std::optional<BruteMoments> brute;
  std::optional<McMoments> mc;
  // Largest |formula - other| over the brute and Monte Carlo routes present.
  double max_abs_discrepancy = 0.0;
};

MomentReport moment_report(std::int64_t n, std::int64_t m, std::int64_t k, double mu,
                           const MomentOptions& opts = {});

}  // namespace wsm
