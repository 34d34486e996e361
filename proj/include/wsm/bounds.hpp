#pragma once

// First-moment upper bounds and the second-moment lower bounds on the
// independence threshold, in both the c_crit(alpha) and alpha_crit(c) forms.

#include <numbers>
#include <optional>
#include <vector>

namespace wsm {

// 4/e: x must exceed this in the lower bound on c_crit(alpha).
inline constexpr double kMinX = 4.0 / std::numbers::e;
// 4 sqrt(2)/e: y must exceed this in the lower bound on alpha_crit(c).
inline constexpr double kMinY = 4.0 * std::numbers::sqrt2 / std::numbers::e;

inline constexpr double kDefaultX = 1.6;
inline constexpr double kDefaultY = 2.2;

// Positive-branch Lambert W: the w > 0 with w e^w = z, for z > 0.
double lambert_w(double z);

struct CUpper {
  double exact;   // 2 (a ln a + (1-a) ln(1-a)) / ln(1 - a^2)
  double simple;  // 2 (ln(1/a) + 1) / a
};

CUpper c_upper(double alpha);

// 2 (ln(1/a) + 1)/a - x/sqrt(a). Throws ParameterError when x <= 4/e unless
// allow_below_threshold is set.
double c_lower(double alpha, double x = kDefaultX, bool allow_below_threshold = false);

struct AlphaBounds {
  double lower;
  double upper;      // (2/c) W(e c/2)
  double w_value;    // W(e c/2)
  double residual;   // |2 (ln(1/upper) + 1)/upper - c| / c
};

// Throws ParameterError when y <= 4 sqrt(2)/e unless allow_below_threshold is
// set, and NumericError when the inversion residual exceeds 1e-10.
AlphaBounds alpha_bounds(double c, double y = kDefaultY, bool allow_below_threshold = false);

inline constexpr int kExpansionTerms = 9;

struct WExpansion {
  double value;
  std::vector<double> terms;
};

// Partial sum of the large-c expansion of W(e c/2), first `order` terms.
WExpansion w_expansion(double c, int order = kExpansionTerms);

// Root in (0, 1) of h(a) + (c/2) ln(1 - a^2) = 0.
double first_moment_alpha(double c);

// Exponential rate of E[X] for the unweighted count: h(a) + (c/2) ln(1 - a^2).
double first_moment_exponent(double alpha, double c);

struct BoundsReport {
  std::optional<double> alpha;
  std::optional<double> c;
  double x = kDefaultX;
  double y = kDefaultY;
  std::optional<double> c_upper_exact;
  std::optional<double> c_upper_simple;
  std::optional<double> c_lower;
  std::optional<double> alpha_upper;
  std::optional<double> alpha_lower;
  std::optional<double> alpha_first_moment;
  std::optional<double> w_value;
  std::optional<double> w_expansion_value;
  std::vector<double> expansion_terms;
  bool below_threshold = false;
};

BoundsReport bounds_for_alpha(double alpha, double x = kDefaultX, bool force = false);
BoundsReport bounds_for_degree(double c, double y = kDefaultY, bool force = false);

}  // namespace wsm
