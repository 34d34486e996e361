#include "wsm/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wsm/analytic.hpp"
#include "wsm/errors.hpp"
#include "wsm/roots.hpp"

namespace wsm {

double lambert_w(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("lambert_w: argument must be positive and finite");
  double w = std::log1p(z);
  for (int i = 0; i < 100; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
  }
  return w;
}

CUpper c_upper(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("c_upper: alpha must lie in (0, 1)");
  // Numerator and denominator are both negative.
  const double exact = -2.0 * entropy(alpha) / std::log1p(-alpha * alpha);
  const double simple = 2.0 * (-std::log(alpha) + 1.0) / alpha;
  return {exact, simple};
}

double c_lower(double alpha, double x, bool allow_below_threshold) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("c_lower: alpha must lie in (0, 1/2)");
  if (!(x > kMinX) && !allow_below_threshold) {
    throw ParameterError("c_lower: x must exceed 4/e ~ 1.4715 (pass the override to explore below it)");
  }
  return 2.0 * (-std::log(alpha) + 1.0) / alpha - x / std::sqrt(alpha);
}

AlphaBounds alpha_bounds(double c, double y, bool allow_below_threshold) {
  if (!(c >= 2.0) || !std::isfinite(c)) throw DomainError("alpha_bounds: c must be at least 2");
  if (!(y > kMinY) && !allow_below_threshold) {
    throw ParameterError("alpha_bounds: y must exceed 4 sqrt(2)/e ~ 2.0810 (pass the override to explore below it)");
  }
  AlphaBounds out{};
  out.w_value = lambert_w(std::numbers::e * c / 2.0);
  out.upper = 2.0 / c * out.w_value;
  out.lower = out.upper - y * std::sqrt(std::log(c)) / std::pow(c, 1.5);
  const double back = 2.0 * (-std::log(out.upper) + 1.0) / out.upper;
  out.residual = std::abs(back - c) / c;
  if (out.residual > 1e-10) {
    throw NumericError("alpha_bounds: inversion residual " + std::to_string(out.residual) + " exceeds 1e-10");
  }
  return out;
}

WExpansion w_expansion(double c, int order) {
  if (!(c > std::numbers::e) || !std::isfinite(c)) throw DomainError("w_expansion: c must exceed e");
  if (order < 1 || order > kExpansionTerms) throw DomainError("w_expansion: order must lie in [1, 9]");
  const double l = std::log(c);
  const double ll = std::log(l);
  const double ln2 = std::numbers::ln2;
  const double all[kExpansionTerms] = {
      l,
      -ll,
      1.0,
      -ln2,
      ll / l,
      -(1.0 - ln2) / l,
      0.5 * ll * ll / (l * l),
      -(2.0 - ln2) * ll / (l * l),
      (3.0 + ln2 * ln2 - 4.0 * ln2) / (2.0 * l * l),
  };
  WExpansion out{0.0, {}};
  out.terms.assign(all, all + order);
  for (double t : out.terms) out.value += t;
  return out;
}

double first_moment_exponent(double alpha, double c) {
  return entropy(alpha) + c / 2.0 * std::log1p(-alpha * alpha);
}

double first_moment_alpha(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("first_moment_alpha: c must be positive");
  auto f = [c](double a) { return first_moment_exponent(a, c); };
  auto df = [c](double a) { return std::log1p(-a) - std::log(a) - c * a / (1.0 - a * a); };
  const double lo = 1e-12;
  const double hi = 1.0 - 1e-12;
  if (!(f(lo) > 0.0) || !(f(hi) < 0.0)) throw NumericError("first_moment_alpha: no sign change in (0, 1)");
  return safeguarded_root(f, df, lo, hi, 1e-3, 1e-15).root;
}

BoundsReport bounds_for_alpha(double alpha, double x, bool force) {
  BoundsReport r;
  r.alpha = alpha;
  r.x = x;
  const CUpper up = c_upper(alpha);
  r.c_upper_exact = up.exact;
  r.c_upper_simple = up.simple;
  r.below_threshold = !(x > kMinX);
  r.c_lower = c_lower(alpha, x, force);
  return r;
}

BoundsReport bounds_for_degree(double c, double y, bool force) {
  BoundsReport r;
  r.c = c;
  r.y = y;
  r.below_threshold = !(y > kMinY);
  const AlphaBounds ab = alpha_bounds(c, y, force);
  r.alpha_upper = ab.upper;
  r.alpha_lower = ab.lower;
  r.w_value = ab.w_value;
  r.alpha_first_moment = first_moment_alpha(c);
  if (c > std::numbers::e) {
    const WExpansion ex = w_expansion(c);
    r.w_expansion_value = ex.value;
    r.expansion_terms = ex.terms;
  }
  return r;
}

}  // namespace wsm
