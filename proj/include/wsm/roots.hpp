#pragma once

#include <cmath>
#include <limits>

#include "wsm/errors.hpp"

namespace wsm {

template <typename Scalar>
struct RootResult {
  Scalar root;
  // Final bracket; f(lo) and f(hi) have opposite signs (or one is zero).
  Scalar lo;
  Scalar hi;
  int iterations;
};

// Bisection down to `coarse_width`, then Newton steps that fall back to
// bisection whenever they leave the bracket or fail to halve |f|. Stops when the
// step or bracket is below rel_tol * |x|.
template <typename Scalar, typename F, typename DF>
RootResult<Scalar> safeguarded_root(F f, DF df, Scalar lo, Scalar hi, Scalar coarse_width,
                                    Scalar rel_tol, int max_iter = 400) {
  using std::abs;
  Scalar f_lo = f(lo);
  Scalar f_hi = f(hi);
  if (f_lo == Scalar(0)) return {lo, lo, lo, 0};
  if (f_hi == Scalar(0)) return {hi, hi, hi, 0};
  if ((f_lo < Scalar(0)) == (f_hi < Scalar(0))) {
    throw NumericError("safeguarded_root: interval does not bracket a sign change");
  }
  const bool rising = f_lo < Scalar(0);
  auto shrink = [&](Scalar x, Scalar fx) {
    if ((fx < Scalar(0)) == rising) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
  };

  int it = 0;
  while (hi - lo > coarse_width && it < max_iter) {
    const Scalar mid = lo + (hi - lo) / Scalar(2);
    if (mid <= lo || mid >= hi) break;
    const Scalar fm = f(mid);
    ++it;
    if (fm == Scalar(0)) return {mid, mid, mid, it};
    shrink(mid, fm);
  }

  Scalar x = lo + (hi - lo) / Scalar(2);
  Scalar prev_abs = std::numeric_limits<Scalar>::infinity();
  while (it < max_iter) {
    const Scalar fx = f(x);
    ++it;
    if (fx == Scalar(0)) return {x, x, x, it};
    shrink(x, fx);
    const Scalar tol = rel_tol * abs(x);
    if (hi - lo <= tol) break;

    const Scalar slope = df(x);
    Scalar next = x - fx / slope;
    const bool outside = !(next > lo && next < hi) || !std::isfinite(static_cast<double>(next));
    const bool slow = abs(fx) > prev_abs / Scalar(2);
    if (outside || slow) {
      next = lo + (hi - lo) / Scalar(2);
    }
    prev_abs = abs(fx);
    if (next <= lo || next >= hi) break;  // bracket is down to adjacent floats
    const Scalar step = abs(next - x);
    x = next;
    if (step <= tol) {
      // Tighten the bracket around the converged point.
      const Scalar t = tol > Scalar(0) ? tol : std::numeric_limits<Scalar>::min();
      const Scalar a = x - t > lo ? x - t : lo;
      const Scalar b = x + t < hi ? x + t : hi;
      const Scalar fa = f(a);
      const Scalar fb = f(b);
      it += 2;
      if ((fa < Scalar(0)) != (fb < Scalar(0))) {
        lo = a;
        hi = b;
      }
      break;
    }
  }
  return {x, lo, hi, it};
}

}  // namespace wsm
