#pragma once

// Closed-form moment functions of the weighted independent-set count.
//
// Notation: alpha is the set density |S|/n, c the average degree, mu the
// per-edge weight and zeta the overlap |S n T|/n of a pair of sets. All
// functions are header templates on the scalar type so that long double can
// be used as a higher-precision reference for the double instantiation.

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Core>

#include "wsm/errors.hpp"

namespace wsm {

template <typename Scalar>
Scalar xlogx(Scalar x) {
  using std::log;
  return x == Scalar(0) ? Scalar(0) : x * log(x);
}

// Binary entropy of the pair (p, q), p + q = 1. Both sides are passed so the
// caller can supply whichever one it knows without rounding; the log of the
// larger side is taken as log1p of the smaller one.
template <typename Scalar>
Scalar entropy_pair(Scalar p, Scalar q) {
  using std::log1p;
  const Scalar small = p < q ? p : q;
  const Scalar large = p < q ? q : p;
  return -xlogx(small) - large * log1p(-small);
}

// h(a) = -a ln a - (1-a) ln(1-a), with 0 ln 0 = 0.
template <typename Scalar>
Scalar entropy(Scalar a) {
  if (!(a >= Scalar(0) && a <= Scalar(1))) {
    throw DomainError("entropy: argument must lie in [0, 1]");
  }
  // 1 - a is exact for a >= 1/2, and only a multiplier otherwise.
  return entropy_pair(a, Scalar(1) - a);
}

// The edge weight that makes zeta = alpha^2 a stationary point of phi.
template <typename Scalar>
Scalar mu_star(Scalar alpha) {
  if (!(alpha > Scalar(0) && alpha < Scalar(0.5))) {
    throw DomainError("mu_star: alpha must lie in (0, 1/2)");
  }
  return (Scalar(1) - Scalar(2) * alpha) / (Scalar(1) - alpha);
}

template <typename Scalar>
class ModelParams {
 public:
  ModelParams(Scalar alpha, Scalar c, Scalar mu) : alpha_(alpha), c_(c), mu_(mu) {
    if (!(alpha > Scalar(0) && alpha < Scalar(0.5))) {
      throw DomainError("ModelParams: alpha must lie in (0, 1/2)");
    }
    if (!(c > Scalar(0)) || !std::isfinite(static_cast<double>(c))) {
      throw DomainError("ModelParams: c must be positive and finite");
    }
    if (!(mu >= Scalar(0) && mu <= Scalar(1))) {
      throw DomainError("ModelParams: mu must lie in [0, 1]");
    }
  }

  // mu fixed to mu_star(alpha).
  static ModelParams tuned(Scalar alpha, Scalar c) {
    if (!(alpha > Scalar(0) && alpha < Scalar(0.5))) {
      throw DomainError("ModelParams: alpha must lie in (0, 1/2)");
    }
    return ModelParams(alpha, c, mu_star(alpha));
  }

  Scalar alpha() const { return alpha_; }
  Scalar c() const { return c_; }
  Scalar mu() const { return mu_; }
  Scalar alpha_squared() const { return alpha_ * alpha_; }

  bool is_tuned() const {
    using std::abs;
    const Scalar target = mu_star(alpha_);
    return abs(mu_ - target) <= Scalar(8) * std::numeric_limits<Scalar>::epsilon() * target;
  }

 private:
  Scalar alpha_;
  Scalar c_;
  Scalar mu_;
};

namespace detail {

template <typename Scalar>
void require_overlap(Scalar alpha, Scalar zeta, const char* who) {
  if (!(zeta >= Scalar(0) && zeta <= alpha)) {
    throw DomainError(std::string(who) + ": zeta must lie in [0, alpha]");
  }
}

template <typename Scalar>
void require_open_overlap(Scalar alpha, Scalar zeta, const char* who) {
  if (!(zeta > Scalar(0) && zeta < alpha)) {
    throw DomainError(std::string(who) + ": zeta must lie in the open interval (0, alpha)");
  }
}

template <typename Scalar>
void require_tuned(const ModelParams<Scalar>& p, const char* who) {
  if (!p.is_tuned()) {
    throw DomainError(std::string(who) + ": requires mu = mu_star(alpha)");
  }
}

template <typename Scalar>
Scalar one_minus_alpha_pow4(Scalar alpha) {
  const Scalar s = (Scalar(1) - alpha) * (Scalar(1) - alpha);
  return s * s;
}

}  // namespace detail

// Probability-weighted edge factor for one set: E[w_uv(S)].
template <typename Scalar>
Scalar w1(Scalar alpha, Scalar mu) {
  if (!(alpha >= Scalar(0) && alpha <= Scalar(1))) throw DomainError("w1: alpha must lie in [0, 1]");
  if (!(mu >= Scalar(0) && mu <= Scalar(1))) throw DomainError("w1: mu must lie in [0, 1]");
  const Scalar out = Scalar(1) - alpha;
  return out * out * mu + Scalar(2) * alpha * out;
}

template <typename Scalar>
Scalar w1(const ModelParams<Scalar>& p) {
  return w1(p.alpha(), p.mu());
}

// E[w_uv(S) w_uv(T)] for two sets of density alpha with overlap zeta.
template <typename Scalar>
Scalar w2(Scalar alpha, Scalar zeta, Scalar mu) {
  if (!(alpha >= Scalar(0) && alpha <= Scalar(1))) throw DomainError("w2: alpha must lie in [0, 1]");
  if (!(mu >= Scalar(0) && mu <= Scalar(1))) throw DomainError("w2: mu must lie in [0, 1]");
  detail::require_overlap(alpha, zeta, "w2");
  const Scalar gap = alpha - zeta;
  const Scalar free = Scalar(1) - alpha - gap;
  if (free < Scalar(0)) throw DomainError("w2: zeta below 2 alpha - 1");
  return free * free * mu * mu + Scalar(4) * gap * free * mu + Scalar(2) * gap * gap +
         Scalar(2) * zeta * free;
}

template <typename Scalar>
Scalar w2(const ModelParams<Scalar>& p, Scalar zeta) {
  return w2(p.alpha(), zeta, p.mu());
}

// Closed forms at mu = mu_star: w1 = 1 - alpha and
// w2 = (1-alpha)^2 + (zeta - alpha^2)^2 / (1-alpha)^2.
template <typename Scalar>
Scalar w1_tuned(Scalar alpha) {
  return Scalar(1) - alpha;
}

template <typename Scalar>
Scalar w2_tuned(Scalar alpha, Scalar zeta) {
  detail::require_overlap(alpha, zeta, "w2_tuned");
  const Scalar s = (Scalar(1) - alpha) * (Scalar(1) - alpha);
  const Scalar d = zeta - alpha * alpha;
  return s + d * d / s;
}

// alpha h(zeta/alpha) + (1-alpha) h((alpha-zeta)/(1-alpha)) - h(alpha), kept in
// grouped form. alpha - zeta is exact for zeta in [alpha/2, alpha].
template <typename Scalar>
Scalar overlap_entropy(Scalar alpha, Scalar zeta) {
  detail::require_overlap(alpha, zeta, "overlap_entropy");
  const Scalar gap = alpha - zeta;
  const Scalar rest = Scalar(1) - alpha;
  const Scalar free = rest - gap;
  return alpha * entropy_pair(zeta / alpha, gap / alpha) +
         rest * entropy_pair(gap / rest, free / rest) - entropy_pair(alpha, rest);
}

template <typename Scalar>
Scalar f1(const ModelParams<Scalar>& p) {
  using std::log;
  return entropy(p.alpha()) + p.c() / Scalar(2) * log(w1(p));
}

template <typename Scalar>
Scalar f2(const ModelParams<Scalar>& p, Scalar zeta) {
  using std::log;
  const Scalar h = entropy(p.alpha());
  return Scalar(2) * h + overlap_entropy(p.alpha(), zeta) + p.c() / Scalar(2) * log(w2(p, zeta));
}

// phi for arbitrary mu, through the ratio w2 / w1^2.
template <typename Scalar>
Scalar phi_general(const ModelParams<Scalar>& p, Scalar zeta) {
  using std::log;
  const Scalar a = w1(p);
  return overlap_entropy(p.alpha(), zeta) + p.c() / Scalar(2) * log(w2(p, zeta) / (a * a));
}

// phi at mu = mu_star. Exactly zero at zeta = alpha^2.
template <typename Scalar>
Scalar phi(const ModelParams<Scalar>& p, Scalar zeta) {
  using std::log1p;
  detail::require_tuned(p, "phi");
  detail::require_overlap(p.alpha(), zeta, "phi");
  if (zeta == p.alpha_squared()) return Scalar(0);
  const Scalar d = zeta - p.alpha_squared();
  return overlap_entropy(p.alpha(), zeta) +
         p.c() / Scalar(2) * log1p(d * d / detail::one_minus_alpha_pow4(p.alpha()));
}

// Upper envelope of phi from ln(1+x) <= x. Exactly zero at zeta = alpha^2.
template <typename Scalar>
Scalar psi(const ModelParams<Scalar>& p, Scalar zeta) {
  detail::require_tuned(p, "psi");
  detail::require_overlap(p.alpha(), zeta, "psi");
  if (zeta == p.alpha_squared()) return Scalar(0);
  const Scalar d = zeta - p.alpha_squared();
  return overlap_entropy(p.alpha(), zeta) +
         p.c() / Scalar(2) * (d * d / detail::one_minus_alpha_pow4(p.alpha()));
}

template <typename Scalar>
Scalar psi_d1(const ModelParams<Scalar>& p, Scalar zeta) {
  using std::log;
  detail::require_tuned(p, "psi_d1");
  detail::require_open_overlap(p.alpha(), zeta, "psi_d1");
  const Scalar gap = p.alpha() - zeta;
  const Scalar free = Scalar(1) - p.alpha() - gap;
  return p.c() * (zeta - p.alpha_squared()) / detail::one_minus_alpha_pow4(p.alpha()) +
         Scalar(2) * log(gap) - log(zeta) - log(free);
}

template <typename Scalar>
Scalar psi_d2(const ModelParams<Scalar>& p, Scalar zeta) {
  detail::require_tuned(p, "psi_d2");
  detail::require_open_overlap(p.alpha(), zeta, "psi_d2");
  const Scalar gap = p.alpha() - zeta;
  const Scalar free = Scalar(1) - p.alpha() - gap;
  return p.c() / detail::one_minus_alpha_pow4(p.alpha()) - Scalar(2) / gap - Scalar(1) / zeta -
         Scalar(1) / free;
}

// psi''' and psi''''. The latter is negative on (0, alpha), so psi'' is
// strictly concave there and has at most two roots.
template <typename Scalar>
Scalar psi_d3(const ModelParams<Scalar>& p, Scalar zeta) {
  detail::require_open_overlap(p.alpha(), zeta, "psi_d3");
  const Scalar gap = p.alpha() - zeta;
  const Scalar free = Scalar(1) - p.alpha() - gap;
  return Scalar(1) / (zeta * zeta) - Scalar(2) / (gap * gap) + Scalar(1) / (free * free);
}

template <typename Scalar>
Scalar psi_d4(const ModelParams<Scalar>& p, Scalar zeta) {
  detail::require_open_overlap(p.alpha(), zeta, "psi_d4");
  const Scalar gap = p.alpha() - zeta;
  const Scalar free = Scalar(1) - p.alpha() - gap;
  return -Scalar(2) / (zeta * zeta * zeta) - Scalar(4) / (gap * gap * gap) -
         Scalar(2) / (free * free * free);
}

// Rounding-noise scale of phi/psi at zeta: a few ulps of the largest terms
// that cancel in the grouped form.
template <typename Scalar>
Scalar overlap_noise_floor(const ModelParams<Scalar>& p, Scalar zeta) {
  detail::require_overlap(p.alpha(), zeta, "overlap_noise_floor");
  const Scalar alpha = p.alpha();
  const Scalar gap = alpha - zeta;
  const Scalar rest = Scalar(1) - alpha;
  const Scalar d = zeta - p.alpha_squared();
  const Scalar magnitude = alpha * entropy_pair(zeta / alpha, gap / alpha) +
                           rest * entropy_pair(gap / rest, (rest - gap) / rest) +
                           entropy_pair(alpha, rest) +
                           p.c() / Scalar(2) * d * d / detail::one_minus_alpha_pow4(alpha);
  return Scalar(64) * std::numeric_limits<Scalar>::epsilon() * magnitude;
}

// phi and psi sampled on [0, alpha].
template <typename Scalar>
struct OverlapProfile {
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  Array zeta;
  Array phi;
  Array psi;
  Eigen::Index alpha_squared_row = 0;
  Eigen::Index argmax = 0;
  Scalar phi_max = Scalar(0);
};

// Uniform grid with `intervals` + 1 nodes including both endpoints. The
// interior node nearest alpha^2 is moved onto alpha^2; with no interior node
// alpha^2 is inserted instead.
template <typename Scalar>
OverlapProfile<Scalar> overlap_profile(const ModelParams<Scalar>& p, Eigen::Index intervals) {
  using Array = typename OverlapProfile<Scalar>::Array;
  if (intervals < 1) throw DomainError("overlap_profile: need at least one interval");
  detail::require_tuned(p, "overlap_profile");
  const Scalar alpha = p.alpha();
  const Scalar target = p.alpha_squared();

  OverlapProfile<Scalar> out;
  Array grid(intervals + 1);
  for (Eigen::Index i = 0; i <= intervals; ++i) {
    grid(i) = alpha * Scalar(i) / Scalar(intervals);
  }
  grid(intervals) = alpha;

  if (intervals >= 2) {
    using std::llround;
    Eigen::Index nearest = static_cast<Eigen::Index>(llround(target / alpha * Scalar(intervals)));
    if (nearest < 1) nearest = 1;
    if (nearest > intervals - 1) nearest = intervals - 1;
    grid(nearest) = target;
    out.alpha_squared_row = nearest;
    out.zeta = grid;
  } else {
    out.zeta.resize(3);
    out.zeta << Scalar(0), target, alpha;
    out.alpha_squared_row = 1;
  }

  out.phi = out.zeta.unaryExpr([&p](Scalar z) { return phi(p, z); });
  out.psi = out.zeta.unaryExpr([&p](Scalar z) { return psi(p, z); });
  out.phi_max = out.phi.maxCoeff(&out.argmax);
  return out;
}

}  // namespace wsm
