#include "wsm/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "wsm/roots.hpp"

namespace wsm {

namespace {

// Stationary searches stay this far (relative to alpha) from the poles.
constexpr double kEdge = 1e-9;
constexpr double kCoarse = 1e-3;
constexpr double kRelTol = 1e-13;

double search_lo(const Params& p) { return p.alpha() * kEdge; }
double search_hi(const Params& p) { return p.alpha() * (1.0 - kEdge); }

}  // namespace

std::optional<Inflections> find_inflections(const Params& p) {
  detail::require_tuned(p, "find_inflections");
  const double lo = search_lo(p);
  const double hi = search_hi(p);
  const double coarse = kCoarse * p.alpha();

  auto d2 = [&](double z) { return psi_d2(p, z); };
  auto d3 = [&](double z) { return psi_d3(p, z); };
  auto d4 = [&](double z) { return psi_d4(p, z); };

  const double peak = safeguarded_root(d3, d4, lo, hi, coarse, kRelTol).root;
  if (!(d2(peak) > 0.0)) return std::nullopt;
  if (!(d2(lo) < 0.0) || !(d2(hi) < 0.0)) {
    throw NumericError("find_inflections: psi'' is not negative at the search edges");
  }
  const double z1 = safeguarded_root(d2, d3, lo, peak, coarse, kRelTol).root;
  const double z2 = safeguarded_root(d2, d3, peak, hi, coarse, kRelTol).root;
  return Inflections{z1, z2, peak};
}

Eigen::Vector4d inflection_cubic(const Params& p) {
  // c z (a - z)(b + z) - q [2 z (b + z) + (a - z)(b + z) + z (a - z)],
  // with b = 1 - 2a and q = (1 - a)^4.
  const double a = p.alpha();
  const double b = 1.0 - 2.0 * a;
  const double c = p.c();
  const double q = detail::one_minus_alpha_pow4(a);
  // z (a - z)(b + z) = a b z + (a - b) z^2 - z^3
  // 2 z (b + z) + (a - z)(b + z) + z (a - z) = a b + (b + 2a) z
  Eigen::Vector4d k;
  k(0) = -q * a * b;
  k(1) = c * a * b - q * (b + 2.0 * a);
  k(2) = c * (a - b);
  k(3) = -c;
  return k;
}

std::vector<double> inflection_cubic_real_roots(const Params& p) {
  const Eigen::Vector4d k = inflection_cubic(p);
  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  for (int i = 0; i < 3; ++i) companion(i, 2) = -k(i) / k(3);
  Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
  const auto values = solver.eigenvalues();
  std::vector<double> roots;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(values(i).imag()) <= 1e-9 * std::abs(values(i))) roots.push_back(values(i).real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::optional<Zeta3> find_zeta3(const Params& p, double zeta2) {
  detail::require_tuned(p, "find_zeta3");
  const double hi = search_hi(p);
  if (!(zeta2 > 0.0 && zeta2 < hi)) throw DomainError("find_zeta3: zeta2 outside the search range");
  auto d1 = [&](double z) { return psi_d1(p, z); };
  auto d2 = [&](double z) { return psi_d2(p, z); };
  if (!(d1(zeta2) > 0.0) || !(d1(hi) < 0.0)) return std::nullopt;
  const auto r = safeguarded_root(d1, d2, zeta2, hi, kCoarse * p.alpha(), 1e-12);
  return Zeta3{r.root, r.lo, r.hi, d1(r.root)};
}

std::string to_string(StationaryStatus s) {
  switch (s) {
    case StationaryStatus::Ok:
      return "ok";
    case StationaryStatus::NoSecondMax:
      return "NoSecondMax";
    case StationaryStatus::NoInteriorRoot:
      return "NoInteriorRoot";
  }
  return "unknown";
}

StationaryReport stationary_report(const Params& p) {
  StationaryReport r;
  const auto inflections = find_inflections(p);
  if (!inflections) {
    r.status = StationaryStatus::NoSecondMax;
    return r;
  }
  const double a = p.alpha();
  const double log_inv = -std::log(a);
  r.zeta1 = inflections->zeta1;
  r.zeta2 = inflections->zeta2;
  r.delta2 = (a - r.zeta2) / a;
  r.lemma2_ratio = r.delta2 * log_inv;

  const auto z3 = find_zeta3(p, r.zeta2);
  if (!z3) {
    r.status = StationaryStatus::NoInteriorRoot;
    return r;
  }
  r.status = StationaryStatus::Ok;
  r.exists_second_max = true;
  r.zeta3 = z3->zeta3;
  r.delta3 = (a - r.zeta3) / a;
  r.lemma3_ratio = r.delta3 * std::numbers::e / std::sqrt(a);
  r.psi_at_zeta3 = psi(p, r.zeta3);
  return r;
}

std::string to_string(Verdict v) {
  return v == Verdict::MaxAtAlphaSquared ? "MaxAtAlphaSquared" : "MaxElsewhere";
}

MaxCertificate certify_global_max(const Params& p, const CertifyOptions& opts) {
  detail::require_tuned(p, "certify_global_max");
  if (opts.grid_points < 2) throw DomainError("certify_global_max: need at least 2 grid points");
  const double a = p.alpha();
  const double target = p.alpha_squared();
  const double spacing = a / static_cast<double>(opts.grid_points - 1);

  MaxCertificate cert;
  cert.grid_points = opts.grid_points;
  cert.refinement_tolerance = kRelTol;

  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(opts.grid_points) + 4);
  for (int i = 0; i < opts.grid_points; ++i) {
    points.push_back(a * static_cast<double>(i) / static_cast<double>(opts.grid_points - 1));
  }
  points.back() = a;

  const StationaryReport st = stationary_report(p);
  if (!std::isnan(st.zeta1)) points.push_back(st.zeta1);
  if (!std::isnan(st.zeta2)) points.push_back(st.zeta2);
  if (st.exists_second_max) {
    points.push_back(st.zeta3);
    cert.second_peak_value = phi(p, st.zeta3);
  }

  // alpha^2 is the reference: phi = 0 there by construction.
  cert.argmax_zeta = target;
  cert.phi_max = 0.0;
  bool best_near_target = true;

  for (double z : points) {
    if (z == target) continue;
    const bool near_target = std::abs(z - target) <= spacing;
    const double noise = overlap_noise_floor(p, z);
    if (psi(p, z) < -noise) {
      ++cert.cleared_by_envelope;
      continue;
    }
    const double value = phi(p, z);
    ++cert.phi_evaluations;
    if (!near_target && value >= -noise) ++cert.ties;
    // Ties with a point away from alpha^2 go to that point.
    if (value > cert.phi_max || (value == cert.phi_max && !near_target)) {
      cert.phi_max = value;
      cert.argmax_zeta = z;
      best_near_target = near_target;
    }
  }

  const bool ok = cert.phi_max <= opts.margin && best_near_target && cert.ties == 0;
  cert.verdict = ok ? Verdict::MaxAtAlphaSquared : Verdict::MaxElsewhere;
  return cert;
}

double lemma_degree(LemmaMode mode, double alpha, double x) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("lemma_degree: alpha must lie in (0, 1/2)");
  const double log_inv = -std::log(alpha);
  switch (mode) {
    case LemmaMode::Lemma2:
      return 2.0 * log_inv / alpha;
    case LemmaMode::Lemma3:
      return (2.0 * log_inv + 2.0) / alpha;
    case LemmaMode::Lemma4:
      return (2.0 * log_inv + 2.0 - x * std::sqrt(alpha)) / alpha;
  }
  return 0.0;
}

std::vector<LemmaRow> lemma_diagnostics(const std::vector<double>& alphas, LemmaMode mode,
                                        double x) {
  std::vector<LemmaRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1e-2)) throw DomainError("lemma_diagnostics: alpha must lie in (0, 1e-2]");
    const double c = lemma_degree(mode, a, x);
    rows.push_back({a, c, stationary_report(Params::tuned(a, c))});
  }
  return rows;
}

double lemma4_prediction(double alpha, double x) {
  return (2.0 / std::numbers::e - x / 2.0) * std::pow(alpha, 1.5);
}

}  // namespace wsm
