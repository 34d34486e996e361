#pragma once

// Stationary-point structure of psi on (0, alpha) and the numerical check that
// phi attains its global maximum at zeta = alpha^2.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wsm/analytic.hpp"

namespace wsm {

using Params = ModelParams<double>;

struct Inflections {
  double zeta1;  // psi'' changes sign - to +
  double zeta2;  // psi'' changes sign + to -
  double peak;   // argmax of psi'' between them
};

// Roots of psi'' in (0, alpha), or nullopt when psi'' < 0 throughout (psi is
// concave and alpha^2 is its only maximum).
std::optional<Inflections> find_inflections(const Params& p);

// Coefficients (constant term first) of the cubic obtained by clearing the
// denominators of psi'' = 0.
Eigen::Vector4d inflection_cubic(const Params& p);

// Real roots of inflection_cubic via the companion matrix, ascending. Loses
// relative precision for tiny alpha; used as a cross-check only.
std::vector<double> inflection_cubic_real_roots(const Params& p);

struct Zeta3 {
  double zeta3;
  double bracket_lo;
  double bracket_hi;
  double residual;  // psi'(zeta3)
};

// The local maximum of psi in [zeta2, alpha), or nullopt when psi' has no
// sign change there (NoInteriorRoot).
std::optional<Zeta3> find_zeta3(const Params& p, double zeta2);

enum class StationaryStatus { Ok, NoSecondMax, NoInteriorRoot };

std::string to_string(StationaryStatus s);

struct StationaryReport {
  StationaryStatus status = StationaryStatus::NoSecondMax;
  bool exists_second_max = false;
  double zeta1 = std::numeric_limits<double>::quiet_NaN();
  double zeta2 = std::numeric_limits<double>::quiet_NaN();
  double zeta3 = std::numeric_limits<double>::quiet_NaN();
  double delta2 = std::numeric_limits<double>::quiet_NaN();
  double delta3 = std::numeric_limits<double>::quiet_NaN();
  double psi_at_zeta3 = std::numeric_limits<double>::quiet_NaN();
  double lemma2_ratio = std::numeric_limits<double>::quiet_NaN();  // delta2 ln(1/alpha)
  double lemma3_ratio = std::numeric_limits<double>::quiet_NaN();  // delta3 e / sqrt(alpha)
};

StationaryReport stationary_report(const Params& p);

enum class Verdict { MaxAtAlphaSquared, MaxElsewhere };

std::string to_string(Verdict v);

struct CertifyOptions {
  int grid_points = 4096;
  double margin = 1e-10;
};

struct MaxCertificate {
  double argmax_zeta = 0.0;
  double phi_max = 0.0;
  // phi(zeta3), or -infinity when there is no second local maximum.
  double second_peak_value = -std::numeric_limits<double>::infinity();
  Verdict verdict = Verdict::MaxElsewhere;
  int grid_points = 0;
  double refinement_tolerance = 0.0;
  // Points outside the alpha^2 neighbourhood whose phi could not be shown
  // negative beyond rounding noise.
  int ties = 0;
  int phi_evaluations = 0;
  int cleared_by_envelope = 0;
};

// Scans phi on a uniform grid over [0, alpha] plus the stationary points and
// alpha^2. psi >= phi clears a point without evaluating phi when psi is below
// the rounding-noise floor.
MaxCertificate certify_global_max(const Params& p, const CertifyOptions& opts = {});

enum class LemmaMode { Lemma2, Lemma3, Lemma4 };

// Degree used by each lemma: 2 ln(1/a)/a, (2 ln(1/a) + 2)/a and
// (2 ln(1/a) + 2 - x sqrt(a))/a.
double lemma_degree(LemmaMode mode, double alpha, double x = 1.6);

struct LemmaRow {
  double alpha;
  double c;
  StationaryReport report;
};

std::vector<LemmaRow> lemma_diagnostics(const std::vector<double>& alphas, LemmaMode mode,
                                        double x = 1.6);

// Leading-order value of psi(zeta3) under the Lemma 4 degree: (2/e - x/2) alpha^{3/2}.
double lemma4_prediction(double alpha, double x);

}  // namespace wsm
