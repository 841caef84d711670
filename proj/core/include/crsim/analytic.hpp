#pragma once

#include "crsim/scenario.hpp"

// Closed-form statistics of a single interferer I = B e^X r^-gamma with r
// uniform over an annulus and X ~ N(0, sigma_x^2).

namespace crsim {

/// Standard Gaussian CDF via erfc; absolute error well below 1e-12.
double std_normal_cdf(double z);
/// 1 - std_normal_cdf(z) without cancellation for large z.
double std_normal_ccdf(double z);

/// Bounds of the Gaussian integration for P(I < x), with u = -X.
struct SingleCdfTerms {
  double y;   ///< scale / x
  double w0;  ///< ln(y R^-gamma)
  double w1;  ///< ln(y R0^-gamma)

  static SingleCdfTerms at(double x, double gamma, const Annulus& annulus, double scale);
};

/// P(I < x). Throws std::domain_error for x <= 0 and std::logic_error if
/// rounding pushes the result more than 1e-12 outside [0, 1].
double single_interferer_cdf(double x, const PropagationEnv& env, const Annulus& annulus,
                             double scale);

/// E(r^(-k gamma)) for r with density 2r / (R^2 - R0^2). The k*gamma == 2
/// case returns the logarithmic limit.
double distance_moment(int k, double gamma, const Annulus& annulus);

/// Large-R approximation 2 / (R^2 (k gamma - 2)); std::domain_error if k*gamma <= 2.
double distance_moment_approx(int k, double gamma, double outer_radius);

/// E(I^j) = B^j exp(j^2 sigma_x^2 / 2) E(r^(-j gamma)), j in {1, 2, 3}.
double interference_moment(int j, const PropagationEnv& env, const Annulus& annulus,
                           double scale);

struct MomentSet {
  double m1;
  double m2;
  double m3;
  double sk;  ///< skewness; filled by make_moment_set
};

/// Skewness (m3 + 2 m1^3 - 3 m1 m2) / (m2 - m1^2)^(3/2).
/// Throws DegenerateDistributionError when m2 <= m1^2.
double skewness_exact(const MomentSet& m);

MomentSet make_moment_set(const PropagationEnv& env, const Annulus& annulus, double scale);

/// Lognormal Y = e^Z, Z ~ N(mu_z, sigma_z2), matching m1 and m2.
struct FwFit {
  double mu_z;
  double sigma_z2;
  double third_moment;  ///< E(Y^3) = (m2 / m1)^3

  double moment(int k) const;
  double skewness() const;
};

/// Two-moment lognormal fit. Throws std::domain_error if m1 <= 0 and
/// DegenerateDistributionError if m2 <= m1^2.
FwFit fenton_wilkinson_fit(const MomentSet& m);

/// E(Y^3) / m3 for the fitted lognormal, from exact distance moments. The
/// shadowing and scale factors cancel, so only gamma and the annulus matter.
double skewness_ratio_exact(double gamma, const Annulus& annulus);

/// ((gamma - 2) / (2 gamma - 2))^3 * R^2 (3 gamma - 2) / 2; std::domain_error for gamma <= 2.
double skewness_ratio_asymptotic(double gamma, double outer_radius);

/// Transmit scale A such that P(A e^X r^-gamma >= noise * 10^(snr_threshold_db/10))
/// equals `reliability` for r uniform over `coverage`. Bisection on ln A to
/// |F - (1 - reliability)| < 1e-9; ConvergenceError after 200 steps.
double calibrate_power(const PropagationEnv& env, const Annulus& coverage, double reliability,
                       double snr_threshold_db, double noise);

}  // namespace crsim
