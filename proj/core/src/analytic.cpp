#include "crsim/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "crsim/errors.hpp"

namespace crsim {
namespace {

constexpr double kClampTolerance = 1e-12;

// Phi(b) - Phi(a) for a <= b, taken from whichever tail avoids cancellation.
double normal_interval(double a, double b) {
  if (a > 0.0) return std_normal_ccdf(a) - std_normal_ccdf(b);
  return std_normal_cdf(b) - std_normal_cdf(a);
}

double clamp_probability(double p) {
  if (p < -kClampTolerance || p > 1.0 + kClampTolerance || std::isnan(p)) {
    throw std::logic_error("single-interferer CDF left [0, 1]: " + std::to_string(p));
  }
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double std_normal_ccdf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

SingleCdfTerms SingleCdfTerms::at(double x, double gamma, const Annulus& annulus, double scale) {
  const double log_y = std::log(scale) - std::log(x);
  return {scale / x, log_y - gamma * std::log(annulus.outer),
          log_y - gamma * std::log(annulus.inner)};
}

double single_interferer_cdf(double x, const PropagationEnv& env, const Annulus& annulus,
                             double scale) {
  if (!(x > 0.0)) throw std::domain_error("interference level must be positive");
  const double gamma = env.gamma();
  const double sx = env.sigma_x();
  const double outer2 = annulus.outer * annulus.outer;
  const double area = annulus.area_factor();
  const SingleCdfTerms t = SingleCdfTerms::at(x, gamma, annulus, scale);

  if (sx == 0.0) {
    // I < x  <=>  r > y^(1/gamma)
    const double threshold2 = std::exp(2.0 * std::log(t.y) / gamma);
    return std::min(1.0, std::max(0.0, (outer2 - threshold2) / area));
  }

  const double head = std_normal_ccdf(t.w1 / sx);
  const double body = outer2 * normal_interval(t.w0 / sx, t.w1 / sx);

  // y^(2/gamma) = R^2 exp(2 w0 / gamma); combined in log space so that a huge
  // prefactor never meets an underflowed Gaussian mass as inf * 0.
  const double shift = 2.0 * sx * sx / gamma;
  const double mass = normal_interval((t.w0 + shift) / sx, (t.w1 + shift) / sx);
  double tail = 0.0;
  if (mass > 0.0) {
    tail = outer2 *
           std::exp(2.0 * t.w0 / gamma + 2.0 * sx * sx / (gamma * gamma) + std::log(mass));
  }
  return clamp_probability(head + (body - tail) / area);
}

double distance_moment(int k, double gamma, const Annulus& annulus) {
  if (k < 0) throw std::invalid_argument("distance moment order must be >= 0");
  if (k == 0) return 1.0;
  const double area = annulus.area_factor();
  const double exponent = 2.0 - k * gamma;
  const double log_ratio = std::log(annulus.outer / annulus.inner);
  if (exponent == 0.0) return 2.0 * log_ratio / area;
  // R^e - R0^e = R0^e expm1(e ln(R/R0)) stays accurate as e -> 0.
  return 2.0 * std::pow(annulus.inner, exponent) * std::expm1(exponent * log_ratio) /
         (area * exponent);
}

double distance_moment_approx(int k, double gamma, double outer_radius) {
  const double kg = k * gamma;
  if (!(kg > 2.0)) throw std::domain_error("large-R moment approximation needs k*gamma > 2");
  return 2.0 / (outer_radius * outer_radius * (kg - 2.0));
}

double interference_moment(int j, const PropagationEnv& env, const Annulus& annulus,
                           double scale) {
  if (j < 1 || j > 3) throw std::invalid_argument("interference moment order must be 1..3");
  const double sx = env.sigma_x();
  return std::pow(scale, j) * std::exp(0.5 * j * j * sx * sx) *
         distance_moment(j, env.gamma(), annulus);
}

double skewness_exact(const MomentSet& m) {
  const double var = m.m2 - m.m1 * m.m1;
  if (!(var > 0.0)) throw DegenerateDistributionError("skewness undefined for zero variance");
  return (m.m3 + 2.0 * m.m1 * m.m1 * m.m1 - 3.0 * m.m1 * m.m2) / std::pow(var, 1.5);
}

MomentSet make_moment_set(const PropagationEnv& env, const Annulus& annulus, double scale) {
  MomentSet m{interference_moment(1, env, annulus, scale),
              interference_moment(2, env, annulus, scale),
              interference_moment(3, env, annulus, scale), 0.0};
  m.sk = skewness_exact(m);
  return m;
}

double FwFit::moment(int k) const { return std::exp(k * mu_z + 0.5 * k * k * sigma_z2); }

double FwFit::skewness() const {
  return (std::exp(sigma_z2) + 2.0) * std::sqrt(std::expm1(sigma_z2));
}

FwFit fenton_wilkinson_fit(const MomentSet& m) {
  if (!(m.m1 > 0.0)) throw std::domain_error("lognormal fit needs a positive mean");
  if (!(m.m2 > m.m1 * m.m1)) {
    throw DegenerateDistributionError("lognormal fit needs positive variance");
  }
  const double sigma_z2 = std::log(m.m2 / (m.m1 * m.m1));
  const double ratio = m.m2 / m.m1;
  return {std::log(m.m1) - 0.5 * sigma_z2, sigma_z2, ratio * ratio * ratio};
}

double skewness_ratio_exact(double gamma, const Annulus& annulus) {
  const double e1 = distance_moment(1, gamma, annulus);
  const double e2 = distance_moment(2, gamma, annulus);
  const double e3 = distance_moment(3, gamma, annulus);
  const double q = e2 / e1;
  return q * q * q / e3;
}

double skewness_ratio_asymptotic(double gamma, double outer_radius) {
  if (!(gamma > 2.0)) throw std::domain_error("skewness-ratio asymptotic needs gamma > 2");
  const double f = (gamma - 2.0) / (2.0 * gamma - 2.0);
  return f * f * f * outer_radius * outer_radius * (3.0 * gamma - 2.0) / 2.0;
}

double calibrate_power(const PropagationEnv& env, const Annulus& coverage, double reliability,
                       double snr_threshold_db, double noise) {
  if (!(reliability > 0.0 && reliability < 1.0)) {
    throw std::invalid_argument("reliability must lie in (0, 1)");
  }
  if (!(noise > 0.0)) throw std::invalid_argument("noise must be positive");
  const double threshold = noise * db_to_linear(snr_threshold_db);
  const double target = 1.0 - reliability;
  const double spread = 40.0 * env.sigma_x() + 50.0;
  // F_S(threshold) is 1 at the low end and 0 at the high end of this bracket.
  double lo = std::log(threshold) + env.gamma() * std::log(coverage.inner) - spread;
  double hi = std::log(threshold) + env.gamma() * std::log(coverage.outer) + spread;
  for (int step = 0; step < 200; ++step) {
    const double mid = 0.5 * (lo + hi);
    const double f = single_interferer_cdf(threshold, env, coverage, std::exp(mid));
    if (std::abs(f - target) < 1e-9) return std::exp(mid);
    if (f > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError("power calibration did not converge in 200 bisection steps");
}

}  // namespace crsim
