#pragma once

// Reference computations that share no code path with the library.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace crsim::test {

/// Adaptive Gauss-Kronrod integral of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol, &error);
}

/// E(r^(-k gamma)) by quadrature against the density 2r / (R^2 - R0^2).
/// The substitution r = e^t spreads the integrand's mass near R0.
inline double distance_moment_by_quadrature(int k, double gamma, double inner, double outer) {
  const double norm = outer * outer - inner * inner;
  const auto f = [&](double t) {
    const double r = std::exp(t);
    return std::pow(r, -k * gamma) * 2.0 * r / norm * r;
  };
  return integrate(f, std::log(inner), std::log(outer), 1e-13);
}

inline double gaussian_density(double x, double sigma) {
  return std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

/// Phi(z) = 1/2 + integral_0^z phi.
inline double normal_cdf_by_quadrature(double z) {
  const double half = integrate([](double x) { return gaussian_density(x, 1.0); }, 0.0,
                                std::abs(z), 1e-13);
  return z >= 0.0 ? 0.5 + half : 0.5 - half;
}

/// Solves normal_cdf_by_quadrature(z) = p by bisection.
inline double normal_quantile_by_bisection(double p) {
  double lo = -10.0;
  double hi = 10.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf_by_quadrature(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// E(e^{jX}) for X ~ N(0, sigma^2) by quadrature.
inline double lognormal_moment_by_quadrature(int j, double sigma) {
  const double span = 12.0 * sigma + 6.0 * j * sigma * sigma;
  return integrate([&](double x) { return std::exp(j * x) * gaussian_density(x, sigma); }, -span,
                   span, 1e-13);
}

/// Size of the largest subset of `values` whose sum is <= budget, by
/// enumerating all 2^n subsets.
inline std::size_t max_feasible_subset_size(const std::vector<double>& values, double budget) {
  const std::size_t n = values.size();
  std::size_t best = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        sum += values[i];
        ++count;
      }
    }
    if (sum <= budget && count > best) best = count;
  }
  return best;
}

struct SampleStats {
  double mean;
  double variance;  ///< population (1/n) variance
  double skewness;
};

inline SampleStats sample_stats(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (const double x : xs) mean += x;
  mean /= n;
  double m2 = 0.0;
  double m3 = 0.0;
  for (const double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  return {mean, m2, m3 / std::pow(m2, 1.5)};
}

}  // namespace crsim::test
