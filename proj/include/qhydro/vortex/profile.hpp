#pragma once

#include <cmath>
#include <vector>

#include "qhydro/core/error.hpp"

namespace qhydro {

/// Gaussian vortex: omega = Gamma/(4 Sigma) exp(-r^2 / 4 Sigma).
inline double omega_profile(double gamma, double sigma_eff, double r) {
  detail::require(sigma_eff > 0.0, "omega_profile: Sigma must be > 0");
  detail::require(r >= 0.0, "omega_profile: r must be >= 0");
  return gamma / (4.0 * sigma_eff) * std::exp(-r * r / (4.0 * sigma_eff));
}

/// Orbital velocity v = (1/r) integral_0^r omega r' dr' = Gamma/(2r) (1 - exp(-r^2 / 4 Sigma)).
inline double v_profile(double gamma, double sigma_eff, double r) {
  detail::require(sigma_eff > 0.0, "v_profile: Sigma must be > 0");
  detail::require(r >= 0.0, "v_profile: r must be >= 0");
  if (r == 0.0) return 0.0;
  return -gamma / (2.0 * r) * std::expm1(-r * r / (4.0 * sigma_eff));
}

/// Positive root of e^xi = 1 + 2 xi, by bisection.
inline double core_xi() {
  auto f = [](double x) { return std::expm1(x) - 2.0 * x; };
  double lo = 0.5, hi = 2.0;  // f(lo) < 0 < f(hi)
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Radius of maximal orbital velocity, r0 = 2 sqrt(Sigma xi).
inline double core_radius(double sigma_eff) {
  detail::require(sigma_eff > 0.0, "core_radius: Sigma must be > 0");
  static const double xi = core_xi();
  return 2.0 * std::sqrt(sigma_eff * xi);
}

/// Circulation inside radius r, 2 r v(r) = Gamma (1 - exp(-r^2 / 4 Sigma)).
inline double enclosed_circulation(double gamma, double sigma_eff, double r) {
  detail::require(sigma_eff > 0.0, "circulation: Sigma must be > 0");
  detail::require(r >= 0.0, "circulation: r must be >= 0");
  return -gamma * std::expm1(-r * r / (4.0 * sigma_eff));
}

/// Enclosed circulation 2 r v(r) from velocity samples, interpolated
/// linearly in r. Returns 0 at r = 0.
inline double enclosed_circulation(const std::vector<double>& r, const std::vector<double>& v, double at) {
  detail::require(r.size() == v.size() && r.size() >= 2, "circulation: need matching samples");
  detail::require(at >= r.front() && at <= r.back(), "circulation: r outside the sampled range");
  if (at == 0.0) return 0.0;
  std::size_t k = 0;
  while (k + 2 < r.size() && r[k + 1] < at) ++k;
  const double f = (at - r[k]) / (r[k + 1] - r[k]);
  return 2.0 * at * ((1.0 - f) * v[k] + f * v[k + 1]);
}

struct VortexProfile {
  double gamma = 1.0;
  double sigma_eff = 1.0;
  std::vector<double> r;
  std::vector<double> omega;
  std::vector<double> v;
  double r0 = 0.0;
};

inline VortexProfile make_profile(double gamma, double sigma_eff, std::vector<double> r) {
  VortexProfile p;
  p.gamma = gamma;
  p.sigma_eff = sigma_eff;
  p.r0 = core_radius(sigma_eff);
  for (double x : r) {
    p.omega.push_back(omega_profile(gamma, sigma_eff, x));
    p.v.push_back(v_profile(gamma, sigma_eff, x));
  }
  p.r = std::move(r);
  return p;
}

/// Uniform radial samples r_j = j R_max / (n - 1).
inline std::vector<double> radial_grid(double r_max, std::size_t n) {
  detail::require(r_max > 0.0 && n >= 8, "radial_grid: need r_max > 0 and n >= 8");
  std::vector<double> r(n);
  for (std::size_t j = 0; j < n; ++j) r[j] = r_max * static_cast<double>(j) / static_cast<double>(n - 1);
  return r;
}

}  // namespace qhydro
