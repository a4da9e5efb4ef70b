#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "qhydro/core/field.hpp"

namespace qhydro {

using Point = std::array<double, 2>;

enum class SeedMode { quantile, uniform };

struct SeedSet {
  std::vector<Point> positions;
  std::vector<std::string> warnings;
};

namespace detail {

/// Cumulative mass of a piecewise-linear density along one axis. Cell k
/// spans [x_k, x_k + h]; on periodic axes the last cell wraps to node 0.
class LinearCdf {
 public:
  LinearCdf(std::vector<double> rho, double x0, double h, bool periodic)
      : rho_(std::move(rho)), x0_(x0), h_(h) {
    const std::size_t cells = periodic ? rho_.size() : rho_.size() - 1;
    if (periodic) rho_.push_back(rho_.front());
    cum_.assign(cells + 1, 0.0);
    for (std::size_t k = 0; k < cells; ++k) cum_[k + 1] = cum_[k] + 0.5 * h_ * (rho_[k] + rho_[k + 1]);
  }

  double total() const { return cum_.back(); }

  /// Smallest x with CDF(x) = level * total: the leftmost point of a plateau.
  double inverse(double level) const {
    const double target = level * total();
    // round-off tolerance so a level that sits on a plateau resolves to its left end
    const double eps = 1e-12 * total();
    auto it = std::lower_bound(cum_.begin() + 1, cum_.end(), target - eps);
    if (it == cum_.end()) it = cum_.end() - 1;
    const std::size_t k = static_cast<std::size_t>(it - cum_.begin()) - 1;
    const double need = target - cum_[k];
    const double a = rho_[k], slope = (rho_[k + 1] - rho_[k]) / h_;
    // a s + slope s^2 / 2 = need, root in [0, h]
    double s;
    if (need <= 0.0) {
      s = 0.0;
    } else {
      const double disc = std::max(a * a + 2.0 * slope * need, 0.0);
      s = 2.0 * need / (a + std::sqrt(disc));  // stable form of (-a + sqrt(disc)) / slope
    }
    return x0_ + (static_cast<double>(k) + std::clamp(s / h_, 0.0, 1.0)) * h_;
  }

 private:
  std::vector<double> rho_;
  double x0_, h_;
  std::vector<double> cum_;
};

inline std::vector<double> marginal(const ScalarField& rho, int axis) {
  const Grid& g = rho.grid();
  std::vector<double> m(g.n(axis), 0.0);
  if (g.dim() == 1) return rho.raw();
  const int other = 1 - axis;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const std::size_t k = axis == 0 ? g.ix(idx) : g.iy(idx);
    const std::size_t j = other == 0 ? g.ix(idx) : g.iy(idx);
    double w = g.spacing(other);
    if (!g.periodic() && (j == 0 || j + 1 == g.n(other))) w *= 0.5;
    m[k] += rho[idx] * w;
  }
  return m;
}

inline std::vector<double> axis_quantiles(const ScalarField& rho, int axis, std::size_t count) {
  const Grid& g = rho.grid();
  LinearCdf cdf(marginal(rho, axis), g.min(axis), g.spacing(axis), g.periodic());
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = cdf.inverse((static_cast<double>(i) + 0.5) / static_cast<double>(count));
  return out;
}

inline std::vector<double> axis_lattice(const ScalarField& rho, int axis, std::size_t count, double rel) {
  const Grid& g = rho.grid();
  const auto m = marginal(rho, axis);
  const double peak = *std::max_element(m.begin(), m.end());
  std::size_t lo = m.size(), hi = 0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] > rel * peak) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
  }
  const double a = g.coord(axis, lo), b = g.coord(axis, hi);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = a + (static_cast<double>(i) + 0.5) * (b - a) / static_cast<double>(count);
  return out;
}

}  // namespace detail

/// Initial positions distributed per rho0. quantile: CDF levels (i + 0.5)/n
/// of the piecewise-linear density (product of marginal quantiles in 2D,
/// where n must be a perfect square). uniform: evenly spaced over the
/// support rho > 1e-6 max(rho).
inline SeedSet sample_seeds(const ScalarField& rho0, std::size_t n, SeedMode mode) {
  const Grid& g = rho0.grid();
  detail::require(n >= 1, "sample_seeds: n must be >= 1");
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    detail::require(std::isfinite(rho0[i]) && rho0[i] >= 0.0, "sample_seeds: density must be finite and >= 0");
    total += rho0[i] * g.weight(i);
  }
  detail::require(std::abs(total - 1.0) < 1e-6, "sample_seeds: rho0 is not normalized");

  std::size_t per_axis = n;
  if (g.dim() == 2) {
    per_axis = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    detail::require(per_axis * per_axis == n, "sample_seeds: 2D seed count must be a perfect square");
  }

  SeedSet out;
  std::size_t support = 0;
  const double peak = *std::max_element(rho0.raw().begin(), rho0.raw().end());
  for (double r : rho0.raw()) support += r > 1e-6 * peak ? 1 : 0;
  if (n > support) {
    out.warnings.push_back("sample_seeds: " + std::to_string(n) + " seeds exceed the " + std::to_string(support) +
                           " grid nodes in the support; seeds will share cells");
  }

  auto along = [&](int axis) {
    return mode == SeedMode::quantile ? detail::axis_quantiles(rho0, axis, per_axis)
                                      : detail::axis_lattice(rho0, axis, per_axis, 1e-6);
  };
  const auto xs = along(0);
  if (g.dim() == 1) {
    for (double x : xs) out.positions.push_back({x, 0.0});
    return out;
  }
  const auto ys = along(1);
  for (double y : ys)
    for (double x : xs) out.positions.push_back({x, y});
  return out;
}

}  // namespace qhydro
