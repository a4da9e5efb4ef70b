#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "qhydro/vortex/viscosity.hpp"

namespace qhydro {

struct RadialOptions {
  std::size_t snapshot_stride = 1;
  /// Modal amplification above this is clipped in the output (backward
  /// diffusion while Sigma < sigma^2 amplifies round-off) and flagged.
  double amplification_cap = 1e6;
};

struct RadialHistory {
  std::vector<double> r;
  std::vector<double> times;
  std::vector<std::vector<double>> omega;
  std::vector<double> sigma_eff;  // Sigma(t) of the viscosity history at each snapshot
  std::vector<std::string> warnings;
};

/// Crank-Nicolson for d(omega)/dt = nu(t) (omega_rr + omega_r / r) on the
/// uniform grid r_j = j dr, nu evaluated at the step midpoint. The axis uses
/// the even ghost point (2 omega_rr at r = 0); omega = 0 at the last point.
///
/// The discrete operator is self-adjoint in the weights (dr/8, dr, 2 dr, ...),
/// so every step matrix shares one orthonormal eigenbasis. Steps are applied
/// as accumulated per-mode CN factors, which is algebraically the same
/// scheme without repeated round-off from the linear solves.
inline RadialHistory evolve_radial_vorticity(const std::vector<double>& r, const std::vector<double>& omega0,
                                             const ViscosityHistory& visc, double dt, std::size_t steps,
                                             const RadialOptions& opt = {}) {
  const std::size_t n = r.size();
  detail::require(n >= 8 && omega0.size() == n, "radial: omega0 must match an r grid of >= 8 points");
  detail::require(r.front() == 0.0, "radial: grid must start at r = 0");
  const double dr = r[1] - r[0];
  for (std::size_t j = 1; j < n; ++j)
    detail::require(std::abs(r[j] - r[j - 1] - dr) <= 1e-9 * dr, "radial: grid must be uniform");
  for (double w : omega0) detail::require(std::isfinite(w), "radial: omega0 must be finite");
  detail::require(std::isfinite(dt) && dt > 0.0, "radial: dt must be > 0");
  detail::require(steps >= 1 && opt.snapshot_stride >= 1, "radial: steps and snapshot_stride must be >= 1");
  const double t_end = dt * static_cast<double>(steps);
  detail::require(!visc.model().stochastic() || t_end <= visc.horizon() * (1.0 + 1e-12),
                  "radial: viscosity history shorter than the run");

  const std::size_t m = n - 1;  // unknowns j = 0 .. n-2
  const double inv = 1.0 / (dr * dr);
  Eigen::VectorXd diag(m), sub(m - 1), wsqrt(m);
  for (std::size_t j = 0; j < m; ++j) {
    diag[j] = (j == 0 ? -4.0 : -2.0) * inv;
    wsqrt[j] = std::sqrt(j == 0 ? dr / 8.0 : static_cast<double>(j) * dr);
  }
  sub[0] = std::sqrt(4.0 * 0.5) * inv;
  for (std::size_t j = 1; j + 1 < m; ++j) {
    const double jd = static_cast<double>(j);
    sub[j] = std::sqrt((1.0 + 0.5 / jd) * (1.0 - 0.5 / (jd + 1.0))) * inv;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (eig.info() != Eigen::Success) throw NumericAbort("radial: eigen-decomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const Eigen::MatrixXd& q = eig.eigenvectors();

  Eigen::VectorXd x0(m);
  for (std::size_t j = 0; j < m; ++j) x0[j] = wsqrt[j] * omega0[j];
  const Eigen::VectorXd coeff = q.transpose() * x0;

  RadialHistory out;
  out.r = r;
  bool capped = false;
  Eigen::VectorXd gain = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m));
  auto record = [&](double t) {
    Eigen::VectorXd g = gain;
    for (Eigen::Index k = 0; k < g.size(); ++k) {
      if (std::abs(g[k]) > opt.amplification_cap) {
        g[k] = std::copysign(opt.amplification_cap, g[k]);
        capped = true;
      }
    }
    const Eigen::VectorXd x = q * g.cwiseProduct(coeff);
    std::vector<double> w(n, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      w[j] = x[j] / wsqrt[j];
      if (!std::isfinite(w[j])) throw NumericAbort("radial: non-finite vorticity at t = " + std::to_string(t));
    }
    out.times.push_back(t);
    out.omega.push_back(std::move(w));
    out.sigma_eff.push_back(visc.sigma(t).value);
  };

  double worst = 0.0;
  record(0.0);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double nu = visc.nu((static_cast<double>(k) - 0.5) * dt);
    worst = std::max(worst, std::abs(nu) * dt * inv);
    for (Eigen::Index i = 0; i < gain.size(); ++i) {
      const double x = 0.5 * nu * dt * lambda[i];
      gain[i] *= (1.0 + x) / (1.0 - x);
    }
    if (k % opt.snapshot_stride == 0 || k == steps) record(static_cast<double>(k) * dt);
  }
  if (worst > 10.0)
    out.warnings.push_back("radial: |nu| dt / dr^2 reached " + std::to_string(worst) + " (> 10); accuracy degrades");
  if (capped)
    out.warnings.push_back("radial: modal amplification clipped at " + std::to_string(opt.amplification_cap));
  return out;
}

}  // namespace qhydro
