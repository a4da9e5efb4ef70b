#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qhydro/core/differential.hpp"
#include "qhydro/core/wave_field.hpp"

namespace qhydro {

/// v = v_S + v_R with v_S = grad S / m irrotational and v_R solenoidal;
/// omega is the (scalar, 2D) vorticity of v.
struct FlowField {
  VectorField v;
  VectorField v_s;
  VectorField v_r;
  ScalarField omega;
  Mask valid;
  std::vector<std::string> warnings;

  const Grid& grid() const { return v.grid(); }
};

struct FlowOptions {
  Stencil stencil = Stencil::central;
  /// Relative divergence tolerance for a supplied v_R, in units of
  /// max|v_R| / spacing; only produces a warning.
  double solenoidal_tol = 1e-6;
};

namespace detail {

/// Action jumps above pi*hbar between valid neighbours (not across the
/// periodic seam) mean the phase was never unwrapped.
inline void require_unwrapped(const WaveField& wf, double hbar) {
  const Grid& g = wf.grid();
  for (int axis = 0; axis < g.dim(); ++axis) {
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      const std::size_t i = g.ix(idx), j = g.iy(idx);
      const bool last = axis == 0 ? i + 1 == g.n(0) : j + 1 == g.n(1);
      if (last) continue;
      const std::size_t nb = axis == 0 ? g.index(i + 1, j) : g.index(i, j + 1);
      if (!wf.valid[idx] || !wf.valid[nb]) continue;
      if (std::abs(wf.action[nb] - wf.action[idx]) > kPi * hbar) {
        throw InvalidArgument("velocity_from_wave: action is not unwrapped (jump above pi*hbar at node " +
                              std::to_string(idx) + ")");
      }
    }
  }
}

/// grad S by central differences of the action, with differences reduced
/// modulo 2 pi hbar so the periodic seam of a winding phase is handled.
inline VectorField action_gradient_central(const WaveField& wf, double hbar) {
  const Grid& g = wf.grid();
  VectorField out(g);
  for (int axis = 0; axis < g.dim(); ++axis) {
    const std::size_t n = g.n(axis);
    const double h = g.spacing(axis);
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      const std::size_t k = axis == 0 ? g.ix(idx) : g.iy(idx);
      auto at = [&](std::size_t kk) {
        return axis == 0 ? g.index(kk, g.iy(idx)) : g.index(g.ix(idx), kk);
      };
      auto dphase = [&](std::size_t a, std::size_t b) {
        return hbar * wrap_phase((wf.action[b] - wf.action[a]) / hbar);
      };
      double d;
      if (k > 0 && k + 1 < n) {
        d = (dphase(at(k), at(k + 1)) + dphase(at(k - 1), at(k))) / (2.0 * h);
      } else if (g.periodic()) {
        const std::size_t prev = k == 0 ? n - 1 : k - 1;
        const std::size_t next = k + 1 == n ? 0 : k + 1;
        d = (dphase(at(k), at(next)) + dphase(at(prev), at(k))) / (2.0 * h);
      } else if (k == 0) {
        // -3 S0 + 4 S1 - S2 = 3 (S1 - S0) - (S2 - S1)
        d = (3.0 * dphase(at(0), at(1)) - dphase(at(1), at(2))) / (2.0 * h);
      } else {
        d = (3.0 * dphase(at(n - 2), at(n - 1)) - dphase(at(n - 3), at(n - 2))) / (2.0 * h);
      }
      out.comp[axis][idx] = d;
    }
  }
  return out;
}

/// grad S = hbar Im(conj(psi) grad psi) / rho with spectral grad psi.
inline VectorField action_gradient_spectral(const WaveField& wf, double hbar) {
  const Grid& g = wf.grid();
  VectorField out(g);
  for (int axis = 0; axis < g.dim(); ++axis) {
    const auto dpsi = partial(wf.psi, axis, Stencil::spectral);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double r = std::max(wf.rho[i], wf.rho_floor);
      out.comp[axis][i] = hbar * std::imag(std::conj(wf.psi[i]) * dpsi[i]) / r;
    }
  }
  return out;
}

}  // namespace detail

/// Velocity decomposition from a polar wave field: v_S = grad S / m, v_R as
/// supplied (zero by default), omega = curl v. Nodes whose stencil touches a
/// density node are masked and get v_S = 0.
inline FlowField velocity_from_wave(const WaveField& wf, const std::optional<VectorField>& v_r,
                                    const PhysicalConstants& c, const FlowOptions& opt = {}) {
  const Grid& g = wf.grid();
  detail::require_unwrapped(wf, c.hbar());
  if (v_r) detail::require(v_r->grid() == g, "velocity_from_wave: v_R grid mismatch");

  FlowField f;
  f.valid = stencil_support(wf.valid, g, opt.stencil);
  f.v_s = opt.stencil == Stencil::spectral ? detail::action_gradient_spectral(wf, c.hbar())
                                           : detail::action_gradient_central(wf, c.hbar());
  for (int a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < g.size(); ++i)
      f.v_s.comp[a][i] = f.valid[i] ? f.v_s.comp[a][i] / c.mass() : 0.0;

  f.v_r = v_r ? *v_r : VectorField(g);
  f.v = f.v_s;
  for (int a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < g.size(); ++i) f.v.comp[a][i] += f.v_r.comp[a][i];

  if (v_r) {
    const auto div = divergence(f.v_r, opt.stencil);
    double vmax = std::max(max_abs(f.v_r.comp[0]), max_abs(f.v_r.comp[1]));
    double h = g.spacing(0);
    if (max_abs(div) > opt.solenoidal_tol * vmax / h)
      f.warnings.push_back("velocity_from_wave: supplied v_R is not divergence-free within tolerance");
  }
  f.omega = curl(f.v, opt.stencil);
  return f;
}

/// (v . grad) v - grad(v^2 / 2) - omega x v, per component. Vanishes for
/// any smooth field up to discretization error.
inline VectorField convective_identity_residual(const VectorField& v, Stencil s = Stencil::central) {
  const Grid& g = v.grid();
  detail::require(g.dim() == 2, "convective identity residual is defined on 2D fields");
  const auto dvx_dx = partial(v.comp[0], 0, s), dvx_dy = partial(v.comp[0], 1, s);
  const auto dvy_dx = partial(v.comp[1], 0, s), dvy_dy = partial(v.comp[1], 1, s);
  ScalarField half_v2(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    half_v2[i] = 0.5 * (v.comp[0][i] * v.comp[0][i] + v.comp[1][i] * v.comp[1][i]);
  const auto grad_k = gradient(half_v2, s);
  VectorField r(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double vx = v.comp[0][i], vy = v.comp[1][i];
    const double omega = dvy_dx[i] - dvx_dy[i];
    const double adv_x = vx * dvx_dx[i] + vy * dvx_dy[i];
    const double adv_y = vx * dvy_dx[i] + vy * dvy_dy[i];
    // omega z-hat x v = (-omega vy, omega vx)
    r.comp[0][i] = adv_x - grad_k.comp[0][i] + omega * vy;
    r.comp[1][i] = adv_y - grad_k.comp[1][i] - omega * vx;
  }
  return r;
}

inline VectorField convective_identity_residual(const FlowField& f, Stencil s = Stencil::central) {
  return convective_identity_residual(f.v, s);
}

}  // namespace qhydro
