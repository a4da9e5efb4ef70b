#pragma once

#include <functional>

#include "qhydro/core/flow.hpp"
#include "qhydro/core/madelung.hpp"
#include "qhydro/core/wave_field.hpp"

namespace qhydro {

/// Two snapshots bracketing the evaluation instant; time derivatives are
/// the centered difference (after - before) / (after.time - before.time).
/// Non-owning: both snapshots must outlive the call.
struct SnapshotPair {
  const WaveField* before = nullptr;
  const WaveField* after = nullptr;

  double span() const {
    detail::require(before != nullptr && after != nullptr, "residual: missing snapshot");
    const double dt = after->time - before->time;
    detail::require(dt > 0.0, "residual: snapshot span must be > 0");
    return dt;
  }
};

/// dS/dt(x, y, t) supplied analytically.
using ActionRate = std::function<double(double x, double y, double t)>;

struct ResidualOptions {
  Stencil stencil = Stencil::central;
  double rho_floor_rel = 1e-12;
  /// Viscosity used for the reported nu * m * f(rho) term; never enters the residual.
  double nu = 0.0;
  /// grad rho as 2 rho grad C (exact for Gaussians under central stencils)
  /// rather than differencing rho directly.
  bool log_density_gradient = true;
};

struct HamiltonJacobiResidual {
  MaskedField residual;
  /// nu * m * f(rho), f = -d ln(rho)/dt; zero when no snapshots were given.
  ScalarField viscous_term;
  double weighted_l2 = 0.0;  // sqrt(sum rho r^2 dV) over valid nodes
  double max_abs = 0.0;
};

struct ContinuityResidual {
  MaskedField rho_form;         // rho_t + div(rho v)
  MaskedField c_form;           // C_t + div(v_S)/2 + v . grad C
  MaskedField laplacian_identity;  // lap S / m + d ln(rho)/dt
  double l2 = 0.0;
  double max_abs = 0.0;
};

namespace detail {

inline void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  require(a == b, std::string(what) + ": grid mismatch");
}

/// hbar * arg(psi_after conj(psi_before)) / span: the phase increment is
/// taken modulo 2 pi, so the unwrap offsets of the two snapshots cancel.
inline ScalarField action_rate(const SnapshotPair& p, double hbar) {
  const double dt = p.span();
  require_same_grid(p.before->grid(), p.after->grid(), "residual");
  ScalarField out(p.before->grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = hbar * std::arg(p.after->psi[i] * std::conj(p.before->psi[i])) / dt;
  return out;
}

inline ScalarField density_rate(const SnapshotPair& p) {
  const double dt = p.span();
  ScalarField out(p.before->grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (p.after->rho[i] - p.before->rho[i]) / dt;
  return out;
}

inline VectorField density_gradient(const WaveField& wf, const ResidualOptions& opt) {
  if (!opt.log_density_gradient) return gradient(wf.rho, opt.stencil);
  auto g = gradient(wf.c_rho, opt.stencil);
  for (int a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < g.comp[a].size(); ++i) g.comp[a][i] *= 2.0 * wf.rho[i];
  return g;
}

inline double dot(const VectorField& a, const VectorField& b, std::size_t i) {
  return a.comp[0][i] * b.comp[0][i] + a.comp[1][i] * b.comp[1][i];
}

inline HamiltonJacobiResidual hj_assemble(const WaveField& wf, const FlowField& flow, const ScalarField& u,
                                          const PhysicalConstants& c, double c0, const ScalarField& s_t,
                                          Mask valid, const ResidualOptions& opt) {
  const Grid& g = wf.grid();
  require_same_grid(g, flow.grid(), "hamilton_jacobi_residual");
  require_same_grid(g, u.grid(), "hamilton_jacobi_residual");
  const auto q = quantum_potential(wf.rho, c, {opt.rho_floor_rel, opt.stencil});
  valid = mask_and(mask_and(valid, q.valid), flow.valid);

  HamiltonJacobiResidual out{{ScalarField(g), valid}, ScalarField(g), 0.0, 0.0};
  const double m = c.mass();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!valid[i]) continue;
    // (grad S)^2 / 2m = m v_S^2 / 2
    const double kinetic = 0.5 * m * dot(flow.v_s, flow.v_s, i);
    const double rotational = 0.5 * m * dot(flow.v_r, flow.v_r, i);
    out.residual.values[i] = s_t[i] + kinetic + rotational + u[i] + q.values[i] - c0;
  }
  out.weighted_l2 = weighted_l2_norm(out.residual.values, wf.rho, valid);
  out.max_abs = qhydro::max_abs(out.residual.values, valid);
  return out;
}

}  // namespace detail

/// dS/dt + (grad S)^2/2m + m v_R^2/2 + U + Q - C0 at the instant of wf,
/// with dS/dt from the bracketing snapshots.
inline HamiltonJacobiResidual hamilton_jacobi_residual(const WaveField& wf, const FlowField& flow,
                                                       const ScalarField& u, const PhysicalConstants& c,
                                                       double c0, const SnapshotPair& pair,
                                                       const ResidualOptions& opt = {}) {
  const auto s_t = detail::action_rate(pair, c.hbar());
  detail::require_same_grid(wf.grid(), pair.before->grid(), "hamilton_jacobi_residual");
  const Mask valid = mask_and(mask_and(wf.valid, pair.before->valid), pair.after->valid);
  auto out = detail::hj_assemble(wf, flow, u, c, c0, s_t, valid, opt);

  const auto rho_t = detail::density_rate(pair);
  const auto grad_rho = detail::density_gradient(wf, opt);
  for (std::size_t i = 0; i < wf.grid().size(); ++i) {
    if (!out.residual.valid[i]) continue;
    const double dlnrho_dt = (rho_t[i] + detail::dot(flow.v, grad_rho, i)) / wf.rho[i];
    out.viscous_term[i] = -opt.nu * c.mass() * dlnrho_dt;
  }
  return out;
}

/// Same residual with an analytic dS/dt evaluated at wf.time.
inline HamiltonJacobiResidual hamilton_jacobi_residual(const WaveField& wf, const FlowField& flow,
                                                       const ScalarField& u, const PhysicalConstants& c,
                                                       double c0, const ActionRate& rate,
                                                       const ResidualOptions& opt = {}) {
  detail::require(static_cast<bool>(rate), "hamilton_jacobi_residual: missing time derivative");
  const auto s_t = ScalarField::sample(wf.grid(), [&](double x, double y) { return rate(x, y, wf.time); });
  return detail::hj_assemble(wf, flow, u, c, c0, s_t, wf.valid, opt);
}

/// Continuity residual at the instant of wf, which the pair must bracket.
/// The C-form uses the chain rule on the same discrete derivatives, so
/// 2 rho * c_form == rho_form - rho div(v_R) to round-off.
inline ContinuityResidual continuity_residual(const WaveField& wf, const SnapshotPair& pair,
                                              const FlowField& flow, const ResidualOptions& opt = {}) {
  const Grid& g = wf.grid();
  const auto rho_t = detail::density_rate(pair);
  detail::require_same_grid(g, pair.before->grid(), "continuity_residual");
  detail::require_same_grid(g, pair.after->grid(), "continuity_residual");
  detail::require_same_grid(g, flow.grid(), "continuity_residual");

  const auto grad_rho = detail::density_gradient(wf, opt);
  const auto div_v = divergence(flow.v, opt.stencil);
  const auto div_vs = divergence(flow.v_s, opt.stencil);

  Mask valid = mask_and(flow.valid, mask_and(pair.before->valid, pair.after->valid));
  valid = stencil_support(valid, g, opt.stencil);
  ContinuityResidual out{{ScalarField(g), valid}, {ScalarField(g), valid}, {ScalarField(g), valid}, 0.0, 0.0};
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!valid[i]) continue;
    const double rho = wf.rho[i];
    const double advect = detail::dot(flow.v, grad_rho, i);
    out.rho_form.values[i] = rho_t[i] + advect + rho * div_v[i];
    // C_t = rho_t / 2 rho, grad C = grad rho / 2 rho
    out.c_form.values[i] = (rho_t[i] + advect) / (2.0 * rho) + 0.5 * div_vs[i];
    out.laplacian_identity.values[i] = div_vs[i] + (rho_t[i] + advect) / rho;
  }
  out.l2 = l2_norm(out.rho_form.values, valid);
  out.max_abs = max_abs(out.rho_form.values, valid);
  return out;
}

}  // namespace qhydro
