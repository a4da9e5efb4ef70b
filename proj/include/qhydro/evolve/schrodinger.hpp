#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qhydro/core/differential.hpp"
#include "qhydro/core/fft.hpp"
#include "qhydro/core/wave_field.hpp"
#include "qhydro/evolve/potential.hpp"
#include "qhydro/evolve/tridiagonal.hpp"

namespace qhydro {

enum class Scheme { crank_nicolson, split_step_fourier };

inline std::string to_string(Scheme s) {
  return s == Scheme::crank_nicolson ? "crank_nicolson" : "split_step_fourier";
}

struct EvolutionConfig {
  double dt = 1e-3;
  std::size_t steps = 1;
  Scheme scheme = Scheme::crank_nicolson;
  std::size_t snapshot_stride = 1;
  double t0 = 0.0;
  /// Energy offset C0: the evolution operator is exp(-i (H - C0) t / hbar).
  double energy_offset = 0.0;
  PolarOptions polar{};
  double norm_tolerance = 1e-8;   // on psi0
  double drift_abort = 1e-6;      // |norm(t) - norm(0)|
  double boundary_density = 1e-8; // relative to max(rho)
};

struct EvolutionResult {
  std::vector<WaveField> snapshots;
  ComplexField final_psi;
  double norm_initial = 0.0;
  double norm_final = 0.0;
  double energy_initial = 0.0;
  double energy_final = 0.0;
  std::vector<std::string> warnings;
};

/// <psi|H|psi> with the kinetic term discretized by the given stencil.
inline double energy(const ComplexField& psi, const ScalarField& u, const PhysicalConstants& c,
                     Stencil s = Stencil::central) {
  const auto lap = laplacian(psi, s);
  const double kin = -c.hbar() * c.hbar() / (2.0 * c.mass());
  double e = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    e += std::real(std::conj(psi[i]) * (kin * lap[i] + u[i] * psi[i])) * psi.grid().weight(i);
  return e;
}

/// Cayley (Crank-Nicolson) propagator. 1D solves one tridiagonal system
/// per step. 2D uses Strang-split ADI: half step in x, full step in y, half
/// step in x, with U shared equally between the two axis operators. Every
/// factor is a Cayley transform of a Hermitian matrix, so the step is
/// unitary to round-off. Reflecting grids impose psi = 0 just outside the
/// grid; periodic grids give cyclic systems.
class CrankNicolson {
 public:
  CrankNicolson(const Grid& g, const ScalarField& u, const PhysicalConstants& c, double dt)
      : grid_(g) {
    const double share = g.dim() == 2 ? 0.5 : 1.0;
    const double fx = g.dim() == 2 ? 0.5 : 1.0;
    build(0, fx * dt, share, u, c, x_lhs_, x_rhs_);
    if (g.dim() == 2) build(1, dt, share, u, c, y_lhs_, y_rhs_);
  }

  void step(ComplexField& psi) const {
    sweep(psi, 0, x_lhs_, x_rhs_);
    if (grid_.dim() == 2) {
      sweep(psi, 1, y_lhs_, y_rhs_);
      sweep(psi, 0, x_lhs_, x_rhs_);
    }
  }

 private:
  struct LineOp {
    std::vector<cplx> lower, diag, upper;
  };

  void build(int axis, double dt, double share, const ScalarField& u, const PhysicalConstants& c,
             std::vector<Tridiagonal<cplx>>& lhs, std::vector<LineOp>& rhs) const {
    const std::size_t n = grid_.n(axis);
    const std::size_t lines = grid_.size() / n;
    const double h = grid_.spacing(axis);
    const double kappa = c.hbar() * c.hbar() / (2.0 * c.mass() * h * h);
    const cplx alpha(0.0, dt / (2.0 * c.hbar()));
    for (std::size_t l = 0; l < lines; ++l) {
      std::vector<cplx> lo(n, -alpha * kappa), up(n, -alpha * kappa), dl(n), rl(n, alpha * kappa),
          ru(n, alpha * kappa), dr(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double uk = share * u[axis == 0 ? grid_.index(k, l) : grid_.index(l, k)];
        dl[k] = 1.0 + alpha * (2.0 * kappa + uk);
        dr[k] = 1.0 - alpha * (2.0 * kappa + uk);
      }
      if (!grid_.periodic()) {
        lo[0] = up[n - 1] = rl[0] = ru[n - 1] = 0.0;
      }
      lhs.emplace_back(std::move(lo), std::move(dl), std::move(up), grid_.periodic());
      rhs.push_back({std::move(rl), std::move(dr), std::move(ru)});
    }
  }

  void sweep(ComplexField& psi, int axis, const std::vector<Tridiagonal<cplx>>& lhs,
             const std::vector<LineOp>& rhs) const {
    const std::size_t n = grid_.n(axis);
    std::vector<cplx> line(n), r(n);
    for (std::size_t l = 0; l < lhs.size(); ++l) {
      auto idx = [&](std::size_t k) { return axis == 0 ? grid_.index(k, l) : grid_.index(l, k); };
      for (std::size_t k = 0; k < n; ++k) line[k] = psi[idx(k)];
      const LineOp& op = rhs[l];
      for (std::size_t k = 0; k < n; ++k) {
        const cplx left = k > 0 ? line[k - 1] : line[n - 1];
        const cplx right = k + 1 < n ? line[k + 1] : line[0];
        r[k] = op.lower[k] * left + op.diag[k] * line[k] + op.upper[k] * right;
      }
      auto out = lhs[l].solve(r);
      for (std::size_t k = 0; k < n; ++k) psi[idx(k)] = out[k];
    }
  }

  Grid grid_;
  std::vector<Tridiagonal<cplx>> x_lhs_, y_lhs_;
  std::vector<LineOp> x_rhs_, y_rhs_;
};

/// Strang split-step Fourier propagator: half potential kick, exact free
/// drift in k-space, half potential kick. Periodic grids only.
class SplitStep {
 public:
  SplitStep(const Grid& g, const ScalarField& u, const PhysicalConstants& c, double dt)
      : grid_(g), transform_(g), kick_(g.size()), drift_(g.size()) {
    for (std::size_t i = 0; i < g.size(); ++i) kick_[i] = std::polar(1.0, -u[i] * dt / (2.0 * c.hbar()));
    const auto kx = spectral::wavenumbers(g.n(0), g.length(0));
    const auto ky = g.dim() == 2 ? spectral::wavenumbers(g.n(1), g.length(1)) : std::vector<double>(1, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double k2 = kx[g.ix(i)] * kx[g.ix(i)] + ky[g.iy(i)] * ky[g.iy(i)];
      drift_[i] = std::polar(1.0, -c.hbar() * k2 * dt / (2.0 * c.mass()));
    }
  }

  void step(ComplexField& psi) const {
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= kick_[i];
    auto hat = transform_.forward(std::move(psi.raw()));
    for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= drift_[i];
    psi.raw() = transform_.inverse(std::move(hat));
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= kick_[i];
  }

 private:
  Grid grid_;
  spectral::Transform transform_;
  std::vector<cplx> kick_, drift_;
};

namespace detail {

inline double boundary_density_ratio(const ComplexField& psi) {
  const Grid& g = psi.grid();
  double edge = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = std::norm(psi[i]);
    peak = std::max(peak, r);
    if (g.on_boundary(i)) edge = std::max(edge, r);
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

}  // namespace detail

/// Evolves psi0 under the time-independent potential and returns snapshots
/// at every snapshot_stride steps (and the last step). Throws
/// InvalidArgument on bad input and NumericAbort on norm drift or NaN.
inline EvolutionResult evolve(const ComplexField& psi0, const PotentialSpec& pot, const EvolutionConfig& cfg,
                              const PhysicalConstants& c) {
  const Grid& g = psi0.grid();
  detail::require(std::isfinite(cfg.dt) && cfg.dt > 0.0, "evolve: dt must be > 0");
  detail::require(cfg.steps >= 1, "evolve: steps must be >= 1");
  detail::require(cfg.snapshot_stride >= 1, "evolve: snapshot_stride must be >= 1");
  detail::require(cfg.scheme != Scheme::split_step_fourier || g.periodic(),
                  "evolve: split_step_fourier requires a periodic grid");

  EvolutionResult res;
  res.norm_initial = norm(psi0);
  detail::require(std::abs(res.norm_initial - 1.0) <= cfg.norm_tolerance,
                  "evolve: psi0 is not normalized (norm = " + std::to_string(res.norm_initial) + ")");

  const ScalarField u = evaluate(pot, g, c);
  for (double v : u.raw()) detail::require(std::isfinite(v), "evolve: potential is not finite");

  double h2 = g.spacing(0) * g.spacing(0);
  if (g.dim() == 2) h2 = std::min(h2, g.spacing(1) * g.spacing(1));
  if (cfg.dt > h2 * c.mass() / c.hbar()) {
    res.warnings.push_back("evolve: dt exceeds dx^2 m / hbar; stable, but phase accuracy degrades");
  }

  const Stencil energy_stencil = cfg.scheme == Scheme::split_step_fourier ? Stencil::spectral : Stencil::central;
  res.energy_initial = energy(psi0, u, c, energy_stencil);

  std::optional<CrankNicolson> cn;
  std::optional<SplitStep> ss;
  if (cfg.scheme == Scheme::crank_nicolson) {
    cn.emplace(g, u, c, cfg.dt);
  } else {
    ss.emplace(g, u, c, cfg.dt);
  }
  const cplx offset = std::polar(1.0, cfg.energy_offset * cfg.dt / c.hbar());

  ComplexField psi = psi0;
  bool edge_warned = false;
  auto snapshot = [&](std::size_t k) {
    const double t = cfg.t0 + static_cast<double>(k) * cfg.dt;
    res.snapshots.push_back(to_polar(psi, c, cfg.polar, t));
    if (!edge_warned && detail::boundary_density_ratio(psi) > cfg.boundary_density) {
      edge_warned = true;
      res.warnings.push_back("evolve: density at the grid boundary exceeds " + std::to_string(cfg.boundary_density) +
                             " of its peak at t = " + std::to_string(t));
    }
  };

  snapshot(0);
  for (std::size_t k = 1; k <= cfg.steps; ++k) {
    if (cn) {
      cn->step(psi);
    } else {
      ss->step(psi);
    }
    if (cfg.energy_offset != 0.0)
      for (auto& z : psi.raw()) z *= offset;
    const double nk = norm(psi);
    if (!std::isfinite(nk)) throw NumericAbort("evolve: non-finite wave function at step " + std::to_string(k));
    if (std::abs(nk - res.norm_initial) > cfg.drift_abort) {
      throw NumericAbort("evolve: norm drift " + std::to_string(nk - res.norm_initial) + " at step " +
                         std::to_string(k));
    }
    if (k % cfg.snapshot_stride == 0 || k == cfg.steps) snapshot(k);
  }
  res.norm_final = norm(psi);
  res.energy_final = energy(psi, u, c, energy_stencil);
  res.final_psi = std::move(psi);
  return res;
}

}  // namespace qhydro
