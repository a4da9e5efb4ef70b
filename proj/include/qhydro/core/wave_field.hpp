#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qhydro/core/constants.hpp"
#include "qhydro/core/field.hpp"

namespace qhydro {

struct PolarOptions {
  /// Density below rho_floor_rel * max(rho) is treated as a node: phase and
  /// quantum potential are masked there.
  double rho_floor_rel = 1e-12;
  /// Fraction of masked nodes above which a diagnostic warning is attached.
  double node_fraction_warn = 0.75;
};

/// Complex wave function with its polar (Madelung) factors:
/// psi = sqrt(rho) exp(i S / hbar), c_rho = ln(rho) / 2.
struct WaveField {
  ComplexField psi;
  ScalarField rho;
  ScalarField action;
  ScalarField c_rho;
  Mask valid;
  double rho_floor = 0.0;
  double time = 0.0;
  /// False when the 2D unwrap found a column mismatch above pi (a phase
  /// vortex); the action then holds the row sweep and is not a potential.
  bool phase_consistent = true;
  std::vector<std::string> warnings;

  const Grid& grid() const { return psi.grid(); }
};

namespace detail {

inline double wrap_phase(double d) {
  // (-pi, pi]
  d = std::remainder(d, 2.0 * kPi);
  if (d <= -kPi) d += 2.0 * kPi;
  return d;
}

}  // namespace detail

/// Polar decomposition with phase unwrapping from the grid origin. 1D is a
/// cumulative sweep. 2D unwraps the first column along y, then every row
/// along x, and checks the result for consistency along columns.
inline WaveField to_polar(const ComplexField& psi, const PhysicalConstants& c,
                          const PolarOptions& opt = {}, double time = 0.0) {
  const Grid& g = psi.grid();
  WaveField wf;
  wf.psi = psi;
  wf.time = time;
  wf.rho = ScalarField(g);
  wf.action = ScalarField(g);
  wf.c_rho = ScalarField(g);
  wf.valid = Mask(g.size(), 0);

  double rho_max = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx z = psi[i];
    detail::require(std::isfinite(z.real()) && std::isfinite(z.imag()),
                    "to_polar: non-finite wave function value");
    wf.rho[i] = std::norm(z);
    rho_max = std::max(rho_max, wf.rho[i]);
  }
  detail::require(rho_max > 0.0, "to_polar: wave function vanishes identically");
  wf.rho_floor = opt.rho_floor_rel * rho_max;

  std::size_t nodes = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    wf.valid[i] = wf.rho[i] > wf.rho_floor ? 1 : 0;
    if (!wf.valid[i]) ++nodes;
    wf.c_rho[i] = 0.5 * std::log(std::max(wf.rho[i], wf.rho_floor));
  }
  const double node_fraction = static_cast<double>(nodes) / static_cast<double>(g.size());
  if (node_fraction > opt.node_fraction_warn) {
    wf.warnings.push_back("to_polar: " + std::to_string(node_fraction) +
                          " of nodes below rho_floor; phase undefined there");
  }

  std::vector<double> phase(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) phase[i] = std::arg(psi[i]);

  const std::size_t nx = g.n(0);
  const std::size_t ny = g.dim() == 2 ? g.n(1) : 1;
  std::vector<double> unwrapped(g.size());
  unwrapped[0] = phase[0];
  for (std::size_t j = 1; j < ny; ++j) {
    const std::size_t a = g.index(0, j - 1), b = g.index(0, j);
    unwrapped[b] = unwrapped[a] + detail::wrap_phase(phase[b] - phase[a]);
  }
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 1; i < nx; ++i) {
      const std::size_t a = g.index(i - 1, j), b = g.index(i, j);
      unwrapped[b] = unwrapped[a] + detail::wrap_phase(phase[b] - phase[a]);
    }
  }
  if (ny > 1) {
    for (std::size_t j = 1; j < ny && wf.phase_consistent; ++j) {
      for (std::size_t i = 1; i < nx; ++i) {
        const std::size_t a = g.index(i, j - 1), b = g.index(i, j);
        if (!wf.valid[a] || !wf.valid[b]) continue;
        if (std::abs(unwrapped[b] - unwrapped[a]) > kPi) {
          wf.phase_consistent = false;
          wf.warnings.push_back("to_polar: column mismatch above pi, phase vortex in psi; "
                                "unwrap aborted, supply the solenoidal velocity explicitly");
          break;
        }
      }
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) wf.action[i] = c.hbar() * unwrapped[i];
  return wf;
}

/// sqrt(rho) exp(i S / hbar).
inline ComplexField recompose(const WaveField& wf, const PhysicalConstants& c) {
  ComplexField out(wf.grid());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::polar(std::sqrt(wf.rho[i]), wf.action[i] / c.hbar());
  return out;
}

/// Sum of |psi|^2 with the grid quadrature weights.
inline double norm(const ComplexField& psi) {
  double s = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) s += std::norm(psi[i]) * psi.grid().weight(i);
  return s;
}

inline double norm(const WaveField& wf) { return integrate(wf.rho); }

}  // namespace qhydro
