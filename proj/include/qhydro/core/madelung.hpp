#pragma once

#include <algorithm>
#include <cmath>

#include "qhydro/core/constants.hpp"
#include "qhydro/core/differential.hpp"
#include "qhydro/core/field.hpp"

namespace qhydro {

/// Algebraic route used to evaluate the quantum potential. All three are
/// identical in the continuum; they differ in discretization error.
///  - log_amplitude:    Q = -2 m D^2 (lap C + |grad C|^2),   C = ln(rho)/2
///  - amplitude:        Q = -2 m D^2 lap R / R,              R = sqrt(rho)
///  - gradient_squared: Q = m D^2/2 |grad rho/rho|^2 - m D^2 lap rho / rho
/// The log form is exact under central differences for Gaussian densities.
enum class QuantumPotentialForm { log_amplitude, amplitude, gradient_squared };

/// Route for the two pressures. log_density computes grad rho and lap rho
/// through C = ln(rho)/2 and matches QuantumPotentialForm::log_amplitude to
/// round-off; direct differentiates rho itself.
enum class PressureForm { log_density, direct };

struct DensityOptions {
  double rho_floor_rel = 1e-12;
  Stencil stencil = Stencil::central;
};

namespace detail {

inline double density_floor(const ScalarField& rho, double rel) {
  double m = 0.0;
  for (double r : rho.raw()) {
    require(std::isfinite(r) && r >= 0.0, "density must be finite and non-negative");
    m = std::max(m, r);
  }
  require(m > 0.0, "density vanishes identically");
  return rel * m;
}

inline ScalarField log_amplitude(const ScalarField& rho, double floor) {
  return rho.map([floor](double r) { return 0.5 * std::log(std::max(r, floor)); });
}

inline ScalarField grad_squared(const VectorField& g) {
  ScalarField out = g.comp[0].map([](double v) { return v * v; });
  if (g.dim() == 2)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += g.comp[1][i] * g.comp[1][i];
  return out;
}

}  // namespace detail

/// P1 = -D^2 lap(m rho) and P2 = (D^2/2) |grad(m rho)|^2 / (m rho).
struct PressureTerms {
  ScalarField p1;
  ScalarField p2;
  /// 1 where rho < rho_floor and P2 used the floored denominator.
  Mask floored;
  bool any_floored = false;
};

inline PressureTerms pressure_terms(const ScalarField& rho, const PhysicalConstants& c,
                                    const DensityOptions& opt = {},
                                    PressureForm form = PressureForm::log_density) {
  const double floor = detail::density_floor(rho, opt.rho_floor_rel);
  const double m = c.mass();
  const double d2 = c.diffusion() * c.diffusion();
  const Grid& g = rho.grid();

  PressureTerms out{ScalarField(g), ScalarField(g), Mask(g.size(), 0), false};
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (rho[i] < floor) {
      out.floored[i] = 1;
      out.any_floored = true;
    }
  }

  if (form == PressureForm::log_density) {
    const auto cr = detail::log_amplitude(rho, floor);
    const auto grad_c = gradient(cr, opt.stencil);
    const auto lap_c = laplacian(cr, opt.stencil);
    const auto gc2 = detail::grad_squared(grad_c);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double r = std::max(rho[i], floor);
      // grad rho = 2 rho grad C, lap rho = 2 rho (lap C + 2 |grad C|^2)
      out.p1[i] = -d2 * m * 2.0 * r * (lap_c[i] + 2.0 * gc2[i]);
      out.p2[i] = 2.0 * d2 * m * r * gc2[i];
    }
  } else {
    const auto lap_rho = laplacian(rho, opt.stencil);
    const auto g2 = detail::grad_squared(gradient(rho, opt.stencil));
    for (std::size_t i = 0; i < g.size(); ++i) {
      out.p1[i] = -d2 * m * lap_rho[i];
      out.p2[i] = 0.5 * d2 * m * g2[i] / std::max(rho[i], floor);
    }
  }
  return out;
}

/// Bohm quantum potential, masked (value 0, invalid) where rho <= rho_floor
/// or where the stencil reaches such a node.
inline MaskedField quantum_potential(const ScalarField& rho, const PhysicalConstants& c,
                                     const DensityOptions& opt = {},
                                     QuantumPotentialForm form = QuantumPotentialForm::log_amplitude) {
  const double floor = detail::density_floor(rho, opt.rho_floor_rel);
  const double m = c.mass();
  const double d2 = c.diffusion() * c.diffusion();
  const Grid& g = rho.grid();

  MaskedField q{ScalarField(g), Mask(g.size(), 0)};
  switch (form) {
    case QuantumPotentialForm::log_amplitude: {
      const auto cr = detail::log_amplitude(rho, floor);
      const auto lap_c = laplacian(cr, opt.stencil);
      const auto gc2 = detail::grad_squared(gradient(cr, opt.stencil));
      for (std::size_t i = 0; i < g.size(); ++i) q.values[i] = -2.0 * m * d2 * (lap_c[i] + gc2[i]);
      break;
    }
    case QuantumPotentialForm::amplitude: {
      const auto amp = rho.map([](double r) { return std::sqrt(r); });
      const auto lap_r = laplacian(amp, opt.stencil);
      for (std::size_t i = 0; i < g.size(); ++i)
        q.values[i] = -2.0 * m * d2 * lap_r[i] / std::max(amp[i], std::sqrt(floor));
      break;
    }
    case QuantumPotentialForm::gradient_squared: {
      const auto lap_rho = laplacian(rho, opt.stencil);
      const auto g2 = detail::grad_squared(gradient(rho, opt.stencil));
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = std::max(rho[i], floor);
        q.values[i] = 0.5 * m * d2 * g2[i] / (r * r) - m * d2 * lap_rho[i] / r;
      }
      break;
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) q.valid[i] = rho[i] > floor ? 1 : 0;
  // a node next to a floored one sees the floor through its stencil
  q.valid = stencil_support(q.valid, g, opt.stencil);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!q.valid[i]) q.values[i] = 0.0;
  return q;
}

/// Both sides of rho grad(P/rho) = grad P - P grad ln rho for a pressure P
/// on a strictly positive density.
struct ModifiedPressureGradient {
  VectorField quotient_form;
  VectorField expanded_form;
};

inline ModifiedPressureGradient modified_pressure_gradient(const ScalarField& pressure,
                                                           const ScalarField& rho,
                                                           Stencil s = Stencil::central) {
  for (double r : rho.raw()) detail::require(r > 0.0, "modified pressure: density must be positive");
  const Grid& g = rho.grid();
  ScalarField quotient(g), log_rho(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    quotient[i] = pressure[i] / rho[i];
    log_rho[i] = std::log(rho[i]);
  }
  ModifiedPressureGradient out{gradient(quotient, s), gradient(pressure, s)};
  const auto gl = gradient(log_rho, s);
  for (int a = 0; a < g.dim(); ++a) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      out.quotient_form.comp[a][i] *= rho[i];
      out.expanded_form.comp[a][i] -= pressure[i] * gl.comp[a][i];
    }
  }
  return out;
}

}  // namespace qhydro
