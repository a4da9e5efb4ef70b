#pragma once

#include <cmath>

#include "qhydro/core/error.hpp"

namespace qhydro {

/// Carrier mass and reduced Planck constant. The diffusion coefficient of
/// the underlying Wiener process is always derived, never stored.
class PhysicalConstants {
 public:
  PhysicalConstants() = default;
  PhysicalConstants(double mass, double hbar) : mass_(mass), hbar_(hbar) {
    detail::require(std::isfinite(mass) && mass > 0.0, "constants: mass must be > 0");
    detail::require(std::isfinite(hbar) && hbar > 0.0, "constants: hbar must be > 0");
  }

  double mass() const { return mass_; }
  double hbar() const { return hbar_; }
  double diffusion() const { return hbar_ / (2.0 * mass_); }

 private:
  double mass_ = 1.0;
  double hbar_ = 1.0;
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace qhydro
