#pragma once

#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "qhydro/core/constants.hpp"
#include "qhydro/core/error.hpp"

namespace qhydro {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double length(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return (1.0 / length(a)) * a; }

/// Positive rational in lowest terms.
struct Rational {
  long num = 1;
  long den = 1;

  static Rational make(long p, long q) {
    detail::require(p > 0 && q > 0, "rational: numerator and denominator must be > 0");
    const long g = std::gcd(p, q);
    return {p / g, q / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Torus of tube radius a around a circle of radius b in the (x, y) plane,
/// traversed with tube frequency omega0 and axial frequency omega1.
/// `ratio`, when present, is omega0 / omega1 as an exact rational; without
/// it the ring is treated as open.
struct TorusShape {
  double a = 2.0;
  double b = 4.0;
  double omega0 = 1.0;
  double omega1 = 0.5;
  double phi0 = 0.0;
  double phi1 = 0.0;
  std::optional<Rational> ratio = Rational{2, 1};

  /// omega0 = (p / q) omega1, with the ratio kept exact.
  static TorusShape with_ratio(double a, double b, long p, long q, double omega1 = 1.0) {
    TorusShape s;
    s.a = a;
    s.b = b;
    s.ratio = Rational::make(p, q);
    s.omega1 = omega1;
    s.omega0 = s.ratio->value() * omega1;
    return s;
  }

  void validate() const {
    detail::require(std::isfinite(a) && a > 0.0, "torus: a must be > 0");
    detail::require(std::isfinite(b) && b >= 0.0, "torus: b must be >= 0");
    detail::require(std::isfinite(omega0) && std::isfinite(omega1) && omega0 > 0.0 && omega1 > 0.0,
                    "torus: frequencies must be > 0");
    detail::require(phi0 >= 0.0 && phi0 < 2.0 * kPi && phi1 >= 0.0 && phi1 < 2.0 * kPi,
                    "torus: phases must lie in [0, 2 pi)");
    if (ratio) {
      detail::require(ratio->num > 0 && ratio->den > 0 && std::gcd(ratio->num, ratio->den) == 1,
                      "torus: ratio must be positive and in lowest terms");
      detail::require(std::abs(omega0 / omega1 - ratio->value()) <= 1e-12 * ratio->value(),
                      "torus: omega0 / omega1 disagrees with the exact ratio");
    }
  }
};

/// Point on the surface at tube angle theta and axial angle phi.
inline Vec3 surface_point(double a, double b, double theta, double phi) {
  const double rho = b + a * std::cos(theta);
  return {rho * std::cos(phi), rho * std::sin(phi), a * std::sin(theta)};
}

/// Outward unit normal of the tube circle at theta (independent of b).
inline Vec3 tube_normal(double theta, double phi) {
  return {std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), std::sin(theta)};
}

/// Position at time t: theta = omega0 t + phi0, phi = omega1 t + phi1.
inline Vec3 torus_point(const TorusShape& s, double t) {
  return surface_point(s.a, s.b, s.omega0 * t + s.phi0, s.omega1 * t + s.phi1);
}

enum class TorusRegime { ring, horn, spindle, degenerate };

inline std::string to_string(TorusRegime r) {
  switch (r) {
    case TorusRegime::ring: return "ring";
    case TorusRegime::horn: return "horn";
    case TorusRegime::spindle: return "spindle";
    default: return "degenerate";
  }
}

inline TorusRegime regime(double a, double b) {
  if (b == 0.0) return TorusRegime::degenerate;
  if (b > a) return TorusRegime::ring;
  if (b == a) return TorusRegime::horn;
  return TorusRegime::spindle;
}

/// Closed-form V = 2 pi^2 b a^2 and S = 4 pi^2 b a. These are unsigned
/// measures only for b >= a; the regime tag says which case applies.
struct TorusMeasures {
  double volume = 0.0;
  double area = 0.0;
  TorusRegime regime = TorusRegime::ring;
};

inline TorusMeasures torus_measures(double a, double b) {
  detail::require(std::isfinite(a) && a >= 0.0 && std::isfinite(b) && b >= 0.0, "torus_measures: a, b must be >= 0");
  TorusMeasures m;
  m.volume = 2.0 * kPi * kPi * b * a * a;
  m.area = 4.0 * kPi * kPi * b * a;
  m.regime = a > 0.0 ? regime(a, b) : TorusRegime::degenerate;
  return m;
}

}  // namespace qhydro
