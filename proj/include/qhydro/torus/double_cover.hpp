#pragma once

#include <cmath>
#include <vector>

#include "qhydro/torus/ring.hpp"

namespace qhydro {

enum class Traversal { forward, reverse };

/// Frame state after each full tube revolution, starting at the top of the
/// tube (theta = pi/2). `direction_dot` compares the transported direction
/// of motion with the forward direction at the start; `normal_dot` compares
/// the transported normal with the initial one.
struct CoverState {
  double axis_angle_deg = 0.0;
  double direction_dot = 0.0;
  double normal_dot = 0.0;
  int orientation_tag = 1;
};

struct DoubleCoverTrace {
  std::vector<CoverState> states;  // at 0, 360 and 720 degrees
  bool degenerate = false;         // b <= 1e-3 a
  std::size_t samples = 0;
};

namespace detail {

inline Vec3 ring_velocity(const TorusShape& s, double t) {
  const double th = s.omega0 * t + s.phi0;
  const double ph = s.omega1 * t + s.phi1;
  const double rho = s.b + s.a * std::cos(th);
  const double drho = -s.a * std::sin(th) * s.omega0;
  return {drho * std::cos(ph) - rho * std::sin(ph) * s.omega1, drho * std::sin(ph) + rho * std::cos(ph) * s.omega1,
          s.a * std::cos(th) * s.omega0};
}

inline Vec3 reflect(const Vec3& v, const Vec3& axis, double axis2) {
  return v - (2.0 * qhydro::dot(axis, v) / axis2) * axis;
}

}  // namespace detail

/// Rotation-minimizing frame transported by double reflection over
/// `samples` equal time steps spanning the closed two-turn ring.
inline DoubleCoverTrace double_cover_rotation(const HelicoidalRing& ring, Traversal dir = Traversal::forward,
                                              std::size_t samples = 10000) {
  detail::require(ring.closed, "double_cover_rotation: ring must be closed");
  detail::require(ring.turns_about_tube == 2, "double_cover_rotation: ring must make two tube turns");
  detail::require(samples >= 128 && samples % 2 == 0, "double_cover_rotation: samples must be even and >= 128");
  const TorusShape& s = ring.shape;
  DoubleCoverTrace out;
  out.samples = samples;
  out.degenerate = s.b <= 1e-3 * s.a;

  double t_start = (0.5 * kPi - s.phi0) / s.omega0;
  if (t_start < 0.0) t_start += 2.0 * kPi / s.omega0;
  const double sign = dir == Traversal::forward ? 1.0 : -1.0;
  auto time_at = [&](std::size_t i) {
    return t_start + sign * ring.period * (static_cast<double>(i) / static_cast<double>(samples));
  };
  auto tangent_at = [&](std::size_t i) { return normalized(sign * detail::ring_velocity(s, time_at(i))); };

  const Vec3 reference = normalized(detail::ring_velocity(s, t_start));
  Vec3 x = torus_point(s, time_at(0));
  Vec3 t = tangent_at(0);
  // initial normal: the tube-normal direction, orthogonalized against t
  const Vec3 n_guess = tube_normal(0.5 * kPi, s.omega1 * t_start + s.phi1);
  Vec3 r = normalized(n_guess - dot(n_guess, t) * t);
  const Vec3 r0 = r;

  auto record = [&](std::size_t i) {
    CoverState c;
    c.axis_angle_deg = 360.0 * 2.0 * static_cast<double>(i) / static_cast<double>(samples);
    c.direction_dot = dot(t, reference);
    c.normal_dot = dot(r, r0);
    c.orientation_tag = (2 * i / samples) % 2 == 0 ? 1 : -1;
    out.states.push_back(c);
  };
  record(0);
  for (std::size_t i = 1; i <= samples; ++i) {
    const Vec3 x1 = torus_point(s, time_at(i));
    const Vec3 t1 = tangent_at(i);
    const Vec3 v1 = x1 - x;
    const double c1 = dot(v1, v1);
    const Vec3 rl = detail::reflect(r, v1, c1);
    const Vec3 tl = detail::reflect(t, v1, c1);
    const Vec3 v2 = t1 - tl;
    const double c2 = dot(v2, v2);
    r = c2 > 0.0 ? detail::reflect(rl, v2, c2) : rl;
    t = t1;
    x = x1;
    if (i == samples / 2 || i == samples) record(i);
  }
  return out;
}

}  // namespace qhydro
