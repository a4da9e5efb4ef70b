#pragma once

#include <cmath>
#include <vector>

#include "qhydro/torus/shape.hpp"

namespace qhydro {

/// Samples of the curve over [t_begin, t_begin + period]. For a closed ring
/// the period is the shortest closing time and the last sample repeats the
/// first point. axis_angle is the tube angle advanced since t_begin;
/// orientation_tag is +1 / -1 on alternate full tube revolutions.
struct HelicoidalRing {
  TorusShape shape;
  std::vector<double> t;
  std::vector<Vec3> samples;
  std::vector<double> axis_angle;
  std::vector<int> orientation_tag;
  long turns_about_tube = 0;
  long turns_about_axis = 0;
  bool closed = false;
  double period = 0.0;
  double closure_gap = 0.0;
};

struct RingOptions {
  std::size_t samples_per_tube_turn = 256;
  double open_tube_turns = 8.0;  // extent of an open ring
  double t_begin = 0.0;
};

/// With omega0 / omega1 = p / q (lowest terms) the ring closes after
/// T = 2 pi p / omega0, making p turns about the tube and q about the z
/// axis. t_i = t_begin + T (i / N) so that halving N keeps every second
/// sample bit-for-bit.
inline HelicoidalRing helicoidal_ring(const TorusShape& s, const RingOptions& opt = {}) {
  s.validate();
  detail::require(opt.samples_per_tube_turn >= 64, "helicoidal_ring: need >= 64 samples per tube turn");
  HelicoidalRing ring;
  ring.shape = s;
  double tube_turns = opt.open_tube_turns;
  if (s.ratio) {
    ring.closed = true;
    ring.turns_about_tube = s.ratio->num;
    ring.turns_about_axis = s.ratio->den;
    tube_turns = static_cast<double>(s.ratio->num);
  } else {
    detail::require(opt.open_tube_turns > 0.0, "helicoidal_ring: open_tube_turns must be > 0");
  }
  ring.period = 2.0 * kPi * tube_turns / s.omega0;
  const auto n = static_cast<std::size_t>(std::ceil(tube_turns * static_cast<double>(opt.samples_per_tube_turn)));
  for (std::size_t i = 0; i <= n; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(n);
    const double t = opt.t_begin + ring.period * frac;
    const double angle = s.omega0 * (t - opt.t_begin);
    ring.t.push_back(t);
    ring.samples.push_back(torus_point(s, t));
    ring.axis_angle.push_back(angle);
    // revolution index; the guard keeps exact multiples of 2 pi in the revolution they close
    const double rev = std::floor(angle / (2.0 * kPi) * (1.0 - 1e-14));
    ring.orientation_tag.push_back(static_cast<long>(rev) % 2 == 0 ? 1 : -1);
  }
  ring.closure_gap = length(ring.samples.back() - ring.samples.front());
  return ring;
}

/// Same ring with a new torus radius b.
inline HelicoidalRing reshape_ring(const HelicoidalRing& ring, double b, const RingOptions& opt = {}) {
  TorusShape s = ring.shape;
  s.b = b;
  return helicoidal_ring(s, opt);
}

}  // namespace qhydro
