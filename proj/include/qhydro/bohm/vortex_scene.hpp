#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qhydro/bohm/seeds.hpp"
#include "qhydro/core/constants.hpp"
#include "qhydro/core/field.hpp"

namespace qhydro {

/// Steady plane flow past a cylinder of radius R at the origin: uniform
/// stream u_inf along x, a doublet of strength u_inf R^2 (the `dipole`
/// toggle) and a point vortex of circulation Gamma (counter-clockwise
/// positive).
struct VortexSceneSpec {
  double u_inf = 1.0;
  double cylinder_radius = 1.0;
  double circulation = 0.0;
  bool dipole = true;
  double x_min = -6.0, x_max = 6.0, y_min = -4.0, y_max = 4.0;

  void validate() const {
    detail::require(std::isfinite(u_inf) && std::isfinite(circulation), "scene: non-finite parameter");
    detail::require(cylinder_radius > 0.0, "scene: cylinder_radius must be > 0");
    detail::require(u_inf != 0.0 || circulation != 0.0, "scene: u_inf and circulation are both zero");
    const double m = 3.0 * cylinder_radius;
    detail::require(x_min <= -m && x_max >= m && y_min <= -m && y_max >= m,
                    "scene: domain must contain the cylinder with a margin of 2 radii");
  }

  bool inside_box(const Point& p) const {
    return p[0] >= x_min && p[0] <= x_max && p[1] >= y_min && p[1] <= y_max;
  }

  double doublet() const { return dipole ? u_inf * cylinder_radius * cylinder_radius : 0.0; }

  Point velocity(const Point& p) const {
    const double x = p[0], y = p[1], r2 = x * x + y * y, r4 = r2 * r2;
    const double d = doublet(), g = circulation / (2.0 * kPi);
    return {u_inf - d * (x * x - y * y) / r4 - g * y / r2, -2.0 * d * x * y / r4 + g * x / r2};
  }

  /// u = d(psi)/dy, v = -d(psi)/dx; psi = 0 on the cylinder when the doublet is on.
  double stream(const Point& p) const {
    const double x = p[0], y = p[1], r2 = x * x + y * y;
    return u_inf * y - doublet() * y / r2 - circulation / (4.0 * kPi) * std::log(r2 / (cylinder_radius * cylinder_radius));
  }
};

/// Closed-form stagnation points of the superposed flow.
inline std::vector<Point> stagnation_points(const VortexSceneSpec& s) {
  s.validate();
  const double u = s.u_inf, R = s.cylinder_radius, g = s.circulation;
  if (u == 0.0) return {};
  if (!s.dipole) return {Point{0.0, g / (2.0 * kPi * u)}};
  const double q = g / (4.0 * kPi * u * R);
  if (std::abs(q) <= 1.0) {
    const double c = std::sqrt(1.0 - q * q);
    if (c == 0.0) return {Point{0.0, q * R}};
    return {Point{-R * c, R * q}, Point{R * c, R * q}};
  }
  // x = 0, u y^2 - g y / (2 pi) + u R^2 = 0; keep the root outside the body
  const double b = -g / (2.0 * kPi), disc = b * b - 4.0 * u * u * R * R;
  const double big = (-b - std::copysign(std::sqrt(disc), b)) / (2.0 * u);
  const double small = u * R * R / (u * big);
  return {Point{0.0, std::abs(big) > R ? big : small}};
}

struct Streamline {
  std::vector<double> s;  // arc length
  std::vector<Point> points;
  std::vector<double> stream;
  std::string stop;  // "boundary", "stagnation", "closed", "cylinder", "length"
};

struct StreamlineOptions {
  double tol = 1e-11;        // per-step position error (step doubling)
  double max_step_rel = 0.05; // of the radius
  double stagnation_speed = 1e-9;  // relative to the reference speed
  std::size_t grid_points = 129;   // stream-function field per axis
};

struct FlowScene {
  VortexSceneSpec spec;
  std::vector<Streamline> lines;
  std::vector<Point> rejected_seeds;
  std::vector<Point> stagnation;
  ScalarField stream_field;
  Mask stream_valid;  // 0 inside the cylinder
  std::vector<std::string> warnings;
};

namespace detail {

inline Streamline trace_streamline(const VortexSceneSpec& sc, Point p, const StreamlineOptions& opt, bool closed_orbit) {
  const double R = sc.cylinder_radius;
  const double vref = std::max(std::abs(sc.u_inf), std::abs(sc.circulation) / (2.0 * kPi * R));
  const double hmax = opt.max_step_rel * R;
  const double max_len = 200.0 * ((sc.x_max - sc.x_min) + (sc.y_max - sc.y_min));

  auto dir = [&](const Point& q, bool& slow) {
    const Point v = sc.velocity(q);
    const double sp = std::hypot(v[0], v[1]);
    slow = sp < opt.stagnation_speed * vref;
    return slow ? Point{0.0, 0.0} : Point{v[0] / sp, v[1] / sp};
  };
  auto rk4 = [&](const Point& q, double h, bool& slow) {
    bool s1 = false, s2 = false, s3 = false, s4 = false;
    const Point k1 = dir(q, s1);
    const Point k2 = dir({q[0] + 0.5 * h * k1[0], q[1] + 0.5 * h * k1[1]}, s2);
    const Point k3 = dir({q[0] + 0.5 * h * k2[0], q[1] + 0.5 * h * k2[1]}, s3);
    const Point k4 = dir({q[0] + h * k3[0], q[1] + h * k3[1]}, s4);
    // a stage pointing against the first one means the step straddles a stagnation point
    const bool flip = k1[0] * k2[0] + k1[1] * k2[1] < 0.0 || k1[0] * k3[0] + k1[1] * k3[1] < 0.0 ||
                      k1[0] * k4[0] + k1[1] * k4[1] < 0.0;
    slow = s1 || s2 || s3 || s4 || flip;
    return Point{q[0] + h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
                 q[1] + h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
  };

  Streamline line;
  double s = 0.0, h = hmax, angle = 0.0;
  line.s.push_back(0.0);
  line.points.push_back(p);
  line.stream.push_back(sc.stream(p));
  while (true) {
    bool slow = false;
    dir(p, slow);
    if (slow) {
      line.stop = "stagnation";
      break;
    }
    if (s >= max_len) {
      line.stop = "length";
      break;
    }
    Point full{}, half{}, next{};
    double err = 0.0;
    bool reversed = false;
    const Point d0 = dir(p, slow);
    for (int tries = 0; tries < 80; ++tries) {
      bool s1 = false, s2 = false, s3 = false, s4 = false;
      full = rk4(p, h, s1);
      half = rk4(rk4(p, 0.5 * h, s2), 0.5 * h, s3);
      err = std::hypot(full[0] - half[0], full[1] - half[1]);
      next = {half[0] + (half[0] - full[0]) / 15.0, half[1] + (half[1] - full[1]) / 15.0};
      const Point d1 = dir(next, s4);
      reversed = d0[0] * d1[0] + d0[1] * d1[1] < 0.0;
      if (err <= opt.tol && !(s1 || s2 || s3 || s4) && !reversed) break;
      if (h < 1e-12 * R) break;
      h *= 0.5;
    }
    if (reversed || h < 1e-12 * R) {
      // the remaining gap to the stagnation point is below the step floor
      line.stop = "stagnation";
      break;
    }
    if (closed_orbit) {
      const double da = std::remainder(std::atan2(next[1], next[0]) - std::atan2(p[1], p[0]), 2.0 * kPi);
      if (std::abs(angle + da) >= 2.0 * kPi) {
        // land on the starting ray by one shortened step
        const double frac = (2.0 * kPi - std::abs(angle)) / std::abs(da);
        bool sl = false;
        next = rk4(p, frac * h, sl);
        s += frac * h;
        line.s.push_back(s);
        line.points.push_back(next);
        line.stream.push_back(sc.stream(next));
        line.stop = "closed";
        break;
      }
      angle += da;
    }
    if (!sc.inside_box(next)) {
      line.stop = "boundary";
      break;
    }
    if (std::hypot(next[0], next[1]) < R) {
      line.stop = "cylinder";
      break;
    }
    p = next;
    s += h;
    line.s.push_back(s);
    line.points.push_back(p);
    line.stream.push_back(sc.stream(p));
    h = std::min(hmax, err > 0.0 ? 0.9 * h * std::pow(opt.tol / err, 0.2) : 2.0 * h);
  }
  return line;
}

}  // namespace detail

/// Traces streamlines through the closed-form velocity (arc-length RK4 with
/// step doubling). Default seeds sit at (i + 0.5)/n along the inflow edge;
/// with u_inf = 0 they sit on the +x axis and each orbit is traced once.
inline FlowScene streamlines_around_vortex(const VortexSceneSpec& scene, std::vector<Point> seeds,
                                           const StreamlineOptions& opt = {}) {
  scene.validate();
  FlowScene out;
  out.spec = scene;
  out.stagnation = stagnation_points(scene);
  const double R = scene.cylinder_radius;
  const bool orbit = scene.u_inf == 0.0;
  for (const Point& p : seeds) {
    if (std::hypot(p[0], p[1]) <= R || !scene.inside_box(p)) {
      out.rejected_seeds.push_back(p);
      continue;
    }
    out.lines.push_back(detail::trace_streamline(scene, p, opt, orbit));
  }
  if (!out.rejected_seeds.empty())
    out.warnings.push_back("streamlines: " + std::to_string(out.rejected_seeds.size()) +
                           " seeds inside the cylinder or outside the domain were rejected");

  const auto n = opt.grid_points;
  const Grid g = Grid::plane({scene.x_min, scene.x_max, n}, {scene.y_min, scene.y_max, n}, Boundary::reflecting);
  out.stream_field = ScalarField(g);
  out.stream_valid.assign(g.size(), 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point p{g.coord(0, g.ix(i)), g.coord(1, g.iy(i))};
    if (std::hypot(p[0], p[1]) <= R) {
      out.stream_valid[i] = 0;
    } else {
      out.stream_field[i] = scene.stream(p);
    }
  }
  return out;
}

inline std::vector<Point> default_scene_seeds(const VortexSceneSpec& scene, std::size_t n_lines) {
  scene.validate();
  detail::require(n_lines >= 1, "streamlines: n_lines must be >= 1");
  std::vector<Point> seeds;
  for (std::size_t i = 0; i < n_lines; ++i) {
    const double f = (static_cast<double>(i) + 0.5) / static_cast<double>(n_lines);
    if (scene.u_inf == 0.0) {
      const double r0 = 1.05 * scene.cylinder_radius, r1 = 0.95 * std::min(scene.x_max, std::min(scene.y_max, -scene.y_min));
      seeds.push_back({r0 + f * (r1 - r0), 0.0});
    } else {
      const double x = scene.u_inf > 0.0 ? scene.x_min : scene.x_max;
      seeds.push_back({x, scene.y_min + f * (scene.y_max - scene.y_min)});
    }
  }
  return seeds;
}

inline FlowScene streamlines_around_vortex(const VortexSceneSpec& scene, std::size_t n_lines,
                                           const StreamlineOptions& opt = {}) {
  return streamlines_around_vortex(scene, default_scene_seeds(scene, n_lines), opt);
}

}  // namespace qhydro
