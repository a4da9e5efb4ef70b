#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qhydro/bohm/seeds.hpp"
#include "qhydro/core/flow.hpp"

namespace qhydro {

namespace path_flag {
inline constexpr std::uint8_t exited = 1;       // left a reflecting domain; clipped and stopped
inline constexpr std::uint8_t near_node = 2;    // within node_cells of a masked node; midpoint rule used
inline constexpr std::uint8_t entered_node = 4; // reached a masked cell; stopped
}  // namespace path_flag

struct TrajectoryOptions {
  std::size_t substeps = 8;  // RK4 steps per snapshot interval
  std::size_t node_cells = 2;
  FlowOptions flow{};
};

/// paths[i][k] and velocities[i][k] belong to seed i at times[k]. Positions
/// on periodic grids are unwrapped (continuous in time).
struct TrajectoryBundle {
  std::vector<Point> seeds;
  std::vector<double> times;
  std::vector<std::vector<Point>> paths;
  std::vector<std::vector<Point>> velocities;
  std::vector<std::vector<std::uint8_t>> flags;
  std::vector<std::string> warnings;

  std::uint8_t final_flags(std::size_t i) const {
    std::uint8_t f = 0;
    for (auto v : flags[i]) f |= v;
    return f;
  }
};

namespace detail {

/// Bilinear sampling of a FlowField with periodic wrap or wall clamping.
class FlowSampler {
 public:
  explicit FlowSampler(const Grid& g) : g_(g) {}

  struct Cell {
    std::size_t i0, i1, j0, j1;
    double fx, fy;
    bool inside;
  };

  Cell locate(const Point& p) const {
    Cell c{};
    c.inside = true;
    axis(0, p[0], c.i0, c.i1, c.fx, c.inside);
    if (g_.dim() == 2) {
      axis(1, p[1], c.j0, c.j1, c.fy, c.inside);
    } else {
      c.j0 = c.j1 = 0;
      c.fy = 0.0;
    }
    return c;
  }

  template <typename F>
  double blend(const Cell& c, F&& at) const {
    return (1 - c.fx) * (1 - c.fy) * at(g_.index(c.i0, c.j0)) + c.fx * (1 - c.fy) * at(g_.index(c.i1, c.j0)) +
           (1 - c.fx) * c.fy * at(g_.index(c.i0, c.j1)) + c.fx * c.fy * at(g_.index(c.i1, c.j1));
  }

  template <typename P>
  bool any_corner(const Cell& c, P&& pred) const {
    return pred(g_.index(c.i0, c.j0)) || pred(g_.index(c.i1, c.j0)) || pred(g_.index(c.i0, c.j1)) ||
           pred(g_.index(c.i1, c.j1));
  }

 private:
  void axis(int a, double x, std::size_t& k0, std::size_t& k1, double& f, bool& inside) const {
    const std::size_t n = g_.n(a);
    double u = (x - g_.min(a)) / g_.spacing(a);
    if (g_.periodic()) {
      u = std::fmod(u, static_cast<double>(n));
      if (u < 0) u += static_cast<double>(n);
      k0 = std::min(static_cast<std::size_t>(u), n - 1);
      k1 = (k0 + 1) % n;
    } else {
      if (u < 0.0 || u > static_cast<double>(n - 1)) inside = false;
      u = std::clamp(u, 0.0, static_cast<double>(n - 1));
      k0 = std::min(static_cast<std::size_t>(u), n - 2);
      k1 = k0 + 1;
    }
    f = u - static_cast<double>(k0);
  }

  Grid g_;
};

/// Marks nodes within `cells` (Chebyshev distance) of an invalid node.
inline Mask dilate_invalid(const Mask& valid, const Grid& g, std::size_t cells) {
  Mask near(g.size(), 0);
  const auto r = static_cast<long>(cells);
  const long nx = static_cast<long>(g.n(0)), ny = g.dim() == 2 ? static_cast<long>(g.n(1)) : 1;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    if (valid[idx]) continue;
    const long i = static_cast<long>(g.ix(idx)), j = static_cast<long>(g.iy(idx));
    for (long dj = (ny > 1 ? -r : 0); dj <= (ny > 1 ? r : 0); ++dj) {
      for (long di = -r; di <= r; ++di) {
        long a = i + di, b = j + dj;
        if (g.periodic()) {
          a = ((a % nx) + nx) % nx;
          b = ((b % ny) + ny) % ny;
        } else if (a < 0 || a >= nx || b < 0 || b >= ny) {
          continue;
        }
        near[g.index(static_cast<std::size_t>(a), static_cast<std::size_t>(b))] = 1;
      }
    }
  }
  return near;
}

}  // namespace detail

/// Integrates dx/dt = v(x, t) through equally spaced snapshots with RK4
/// (interval / substeps), v bilinear in space and linear in time. v_R, if
/// given, is added to grad S / m in every snapshot.
inline TrajectoryBundle integrate_bundle(const std::vector<WaveField>& snapshots,
                                         const std::optional<VectorField>& v_r, const std::vector<Point>& seeds,
                                         const PhysicalConstants& c, const TrajectoryOptions& opt = {}) {
  detail::require(snapshots.size() >= 2, "integrate_bundle: need at least two snapshots");
  detail::require(opt.substeps >= 1, "integrate_bundle: substeps must be >= 1");
  const Grid& g = snapshots.front().grid();
  const double span = snapshots[1].time - snapshots[0].time;
  detail::require(span > 0.0, "integrate_bundle: snapshot times must increase");
  for (std::size_t k = 1; k < snapshots.size(); ++k) {
    detail::require(snapshots[k].grid() == g, "integrate_bundle: snapshot grids differ");
    const double d = snapshots[k].time - snapshots[k - 1].time;
    detail::require(std::abs(d - span) <= 1e-9 * span, "integrate_bundle: snapshots must be equally spaced");
  }

  std::vector<FlowField> flows;
  std::vector<Mask> near;
  flows.reserve(snapshots.size());
  for (const auto& s : snapshots) {
    flows.push_back(velocity_from_wave(s, v_r, c, opt.flow));
    near.push_back(detail::dilate_invalid(flows.back().valid, g, opt.node_cells));
  }

  detail::FlowSampler sampler(g);
  TrajectoryBundle out;
  out.seeds = seeds;
  for (const auto& s : snapshots) out.times.push_back(s.time);

  // velocity at (p, interval k, fraction lam); flags collected on the way
  auto velocity = [&](const Point& p, std::size_t k, double lam, std::uint8_t& flag) -> Point {
    const auto cell = sampler.locate(p);
    const FlowField& a = flows[k];
    const FlowField& b = flows[std::min(k + 1, flows.size() - 1)];
    if (sampler.any_corner(cell, [&](std::size_t i) { return !a.valid[i] || !b.valid[i]; }))
      flag |= path_flag::entered_node;
    if (sampler.any_corner(cell, [&](std::size_t i) { return near[k][i] || near[std::min(k + 1, near.size() - 1)][i]; }))
      flag |= path_flag::near_node;
    Point v{};
    for (int d = 0; d < g.dim(); ++d) {
      const double va = sampler.blend(cell, [&](std::size_t i) { return a.v.comp[d][i]; });
      const double vb = sampler.blend(cell, [&](std::size_t i) { return b.v.comp[d][i]; });
      v[d] = (1.0 - lam) * va + lam * vb;
    }
    return v;
  };
  auto axpy = [](const Point& p, double h, const Point& v) { return Point{p[0] + h * v[0], p[1] + h * v[1]}; };

  const std::size_t ns = snapshots.size();
  for (const Point& seed : seeds) {
    const auto start = sampler.locate(seed);
    detail::require(start.inside, "integrate_bundle: seed outside the grid");
    std::vector<Point> path{seed}, vel;
    std::vector<std::uint8_t> flags;
    std::uint8_t f0 = 0;
    vel.push_back(velocity(seed, 0, 0.0, f0));
    flags.push_back(f0 & path_flag::near_node);
    Point p = seed;
    bool stopped = (f0 & path_flag::entered_node) != 0;
    if (stopped) flags.back() |= path_flag::entered_node;

    for (std::size_t k = 0; k + 1 < ns; ++k) {
      std::uint8_t flag = 0;
      if (!stopped) {
        const double h = span / static_cast<double>(opt.substeps);
        for (std::size_t s = 0; s < opt.substeps && !stopped; ++s) {
          const double lam = static_cast<double>(s) / static_cast<double>(opt.substeps);
          const double dl = 1.0 / static_cast<double>(opt.substeps);
          std::uint8_t sf = 0;
          velocity(p, k, lam, sf);
          if (sf & path_flag::near_node) {
            // two midpoint half-steps
            Point q = p;
            for (int half = 0; half < 2; ++half) {
              const double l0 = lam + 0.5 * dl * half;
              const Point k1 = velocity(q, k, l0, sf);
              const Point k2 = velocity(axpy(q, 0.25 * h, k1), k, l0 + 0.25 * dl, sf);
              q = axpy(q, 0.5 * h, k2);
            }
            p = q;
          } else {
            const Point k1 = velocity(p, k, lam, sf);
            const Point k2 = velocity(axpy(p, 0.5 * h, k1), k, lam + 0.5 * dl, sf);
            const Point k3 = velocity(axpy(p, 0.5 * h, k2), k, lam + 0.5 * dl, sf);
            const Point k4 = velocity(axpy(p, h, k3), k, lam + dl, sf);
            for (int d = 0; d < 2; ++d) p[d] += h / 6.0 * (k1[d] + 2 * k2[d] + 2 * k3[d] + k4[d]);
          }
          flag |= sf;
          if (!g.periodic() && !sampler.locate(p).inside) {
            flag |= path_flag::exited;
            for (int d = 0; d < g.dim(); ++d) p[d] = std::clamp(p[d], g.min(d), g.max(d));
            stopped = true;
          }
          if (flag & path_flag::entered_node) stopped = true;
        }
      }
      std::uint8_t vf = 0;
      path.push_back(p);
      vel.push_back(stopped ? Point{} : velocity(p, k + 1 < ns - 1 ? k + 1 : k, k + 1 < ns - 1 ? 0.0 : 1.0, vf));
      flags.push_back(flag | (vf & path_flag::near_node));
    }
    out.paths.push_back(std::move(path));
    out.velocities.push_back(std::move(vel));
    out.flags.push_back(std::move(flags));
  }
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < out.paths.size(); ++i) flagged += out.final_flags(i) != 0 ? 1 : 0;
  if (flagged > 0) out.warnings.push_back("integrate_bundle: " + std::to_string(flagged) + " paths flagged");
  return out;
}

}  // namespace qhydro
