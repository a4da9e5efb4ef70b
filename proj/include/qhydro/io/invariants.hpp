#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "qhydro/io/config.hpp"
#include "qhydro/io/csv.hpp"

namespace qhydro::io {

/// Outcome of one registered invariant. `value` is compared against
/// `tolerance` in the sense given by the invariant; `passed` is the verdict.
struct InvariantResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

namespace detail {

namespace fs = std::filesystem;

inline InvariantResult at_most(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), std::isfinite(value) && value <= tol, value, tol, std::move(detail)};
}

/// Rows of a table grouped by the value in column `key`, in first-seen order.
inline std::vector<std::pair<double, std::vector<std::size_t>>> group_by(const CsvTable& t, const std::string& key) {
  std::vector<std::pair<double, std::vector<std::size_t>>> out;
  const auto col = t.numbers(key);
  for (std::size_t i = 0; i < col.size(); ++i) {
    if (out.empty() || out.back().first != col[i]) out.push_back({col[i], {}});
    out.back().second.push_back(i);
  }
  return out;
}

/// sqrt(sum (a - b)^2 r / sum b^2 r), with the axis point weighted by r_1 / 1000.
inline double radial_rel_l2(const std::vector<double>& r, const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double w = std::max(r[j], 1e-3 * r[1]);
    num += (a[j] - b[j]) * (a[j] - b[j]) * w;
    den += b[j] * b[j] * w;
  }
  return std::sqrt(num / den);
}

// ---------------------------------------------------------------- evolve

inline InvariantResult norm_conservation(const fs::path& dir) {
  const auto t = read_csv(dir / "norm.csv");
  double worst = 0.0;
  for (double n : t.numbers("norm")) worst = std::max(worst, std::abs(n - 1.0));
  return at_most("norm_conservation", worst, 1e-9, "max |norm - 1| over snapshots");
}

inline std::vector<InvariantResult> residual_order(const fs::path& dir) {
  const auto t = read_csv(dir / "residuals.csv");
  std::vector<InvariantResult> out;
  for (const std::string col : {"hj_l2", "continuity_l2"}) {
    const auto v = t.numbers(col);
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) worst = std::max(worst, std::abs(std::log2(v[k] / v[k + 1]) - 2.0));
    out.push_back(at_most("residual_order_" + col.substr(0, col.size() - 3), worst, 0.25,
                          "max |observed order - 2| under (dx, dt) halving"));
  }
  return out;
}

inline std::vector<InvariantResult> quantum_checks(const EvolveBlock& e, const ScenarioConfig& cfg,
                                                   const fs::path& dir) {
  const auto t = read_csv(dir / "quantum.csv");
  const auto rho = t.numbers("rho"), q = t.numbers("q"), quot = t.numbers("pressure_quotient");
  const auto valid = t.numbers("valid");
  double worst_identity = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (valid[i] != 0.0) worst_identity = std::max(worst_identity, std::abs(quot[i] - q[i]) / std::max(1.0, std::abs(q[i])));
  std::vector<InvariantResult> out{
      at_most("pressure_identity", worst_identity, 1e-9, "max |(P1 + P2)/rho - Q| / max(1, |Q|) over valid nodes")};
  if (e.grid.dim == 1 && e.initial.type == "gaussian") {
    // Q = hbar^2/(4 m s^2) - hbar^2 u^2/(8 m s^4) for rho ~ exp(-u^2 / 2 s^2)
    const double m = cfg.physics.mass(), hbar = cfg.physics.hbar(), s = e.initial.sigma;
    const double q0 = hbar * hbar / (4.0 * m * s * s);
    const auto x = t.numbers("x");
    double worst = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double u = x[i] - e.initial.x0;
      if (std::abs(u) >= 4.0 * s) continue;
      const double expect = q0 - hbar * hbar * u * u / (8.0 * m * s * s * s * s);
      worst = std::max(worst, valid[i] != 0.0 ? std::abs(q[i] - expect) / q0 : std::numeric_limits<double>::infinity());
    }
    out.push_back(at_most("quantum_potential_gaussian", worst, 1e-6,
                          "max |Q - Q_gaussian| / Q(0) within four widths of the centre"));
  }
  return out;
}

inline std::vector<InvariantResult> evolve_checks(const EvolveBlock& e, const ScenarioConfig& cfg,
                                                  const fs::path& dir) {
  std::vector<InvariantResult> out{norm_conservation(dir)};
  auto q = quantum_checks(e, cfg, dir);
  out.insert(out.end(), q.begin(), q.end());
  if (e.convergence) {
    auto r = residual_order(dir);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

// ---------------------------------------------------------------- trajectories

inline std::vector<InvariantResult> trajectory_checks(const TrajectoryBlock& tb, const ScenarioConfig& cfg,
                                                      const fs::path& dir) {
  std::vector<InvariantResult> out{norm_conservation(dir)};
  const auto& e = tb.evolve;
  if (e.grid.dim != 1) return out;
  const auto bundle = read_csv(dir / "bundle.csv");
  const auto seed = bundle.numbers("seed"), t = bundle.numbers("t"), x = bundle.numbers("x");
  const auto flags = bundle.numbers("flags");

  // per time, positions in seed order must keep the order of the seeds
  const auto seeds = read_csv(dir / "seeds.csv");
  const auto x0 = seeds.numbers("x");
  std::vector<std::size_t> order(x0.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x0[a] < x0[b]; });
  std::map<double, std::vector<double>> by_time;
  for (std::size_t k = 0; k < t.size(); ++k) {
    auto& row = by_time[t[k]];
    row.resize(x0.size());
    row[static_cast<std::size_t>(seed[k])] = x[k];
  }
  double violations = 0.0;
  for (const auto& [time, pos] : by_time)
    for (std::size_t k = 0; k + 1 < order.size(); ++k)
      if (x0[order[k]] < x0[order[k + 1]] && !(pos[order[k]] < pos[order[k + 1]])) violations += 1.0;
  out.push_back(at_most("non_crossing", violations, 0.0, "ordered seed pairs that swap at some time"));

  const bool free_packet = std::holds_alternative<potential::Free>(e.potential) && e.initial.type == "gaussian";
  if (free_packet) {
    const double m = cfg.physics.mass(), hbar = cfg.physics.hbar(), s0 = e.initial.sigma;
    const double t_end = by_time.rbegin()->first;
    const double tau = hbar * t_end / (2.0 * m * s0 * s0);
    const double centre = e.initial.x0 + hbar * e.initial.k0 / m * t_end;
    double worst = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (t[k] != t_end || flags[k] != 0.0) continue;
      const double xi = x0[static_cast<std::size_t>(seed[k])];
      const double disp = (xi - e.initial.x0) * std::sqrt(1.0 + tau * tau);
      const double err = std::abs(x[k] - (centre + disp));
      worst = std::max(worst, disp != 0.0 ? err / std::abs(disp) : err / (s0 * std::sqrt(1.0 + tau * tau)));
    }
    out.push_back(at_most("free_spread_law", worst, 1e-3, "max relative endpoint error against the spread law"));
  }
  return out;
}

// ---------------------------------------------------------------- vortex

/// Golden-section maximizer of v(r) for the Gaussian vortex at Sigma.
inline double max_velocity_radius(double sigma_eff) {
  auto v = [&](double r) { return -std::expm1(-r * r / (4.0 * sigma_eff)) / r; };
  double lo = 0.1 * std::sqrt(sigma_eff), hi = 10.0 * std::sqrt(sigma_eff);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  while (hi - lo > 1e-12 * std::sqrt(sigma_eff)) {
    if (v(c) > v(d)) {
      hi = d;
    } else {
      lo = c;
    }
    c = hi - g * (hi - lo);
    d = lo + g * (hi - lo);
  }
  return 0.5 * (lo + hi);
}

inline double gaussian_omega(double gamma, double sigma_eff, double r) {
  return gamma / (4.0 * sigma_eff) * std::exp(-r * r / (4.0 * sigma_eff));
}

inline std::vector<InvariantResult> vortex_checks(const VortexBlock& v, const fs::path& dir) {
  std::vector<InvariantResult> out;
  const auto prof = read_csv(dir / "profile.csv");
  const auto times = group_by(prof, "t");
  const auto r_col = prof.numbers("r"), w_col = prof.numbers("omega");
  auto column = [&](const std::vector<std::size_t>& rows, const std::vector<double>& c) {
    std::vector<double> o;
    for (auto i : rows) o.push_back(c[i]);
    return o;
  };
  const auto r = column(times.front().second, r_col);
  const auto w0 = column(times.front().second, w_col);
  const double s2 = v.viscosity.sigma * v.viscosity.sigma;

  if (std::holds_alternative<viscosity::Zero>(v.viscosity.kind)) {
    double peak = 0.0, worst = 0.0;
    for (double x : w0) peak = std::max(peak, std::abs(x));
    for (const auto& [t, rows] : times) {
      const auto w = column(rows, w_col);
      for (std::size_t j = 0; j < w.size(); ++j) worst = std::max(worst, std::abs(w[j] - w0[j]));
    }
    out.push_back(at_most("permanence", worst / peak, 1e-12, "max |omega(t) - omega(0)| / max omega(0)"));
  }
  if (const auto* c = std::get_if<viscosity::Constant>(&v.viscosity.kind)) {
    const auto& [t, rows] = times.back();
    const double sig = c->nu0 * t + s2;
    std::vector<double> ref;
    for (double x : r) ref.push_back(gaussian_omega(v.gamma, sig, x));
    out.push_back(at_most("gaussian_match", radial_rel_l2(r, column(rows, w_col), ref), 1e-3,
                          "final profile against the Gaussian at Sigma = nu0 t + sigma^2 = " + format_double(sig)));
  }
  if (const auto* c = std::get_if<viscosity::Cosine>(&v.viscosity.kind)) {
    const double period = 2.0 * kPi / c->omega;
    double worst = -1.0;
    for (const auto& [t, rows] : times) {
      const double k = std::round(t / period);
      if (k < 1.0 || std::abs(t - k * period) > 1e-9 * period) continue;
      worst = std::max(worst, radial_rel_l2(r, column(rows, w_col), w0));
    }
    if (worst >= 0.0) out.push_back(at_most("period_return", worst, 1e-3, "profile after whole periods vs initial"));
  }

  const auto core = read_csv(dir / "core.csv");
  const auto sig = core.numbers("sigma_eff"), r0 = core.numbers("r0");
  double worst_const = 0.0, worst_max = 0.0;
  for (std::size_t k = 0; k < sig.size(); ++k) {
    const double root = std::sqrt(sig[k]);
    worst_const = std::max(worst_const, std::abs(r0[k] / root - 2.24181));
    worst_max = std::max(worst_max, std::abs(max_velocity_radius(sig[k]) - r0[k]) / root);
  }
  out.push_back(at_most("core_radius_constant", worst_const, 1e-4, "max |r0 / sqrt(Sigma) - 2.24181|"));
  out.push_back(at_most("core_radius_maximization", worst_max, 1e-6, "max |argmax v - r0| / sqrt(Sigma)"));

  if (v.average) {
    const auto avg = read_csv(dir / "average.csv");
    const auto ra = avg.numbers("r"), mean = avg.numbers("mean_omega"), se = avg.numbers("stderr_omega");
    if (const auto* c = std::get_if<viscosity::Cosine>(&v.viscosity.kind)) {
      const double a = c->nu0 / c->omega;
      const double expect = v.gamma / (4.0 * std::sqrt(s2 * s2 - a * a));
      out.push_back(at_most("average_centre", std::abs(mean.front() - expect) / expect, 2e-2,
                            "time-averaged centre vorticity vs the period average"));
    }
    if (const auto* o = std::get_if<viscosity::OuNoise>(&v.viscosity.kind)) {
      const double amp = o->amplitude, tau = o->correlation_time, horizon = v.average->horizon;
      const auto samples = v.average->samples;
      double var_i = 0.0;
      for (std::size_t k = 0; k < samples; ++k) {
        const double t = (static_cast<double>(k) + 0.5) * horizon / static_cast<double>(samples);
        var_i += 2.0 * amp * amp * tau * tau * (t / tau - 1.0 + std::exp(-t / tau));
      }
      var_i /= static_cast<double>(samples);
      double worst_stat = 0.0, worst_second = 0.0;
      for (std::size_t j = 0; j < ra.size(); ++j) {
        const double f = gaussian_omega(v.gamma, s2, ra[j]);
        const double q = ra[j] * ra[j] / (4.0 * s2);
        const double f2 = f / (s2 * s2) * ((q - 1.0) * (q - 1.0) + 1.0 - 2.0 * q);
        const double band = 3.0 * se[j];
        auto ratio = [band](double miss) {
          if (miss == 0.0) return 0.0;
          return band > 0.0 ? miss / band : std::numeric_limits<double>::infinity();
        };
        worst_stat = std::max(worst_stat, ratio(std::abs(mean[j] - f)));
        worst_second = std::max(worst_second, ratio(std::abs(mean[j] - (f + 0.5 * f2 * var_i))));
      }
      out.push_back(at_most("ou_band_stationary_profile", worst_stat, 1.0,
                            "max |mean - omega(sigma^2)| / (3 SE); 1 is the edge of the band"));
      out.push_back(at_most("ou_band_second_order", worst_second, 1.0,
                            "max |mean - (omega + omega''/2 <Var I>)| / (3 SE)"));
    }
  }
  return out;
}

// ---------------------------------------------------------------- torus

struct MeshData {
  std::size_t n_theta = 0, n_phi = 0;
  std::vector<double> theta;
  std::vector<Vec3> x, n;
  std::size_t at(std::size_t i, std::size_t j) const { return (i % n_theta) * n_phi + (j % n_phi); }
};

inline MeshData read_mesh(const fs::path& path) {
  const auto t = read_csv(path);
  MeshData m;
  const auto i = t.numbers("i"), j = t.numbers("j");
  m.n_theta = static_cast<std::size_t>(*std::max_element(i.begin(), i.end())) + 1;
  m.n_phi = static_cast<std::size_t>(*std::max_element(j.begin(), j.end())) + 1;
  if (m.n_theta * m.n_phi != t.size()) throw IoError(path.string() + ": not a full lattice");
  const auto th = t.numbers("theta");
  const auto x = t.numbers("x"), y = t.numbers("y"), z = t.numbers("z");
  const auto nx = t.numbers("nx"), ny = t.numbers("ny"), nz = t.numbers("nz");
  m.theta.resize(t.size());
  m.x.resize(t.size());
  m.n.resize(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    const std::size_t idx = static_cast<std::size_t>(i[k]) * m.n_phi + static_cast<std::size_t>(j[k]);
    m.theta[idx] = th[k];
    m.x[idx] = {x[k], y[k], z[k]};
    m.n[idx] = {nx[k], ny[k], nz[k]};
  }
  return m;
}

struct MeshIntegrals {
  double area = 0.0;
  double outer_volume = 0.0;
};

inline MeshIntegrals integrate_mesh(const MeshData& m, double a, double b) {
  MeshIntegrals out;
  const double floor = 1e-14 * a * a;
  for (std::size_t i = 0; i < m.n_theta; ++i) {
    const double theta_c = 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(m.n_theta);
    const bool outer = b + a * std::cos(theta_c) > 0.0;
    for (std::size_t j = 0; j < m.n_phi; ++j) {
      const Vec3 &p0 = m.x[m.at(i, j)], &p1 = m.x[m.at(i, j + 1)], &p2 = m.x[m.at(i + 1, j + 1)],
                 &p3 = m.x[m.at(i + 1, j)];
      for (const auto& tri : {std::array<const Vec3*, 3>{&p0, &p1, &p2}, std::array<const Vec3*, 3>{&p0, &p2, &p3}}) {
        const double ta = 0.5 * length(cross(*tri[1] - *tri[0], *tri[2] - *tri[0]));
        if (ta >= floor) out.area += ta;
        if (outer) out.outer_volume += dot(*tri[0], cross(*tri[1], *tri[2])) / 6.0;
      }
    }
  }
  return out;
}

inline std::vector<InvariantResult> torus_checks(const TorusBlock& tb, const fs::path& dir) {
  std::vector<InvariantResult> out;
  const double a = tb.base.a;
  double worst_gap = 0.0, worst_unit = 0.0, worst_turn = 0.0, worst_locus = 0.0, worst_area = 0.0;
  double flips_outside = 0.0;
  bool any_ring = false, any_spindle = false;
  std::size_t n_theta = 0, n_phi = 0;
  for (double b : tb.b_list) {
    const std::string tag = value_tag(b);
    const auto ring = read_csv(dir / ("ring_b" + tag + ".csv"));
    const auto rx = ring.numbers("x"), ry = ring.numbers("y"), rz = ring.numbers("z");
    if (tb.base.ratio) {
      const Vec3 first{rx.front(), ry.front(), rz.front()}, last{rx.back(), ry.back(), rz.back()};
      worst_gap = std::max(worst_gap, length(last - first) / a);
    }

    const auto m = read_mesh(dir / ("mesh_b" + tag + ".csv"));
    n_theta = m.n_theta;
    n_phi = m.n_phi;
    for (const auto& n : m.n) worst_unit = std::max(worst_unit, std::abs(length(n) - 1.0));
    std::vector<double> loci;
    double flips = 0.0;
    for (std::size_t i = 0; i < m.n_theta; ++i) {
      for (std::size_t j = 0; j < m.n_phi; ++j) {
        const std::size_t u = m.at(i, j);
        for (std::size_t v : {m.at(i, j + 1), m.at(i + 1, j)}) {
          const double c = std::clamp(dot(m.n[u], m.n[v]), -1.0, 1.0);
          if (c >= 0.0) {
            worst_turn = b >= a ? std::max(worst_turn, std::acos(c)) : worst_turn;
            continue;
          }
          flips += 1.0;
          if (b >= a) continue;
          // bisect b + a cos(theta) = 0 on the flipped edge
          double lo = m.theta[u], hi = lo + 2.0 * kPi / static_cast<double>(m.n_theta);
          const bool lo_pos = b + a * std::cos(lo) >= 0.0;
          for (int k = 0; k < 60; ++k) {
            const double mid = 0.5 * (lo + hi);
            ((b + a * std::cos(mid) >= 0.0) == lo_pos ? lo : hi) = mid;
          }
          const double z = std::abs(a * std::sin(0.5 * (lo + hi)));
          if (std::none_of(loci.begin(), loci.end(), [&](double l) { return std::abs(l - z) <= 0.05 * a; }))
            loci.push_back(z);
        }
      }
    }
    if (b >= a) {
      flips_outside += flips;
      any_ring = true;
      const double exact = 4.0 * kPi * kPi * b * a;
      worst_area = std::max(worst_area, std::abs(integrate_mesh(m, a, b).area - exact) / exact);
    } else {
      any_spindle = true;
      const double expect = std::sqrt(a * a - b * b);
      const double err = loci.size() == 1 ? std::abs(loci.front() - expect) : std::numeric_limits<double>::infinity();
      worst_locus = std::max(worst_locus, err);
    }
    if (b == 0.0) {
      const auto integ = integrate_mesh(m, a, b);
      const double area = 8.0 * kPi * a * a, ball = 4.0 * kPi * a * a * a / 3.0;
      out.push_back(at_most("double_coating_area", std::abs(integ.area - area) / area, 2e-3,
                            "b = 0 mesh area vs twice the sphere area"));
      out.push_back(at_most("double_coating_volume", std::abs(integ.outer_volume - ball) / ball, 5e-3,
                            "b = 0 outward-sheet volume vs the ball"));
    }
  }
  if (tb.base.ratio) out.push_back(at_most("ring_closure", worst_gap, 1e-10, "max closure gap / a over the sweep"));
  out.push_back(at_most("normals_unit", worst_unit, 1e-12, "max ||n| - 1| over all mesh vertices"));
  if (any_ring) {
    const double bound = 2.0 * kPi / static_cast<double>(std::min(n_theta, n_phi)) + 1e-12;
    out.push_back(at_most("normal_continuity", flips_outside > 0.0 ? std::numeric_limits<double>::infinity() : worst_turn,
                          bound, "max angle between neighbouring normals for b >= a"));
    out.push_back(at_most("mesh_area", worst_area, 1e-3, "max relative mesh area error vs 4 pi^2 b a for b >= a"));
  }
  if (any_spindle)
    out.push_back(at_most("single_reversal_locus", worst_locus, 1e-12,
                          "one reversal locus per spindle mesh, at |z| = sqrt(a^2 - b^2)"));

  const auto regions = read_csv(dir / "regions.csv");
  double worst_cut = 0.0;
  for (std::size_t k = 0; k < regions.size(); ++k) {
    const double b = regions.number(k, "b");
    const auto& row = regions.rows()[k];
    const std::string zp = row[regions.column("z_plus")], zm = row[regions.column("z_minus")];
    const std::string contact = row[regions.column("contact")];
    if (b > 0.0 && b < a) {
      const double expect = std::sqrt(a * a - b * b);
      if (zp.empty() || zm.empty()) {
        worst_cut = std::numeric_limits<double>::infinity();
      } else {
        worst_cut = std::max({worst_cut, std::abs(parse_double(zp) - expect), std::abs(parse_double(zm) + expect)});
      }
    } else if ((b == a) != (contact == "1")) {
      worst_cut = std::numeric_limits<double>::infinity();
    }
  }
  out.push_back(at_most("cross_section", worst_cut, 1e-12, "tube-circle intersections at z = +-sqrt(a^2 - b^2)"));

  if (tb.double_cover) {
    const auto dc = read_csv(dir / "double_cover.csv");
    const auto dots = dc.numbers("direction_dot");
    const std::vector<double> expect{1.0, -1.0, 1.0, -1.0, 1.0, -1.0};
    double worst = dots.size() == expect.size() ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < std::min(dots.size(), expect.size()); ++k)
      worst = std::max(worst, std::abs(dots[k] - expect[k]));
    out.push_back(at_most("double_cover", worst, 1e-6,
                          "direction dot at 0, 360, 720 degrees: +1 -1 +1 forward, -1 +1 -1 reversed"));
  }
  return out;
}

// ---------------------------------------------------------------- flow scene

inline std::vector<InvariantResult> flow_checks(const FlowSceneBlock& f, const fs::path& dir) {
  std::vector<InvariantResult> out;
  const auto& s = f.scene;
  const double u = s.u_inf, R = s.cylinder_radius, gamma = s.circulation;
  auto psi = [&](double x, double y) {
    const double r2 = x * x + y * y;
    return u * y * (1.0 - R * R / r2) - gamma / (4.0 * kPi) * std::log(r2 / (R * R));
  };
  const auto pts = read_csv(dir / "streamlines.csv");
  const auto line = pts.numbers("line"), x = pts.numbers("x"), y = pts.numbers("y");
  double drift = 0.0, closest = std::numeric_limits<double>::infinity();
  double psi0 = 0.0;
  for (std::size_t k = 0; k < line.size(); ++k) {
    if (k == 0 || line[k] != line[k - 1]) psi0 = psi(x[k], y[k]);
    drift = std::max(drift, std::abs(psi(x[k], y[k]) - psi0));
    closest = std::min(closest, std::hypot(x[k], y[k]));
  }
  out.push_back(at_most("stream_drift", drift, 1e-6, "max |psi - psi(seed)| along each streamline"));
  out.push_back(at_most("non_penetration", R - closest, 1e-9, "radius minus closest approach to the centre"));

  const auto st = read_csv(dir / "stagnation.csv");
  const auto sx = st.numbers("x"), sy = st.numbers("y");
  if (gamma == 0.0) {
    double worst = sx.size() == 2 ? 0.0 : std::numeric_limits<double>::infinity();
    if (sx.size() == 2) {
      const double lo = std::min(sx[0], sx[1]), hi = std::max(sx[0], sx[1]);
      worst = std::max({std::abs(lo + R), std::abs(hi - R), std::abs(sy[0]), std::abs(sy[1])});
    }
    out.push_back(at_most("stagnation_points", worst, 1e-6, "distance of the two stagnation points from (+-R, 0)"));
  } else {
    double worst = sx.empty() ? std::numeric_limits<double>::infinity() : 0.0;
    const double scale = std::max(std::abs(u), std::abs(gamma) / (2.0 * kPi * R));
    for (std::size_t k = 0; k < sx.size(); ++k) {
      const double xx = sx[k], yy = sy[k], r2 = xx * xx + yy * yy, r4 = r2 * r2, g = gamma / (2.0 * kPi);
      const double vx = u - u * R * R * (xx * xx - yy * yy) / r4 - g * yy / r2;
      const double vy = -2.0 * u * R * R * xx * yy / r4 + g * xx / r2;
      worst = std::max(worst, std::hypot(vx, vy) / scale);
    }
    out.push_back(at_most("stagnation_points", worst, 1e-9, "relative speed at the reported stagnation points"));
  }
  return out;
}

}  // namespace detail

/// Re-evaluates every invariant registered for the scenario from the
/// artifacts in `dir`.
inline std::vector<InvariantResult> evaluate_invariants(const ScenarioConfig& cfg, const std::filesystem::path& dir) {
  if (const auto* e = std::get_if<EvolveBlock>(&cfg.block)) return detail::evolve_checks(*e, cfg, dir);
  if (const auto* t = std::get_if<TrajectoryBlock>(&cfg.block)) return detail::trajectory_checks(*t, cfg, dir);
  if (const auto* v = std::get_if<VortexBlock>(&cfg.block)) return detail::vortex_checks(*v, dir);
  if (const auto* t = std::get_if<TorusBlock>(&cfg.block)) return detail::torus_checks(*t, dir);
  return detail::flow_checks(std::get<FlowSceneBlock>(cfg.block), dir);
}

}  // namespace qhydro::io
