#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qhydro/bohm/seeds.hpp"
#include "qhydro/bohm/trajectories.hpp"
#include "qhydro/bohm/vortex_scene.hpp"
#include "qhydro/core/flow.hpp"
#include "qhydro/core/madelung.hpp"
#include "qhydro/core/residuals.hpp"
#include "qhydro/evolve/schrodinger.hpp"
#include "qhydro/io/config.hpp"
#include "qhydro/io/csv.hpp"
#include "qhydro/io/obj.hpp"
#include "qhydro/torus/double_cover.hpp"
#include "qhydro/torus/sweep.hpp"
#include "qhydro/vortex/averaging.hpp"
#include "qhydro/vortex/profile.hpp"
#include "qhydro/vortex/radial_solver.hpp"

namespace qhydro::io {

namespace fs = std::filesystem;

struct Artifact {
  std::string path;  // relative to the run directory
  std::size_t rows = 0;
};

/// Files written by one scenario plus scenario-specific manifest content.
struct Production {
  std::vector<Artifact> artifacts;
  Json extra = Json::object();
  std::vector<std::string> warnings;
};

/// Per-component seed from the base seed: splitmix64 of the base mixed with
/// an FNV-1a hash of the component name.
inline std::uint64_t derive_seed(std::uint64_t base, const std::string& component) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : component) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return qhydro::detail::splitmix64(base ^ h);
}

namespace detail {

class Writer {
 public:
  Writer(const fs::path& dir, Production& prod) : dir_(dir), prod_(prod) {}
  void csv(const std::string& name, const CsvTable& t) { prod_.artifacts.push_back({name, write_csv(dir_ / name, t)}); }
  void obj(const std::string& name, const SurfaceMesh& m) { prod_.artifacts.push_back({name, write_obj(dir_ / name, m)}); }

 private:
  fs::path dir_;
  Production& prod_;
};

inline ComplexField initial_psi(const Grid& g, const InitialConfig& c) {
  ComplexField psi = ComplexField::sample(g, [&](double x, double y) {
    if (c.type == "plane_wave") return std::exp(cplx(0.0, c.k0 * x + (g.dim() == 2 ? c.ky * y : 0.0)));
    double arg = -(x - c.x0) * (x - c.x0) / (4.0 * c.sigma * c.sigma);
    double phase = c.k0 * x;
    if (g.dim() == 2) {
      arg -= (y - c.y0) * (y - c.y0) / (4.0 * c.sigma_y * c.sigma_y);
      phase += c.ky * y;
    }
    return std::exp(cplx(arg, phase));
  });
  const double n = norm(psi);
  qhydro::detail::require(n > 0.0, "initial: wave function vanishes on the grid");
  for (auto& z : psi.raw()) z /= std::sqrt(n);
  return psi;
}

inline EvolutionConfig evolution_config(const EvolveBlock& e) {
  EvolutionConfig cfg;
  cfg.dt = e.dt;
  cfg.steps = e.steps;
  cfg.scheme = e.scheme;
  cfg.snapshot_stride = e.snapshot_stride;
  return cfg;
}

inline CsvTable norm_table(const EvolutionResult& res, const PotentialSpec& pot, const PhysicalConstants& c) {
  CsvTable t({"t", "norm", "energy"});
  const auto u = evaluate(pot, res.snapshots.front().psi.grid(), c);
  for (const auto& s : res.snapshots) t.add({s.time, norm(s.psi), energy(s.psi, u, c)});
  return t;
}

inline CsvTable density_table(const EvolutionResult& res) {
  const Grid& g = res.snapshots.front().psi.grid();
  CsvTable t(g.dim() == 1 ? std::vector<std::string>{"t", "x", "rho", "action"}
                          : std::vector<std::string>{"t", "x", "y", "rho", "action"});
  for (const auto& s : res.snapshots) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.dim() == 1) {
        t.add({s.time, g.coord(0, i), s.rho[i], s.action[i]});
      } else {
        t.add({s.time, g.coord(0, i), g.coord(1, i), s.rho[i], s.action[i]});
      }
    }
  }
  return t;
}

/// Quantum potential and the pressure quotient (P1 + P2) / rho of the
/// initial density, masked where the density is floored.
inline CsvTable quantum_table(const WaveField& w, const PhysicalConstants& c) {
  const Grid& g = w.psi.grid();
  const auto q = quantum_potential(w.rho, c);
  const auto p = pressure_terms(w.rho, c);
  CsvTable t(g.dim() == 1 ? std::vector<std::string>{"x", "rho", "q", "pressure_quotient", "valid"}
                          : std::vector<std::string>{"x", "y", "rho", "q", "pressure_quotient", "valid"});
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double quot = q.valid[i] ? (p.p1[i] + p.p2[i]) / w.rho[i] : 0.0;
    const double valid = q.valid[i] ? 1.0 : 0.0;
    if (g.dim() == 1) {
      t.add({g.coord(0, i), w.rho[i], q.values[i], quot, valid});
    } else {
      t.add({g.coord(0, i), g.coord(1, i), w.rho[i], q.values[i], quot, valid});
    }
  }
  return t;
}

/// Residual refinement study: levels (n, dt), (2n, dt/2), (4n, dt/4) to the
/// same final time; residuals at the second-to-last step from the centred
/// snapshot pair around it.
inline CsvTable residual_table(const EvolveBlock& e, const PhysicalConstants& c) {
  CsvTable t({"level", "n", "dt", "hj_l2", "continuity_l2"});
  for (std::size_t level = 0; level < 3; ++level) {
    const std::size_t scale = std::size_t{1} << level;
    GridConfig gc = e.grid;
    gc.x.n *= scale;
    const Grid g = gc.make();
    const double dt = e.dt / static_cast<double>(scale);
    const std::size_t steps = e.steps * scale;
    qhydro::detail::require(steps >= 3, "convergence: need at least 3 steps");
    EvolutionConfig head = evolution_config(e);
    head.dt = dt;
    head.steps = steps - 2;
    head.snapshot_stride = steps - 2;
    const auto first = evolve(initial_psi(g, e.initial), e.potential, head, c);
    EvolutionConfig tail = head;
    tail.steps = 2;
    tail.snapshot_stride = 1;
    tail.t0 = first.snapshots.back().time;
    const auto last = evolve(first.final_psi, e.potential, tail, c);
    const auto& s = last.snapshots;
    qhydro::detail::require(s.size() == 3, "convergence: expected three closing snapshots");
    const auto flow = velocity_from_wave(s[1], std::nullopt, c);
    const SnapshotPair pair{&s[0], &s[2]};
    const auto hj = hamilton_jacobi_residual(s[1], flow, evaluate(e.potential, g, c), c, 0.0, pair);
    const auto ct = continuity_residual(s[1], pair, flow);
    t.add({static_cast<double>(level), static_cast<double>(g.n(0)), dt, hj.weighted_l2, ct.l2});
  }
  return t;
}

}  // namespace detail

// ---------------------------------------------------------------- producers

inline Production produce(const EvolveBlock& e, const ScenarioConfig& cfg, const fs::path& dir) {
  Production prod;
  detail::Writer w(dir, prod);
  const Grid g = e.grid.make();
  const auto res = evolve(detail::initial_psi(g, e.initial), e.potential, detail::evolution_config(e), cfg.physics);
  prod.warnings = res.warnings;
  w.csv("norm.csv", detail::norm_table(res, e.potential, cfg.physics));
  w.csv("density.csv", detail::density_table(res));
  w.csv("quantum.csv", detail::quantum_table(res.snapshots.front(), cfg.physics));
  if (e.convergence) w.csv("residuals.csv", detail::residual_table(e, cfg.physics));
  return prod;
}

inline Production produce(const TrajectoryBlock& tb, const ScenarioConfig& cfg, const fs::path& dir) {
  Production prod;
  detail::Writer w(dir, prod);
  const auto& e = tb.evolve;
  const Grid g = e.grid.make();
  const auto psi0 = detail::initial_psi(g, e.initial);
  const auto res = evolve(psi0, e.potential, detail::evolution_config(e), cfg.physics);
  const auto seeds = sample_seeds(psi0.map([](cplx z) { return std::norm(z); }), tb.seeds, tb.seed_mode);
  TrajectoryOptions opt;
  opt.substeps = tb.substeps;
  const auto bundle = integrate_bundle(res.snapshots, std::nullopt, seeds.positions, cfg.physics, opt);
  prod.warnings = res.warnings;
  prod.warnings.insert(prod.warnings.end(), seeds.warnings.begin(), seeds.warnings.end());
  prod.warnings.insert(prod.warnings.end(), bundle.warnings.begin(), bundle.warnings.end());

  const bool two = g.dim() == 2;
  CsvTable st(two ? std::vector<std::string>{"seed", "x", "y"} : std::vector<std::string>{"seed", "x"});
  CsvTable bt(two ? std::vector<std::string>{"seed", "t", "x", "y", "flags"}
                  : std::vector<std::string>{"seed", "t", "x", "flags"});
  for (std::size_t i = 0; i < bundle.seeds.size(); ++i) {
    const auto& s = bundle.seeds[i];
    st.add(two ? std::vector<double>{static_cast<double>(i), s[0], s[1]} : std::vector<double>{static_cast<double>(i), s[0]});
    for (std::size_t k = 0; k < bundle.times.size(); ++k) {
      const auto& p = bundle.paths[i][k];
      const double f = bundle.flags[i][k];
      bt.add(two ? std::vector<double>{static_cast<double>(i), bundle.times[k], p[0], p[1], f}
                 : std::vector<double>{static_cast<double>(i), bundle.times[k], p[0], f});
    }
  }
  w.csv("norm.csv", detail::norm_table(res, e.potential, cfg.physics));
  w.csv("seeds.csv", st);
  w.csv("bundle.csv", bt);
  return prod;
}

inline Production produce(const VortexBlock& v, const ScenarioConfig& cfg, const fs::path& dir) {
  Production prod;
  detail::Writer w(dir, prod);
  ViscosityModel model = v.viscosity;
  if (auto* o = std::get_if<viscosity::OuNoise>(&model.kind)) o->seed = derive_seed(cfg.seed, "viscosity");
  const auto r = radial_grid(v.r_max, v.r_points);
  const double s2 = model.sigma * model.sigma;
  std::vector<double> omega0;
  for (double x : r) omega0.push_back(omega_profile(v.gamma, s2, x));

  const double horizon = v.dt * static_cast<double>(v.steps);
  const ViscosityHistory hist(model, horizon);
  RadialOptions ropt;
  ropt.snapshot_stride = v.snapshot_stride;
  const auto h = evolve_radial_vorticity(r, omega0, hist, v.dt, v.steps, ropt);
  prod.warnings = h.warnings;

  CsvTable pt({"t", "sigma_eff", "r", "omega"});
  CsvTable ct({"t", "sigma_eff", "r0"});
  for (std::size_t k = 0; k < h.times.size(); ++k) {
    for (std::size_t j = 0; j < r.size(); ++j) pt.add({h.times[k], h.sigma_eff[k], r[j], h.omega[k][j]});
    ct.add({h.times[k], h.sigma_eff[k], core_radius(h.sigma_eff[k])});
  }
  w.csv("profile.csv", pt);
  w.csv("core.csv", ct);

  if (v.average) {
    AveragingOptions aopt;
    aopt.members = v.average->members;
    const auto avg = long_time_average_profile(model, v.gamma, v.average->horizon, v.average->samples, r, aopt);
    prod.warnings.insert(prod.warnings.end(), avg.warnings.begin(), avg.warnings.end());
    CsvTable at({"r", "mean_omega", "stderr_omega"});
    for (std::size_t j = 0; j < r.size(); ++j) at.add({r[j], avg.mean_omega[j], avg.stderr_omega[j]});
    w.csv("average.csv", at);
    prod.extra["average_members"] = avg.members;
    prod.extra["clamped_samples"] = avg.clamped_samples;
  }
  return prod;
}

inline Production produce(const TorusBlock& t, const ScenarioConfig&, const fs::path& dir) {
  Production prod;
  detail::Writer w(dir, prod);
  SweepOptions opt;
  opt.n_theta = t.n_theta;
  opt.n_phi = t.n_phi;
  opt.ring.samples_per_tube_turn = t.samples_per_tube_turn;
  const auto sweep = spindle_sweep(t.base, t.b_list, opt);

  CsvTable mt({"b", "regime", "formula_volume", "formula_area", "mesh_area", "enclosed_volume", "signed_volume",
               "reversal_loci", "closure_gap", "turns_about_tube", "turns_about_axis"});
  CsvTable rt({"b", "regime", "regions", "z_plus", "z_minus", "contact"});
  Json entries = Json::array();
  for (const auto& e : sweep) {
    const std::string tag = value_tag(e.shape.b);
    w.obj("mesh_b" + tag + ".obj", e.mesh);
    w.csv("mesh_b" + tag + ".csv", mesh_table(e.mesh));
    CsvTable ring({"t", "x", "y", "z", "axis_angle", "orientation_tag"});
    for (std::size_t i = 0; i < e.ring.samples.size(); ++i) {
      const auto& p = e.ring.samples[i];
      ring.add({e.ring.t[i], p[0], p[1], p[2], e.ring.axis_angle[i], static_cast<double>(e.ring.orientation_tag[i])});
    }
    w.csv("ring_b" + tag + ".csv", ring);

    mt.add_cells({format_double(e.shape.b), to_string(e.formula.regime), format_double(e.formula.volume),
                  format_double(e.formula.area), format_double(e.measured.unsigned_area),
                  format_double(e.measured.enclosed_volume), format_double(e.measured.signed_volume),
                  std::to_string(e.reversals.locus_abs_z.size()), format_double(e.ring.closure_gap),
                  std::to_string(e.ring.turns_about_tube), std::to_string(e.ring.turns_about_axis)});
    std::string regions;
    for (Region r : e.regions.regions) regions += (regions.empty() ? "" : "|") + to_string(r);
    const bool cut = !e.regions.intersections.empty();
    rt.add_cells({format_double(e.shape.b), to_string(e.regions.regime), regions,
                  cut ? format_double(e.regions.intersections[0][1]) : "",
                  cut ? format_double(e.regions.intersections[1][1]) : "", e.regions.contact ? "1" : "0"});
    entries.push_back(Json{{"b", e.shape.b},
                           {"regime", to_string(e.formula.regime)},
                           {"mesh", {"mesh_b" + tag + ".obj", "mesh_b" + tag + ".csv"}},
                           {"ring", "ring_b" + tag + ".csv"},
                           {"formula", {{"volume", e.formula.volume}, {"area", e.formula.area}}},
                           {"measured",
                            {{"unsigned_area", e.measured.unsigned_area},
                             {"enclosed_volume", e.measured.enclosed_volume},
                             {"signed_volume", e.measured.signed_volume}}},
                           {"reversal_loci", e.reversals.locus_abs_z.size()}});
  }
  w.csv("measures.csv", mt);
  w.csv("regions.csv", rt);
  prod.extra["sweep"] = entries;

  if (t.double_cover) {
    TorusShape s = t.base;
    s.b = t.double_cover->b;
    const auto ring = helicoidal_ring(s, opt.ring);
    CsvTable dt({"traversal", "axis_angle_deg", "direction_dot", "normal_dot", "orientation_tag"});
    for (Traversal dir_ : {Traversal::forward, Traversal::reverse}) {
      const auto trace = double_cover_rotation(ring, dir_, t.double_cover->samples);
      for (const auto& st : trace.states)
        dt.add_cells({dir_ == Traversal::forward ? "forward" : "reverse", format_double(st.axis_angle_deg),
                      format_double(st.direction_dot), format_double(st.normal_dot),
                      std::to_string(st.orientation_tag)});
    }
    w.csv("double_cover.csv", dt);
  }
  return prod;
}

inline Production produce(const FlowSceneBlock& f, const ScenarioConfig&, const fs::path& dir) {
  Production prod;
  detail::Writer w(dir, prod);
  StreamlineOptions opt;
  opt.grid_points = f.grid_points;
  const auto scene = streamlines_around_vortex(f.scene, f.lines, opt);
  prod.warnings = scene.warnings;

  CsvTable lt({"line", "seed_x", "seed_y", "points", "stop"});
  CsvTable pt({"line", "s", "x", "y", "psi"});
  for (std::size_t l = 0; l < scene.lines.size(); ++l) {
    const auto& line = scene.lines[l];
    lt.add_cells({std::to_string(l), format_double(line.points.front()[0]), format_double(line.points.front()[1]),
                  std::to_string(line.points.size()), line.stop});
    for (std::size_t k = 0; k < line.points.size(); ++k)
      pt.add({static_cast<double>(l), line.s[k], line.points[k][0], line.points[k][1], line.stream[k]});
  }
  CsvTable sp({"x", "y"});
  for (const auto& p : scene.stagnation) sp.add({p[0], p[1]});
  const Grid& g = scene.stream_field.grid();
  CsvTable ft({"x", "y", "psi", "valid"});
  for (std::size_t i = 0; i < g.size(); ++i)
    ft.add({g.coord(0, i), g.coord(1, i), scene.stream_field[i], static_cast<double>(scene.stream_valid[i])});
  w.csv("lines.csv", lt);
  w.csv("streamlines.csv", pt);
  w.csv("stagnation.csv", sp);
  w.csv("stream_field.csv", ft);
  prod.extra["rejected_seeds"] = scene.rejected_seeds.size();
  return prod;
}

inline Production produce(const ScenarioConfig& cfg, const fs::path& dir) {
  return std::visit([&](const auto& block) { return produce(block, cfg, dir); }, cfg.block);
}

}  // namespace qhydro::io
