#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qhydro/io/config.hpp"
#include "qhydro/io/runner.hpp"

namespace qhydro::io {

/// Built-in scenario. `criterion` is the acceptance criterion it exercises;
/// `anchor` names the physical result it reproduces.
struct CatalogEntry {
  std::string name;
  int criterion = 0;
  std::string anchor;
  std::string description;
  Json config;

  std::string text() const { return config.dump(2) + "\n"; }
};

namespace detail {

inline Json scenario(const std::string& name, const std::string& kind, const std::string& description, Json block,
                     Json physics = Json{{"mass", 1.0}, {"hbar", 1.0}}) {
  return Json{{"version", kConfigVersion},
              {"scenario", kind},
              {"name", name},
              {"description", description},
              {"output_dir", "runs/" + name},
              {"seed", 1},
              {"physics", std::move(physics)},
              {kind, std::move(block)}};
}

inline Json line_grid(std::size_t n = 512) {
  return Json{{"dim", 1}, {"x", {{"min", -16.0}, {"max", 16.0}, {"n", n}}}, {"boundary", "periodic"}};
}

inline CatalogEntry entry(std::string name, int criterion, std::string anchor, std::string description,
                          const std::string& kind, Json block, Json physics = Json{{"mass", 1.0}, {"hbar", 1.0}}) {
  Json cfg = scenario(name, kind, description, std::move(block), std::move(physics));
  return {std::move(name), criterion, std::move(anchor), std::move(description), std::move(cfg)};
}

}  // namespace detail

inline std::vector<CatalogEntry> catalog() {
  using detail::entry;
  const double two_pi = 2.0 * kPi;
  std::vector<CatalogEntry> out;
  out.push_back(entry("madelung_free_packet", 1, "Bohmian velocity law grad S / m",
                      "free Gaussian, 32 quantile trajectories to t = 2 m s0^2 / hbar against the spread law",
                      "trajectories",
                      Json{{"grid", detail::line_grid()},
                           {"initial", {{"type", "gaussian"}, {"sigma", 1.0}}},
                           {"potential", {{"type", "free"}}},
                           {"dt", 2e-3},
                           {"steps", 1000},
                           {"snapshot_stride", 1},
                           {"seeds", 32},
                           {"seed_mode", "quantile"},
                           {"substeps", 8}}));
  out.push_back(entry("unitarity_residuals", 2, "quantum Hamilton-Jacobi and continuity equations",
                      "1000 Crank-Nicolson steps; norm drift and residual order under (dx, dt) halving", "evolve",
                      Json{{"grid", detail::line_grid()},
                           {"initial", {{"type", "gaussian"}, {"sigma", 1.0}, {"k0", 0.5}}},
                           {"potential", {{"type", "free"}}},
                           {"dt", 2e-3},
                           {"steps", 1000},
                           {"snapshot_stride", 100},
                           {"convergence", true}}));
  out.push_back(entry("quantum_potential", 3, "quantum potential from the pressure terms",
                      "Gaussian density: Q against the closed form and (P1 + P2) / rho = Q", "evolve",
                      Json{{"grid", detail::line_grid()},
                           {"initial", {{"type", "gaussian"}, {"sigma", 1.1}}},
                           {"potential", {{"type", "free"}}},
                           {"dt", 2e-3},
                           {"steps", 10},
                           {"snapshot_stride", 10}},
                      Json{{"mass", 0.9}, {"hbar", 1.2}}));
  out.push_back(entry("vortex_constant_viscosity", 4, "Gaussian vortex with Sigma = nu0 t + sigma^2",
                      "radial solver with constant nu0 until Sigma doubles", "vortex",
                      Json{{"gamma", 1.0},
                           {"sigma", 1.0},
                           {"viscosity", {{"kind", "constant"}, {"nu0", 0.5}}},
                           {"r_max", 20.0},
                           {"r_points", 512},
                           {"dt", 0.01},
                           {"steps", 200},
                           {"snapshot_stride", 50}}));
  out.push_back(entry("vortex_permanence", 4, "vorticity permanence without viscosity",
                      "radial solver with nu = 0 keeps the profile", "vortex",
                      Json{{"gamma", 1.0},
                           {"sigma", 1.0},
                           {"viscosity", {{"kind", "zero"}}},
                           {"r_max", 20.0},
                           {"r_points", 512},
                           {"dt", 0.01},
                           {"steps", 1000},
                           {"snapshot_stride", 100}}));
  out.push_back(entry("core_radius", 5, "vortex core boundary at the velocity maximum",
                      "r0 = 2.24181 sqrt(Sigma) along a spreading vortex, checked by direct maximization", "vortex",
                      Json{{"gamma", 2.0},
                           {"sigma", 0.8},
                           {"viscosity", {{"kind", "constant"}, {"nu0", 0.25}}},
                           {"r_max", 16.0},
                           {"r_points", 512},
                           {"dt", 0.01},
                           {"steps", 400},
                           {"snapshot_stride", 40}}));
  out.push_back(entry("cosine_viscosity_period", 6, "zero-mean viscosity and the Sigma accumulator",
                      "cosine viscosity with nu0 = 0.5 Omega sigma^2: return after one period and time average",
                      "vortex",
                      Json{{"gamma", 1.0},
                           {"sigma", 1.0},
                           {"viscosity", {{"kind", "cosine"}, {"nu0", 0.5}, {"omega", 1.0}}},
                           {"r_max", 20.0},
                           {"r_points", 512},
                           {"dt", two_pi / 1000.0},
                           {"steps", 1000},
                           {"snapshot_stride", 50},
                           {"average", {{"horizon", 100.0 * two_pi}, {"samples", 10000}, {"members", 2}}}}));
  out.push_back(entry("ou_viscosity_ensemble", 6, "long-time average of the Gaussian vortex",
                      "Ornstein-Uhlenbeck viscosity, 64-member ensemble mean against the stationary profile",
                      "vortex",
                      Json{{"gamma", 1.0},
                           {"sigma", 1.0},
                           {"viscosity",
                            {{"kind", "ou_noise"}, {"amplitude", 0.02}, {"correlation_time", 0.5}}},
                           {"r_max", 12.0},
                           {"r_points", 308},
                           {"dt", 0.01},
                           {"steps", 2000},
                           {"snapshot_stride", 200},
                           {"average", {{"horizon", 20.0}, {"samples", 2000}, {"members", 64}}}}));
  out.push_back(entry("torus_measures", 7, "torus volume and surface area",
                      "(a, b) = (2, 4) at 256 x 256 and the doubly coated sphere b = 0", "torus",
                      Json{{"a", 2.0},
                           {"ratio", {2, 1}},
                           {"omega1", 0.5},
                           {"b_list", {4.0, 0.0}},
                           {"n_theta", 256},
                           {"n_phi", 256}}));
  out.push_back(entry("helicoidal_double_cover", 8, "helicoidal ring and the 720 degree return",
                      "omega1 = omega0 / 2 ring closure and transported direction at 0, 360, 720 degrees", "torus",
                      Json{{"a", 2.0},
                           {"ratio", {2, 1}},
                           {"omega1", 0.5},
                           {"b_list", {4.0, 3.0, 2.0, 1.0, 0.001}},
                           {"double_cover", {{"b", 0.001}, {"samples", 10000}}}}));
  out.push_back(entry("spindle_sweep", 9, "ring to spindle torus transformation",
                      "a = 2, b from 3 down to 0.01: regions, intersection circle, one reversal locus per spindle",
                      "torus", Json{{"a", 2.0}, {"b_list", {3.0, 2.0, 1.5, 1.0, 0.5, 0.01}}}));
  out.push_back(entry("cylinder_streamlines", 10, "streamlines around the vortex avenue",
                      "flow past a cylinder without circulation: stagnation points, drift, non-penetration",
                      "flow_scene",
                      Json{{"u_inf", 1.0},
                           {"radius", 1.0},
                           {"circulation", 0.0},
                           {"box", {-5.0, 5.0, -3.0, 3.0}},
                           {"lines", 21},
                           {"grid_points", 129}}));
  out.push_back(entry("rotating_cylinder_streamlines", 10, "streamlines around the vortex avenue",
                      "flow past a rotating cylinder: shifted stagnation points and closed-form stream function",
                      "flow_scene",
                      Json{{"u_inf", 1.0},
                           {"radius", 1.0},
                           {"circulation", 6.0},
                           {"box", {-5.0, 5.0, -3.0, 3.0}},
                           {"lines", 21},
                           {"grid_points", 129}}));
  out.push_back(entry("reproducible_plane", 11, "deterministic artifacts",
                      "2D packet with a harmonic well and uniform seeds; rerun must give identical CSVs",
                      "trajectories",
                      Json{{"grid",
                            {{"dim", 2},
                             {"x", {{"min", -8.0}, {"max", 8.0}, {"n", 64}}},
                             {"y", {{"min", -8.0}, {"max", 8.0}, {"n", 64}}},
                             {"boundary", "periodic"}}},
                           {"initial", {{"type", "gaussian"}, {"sigma", 1.0}, {"sigma_y", 1.2}, {"k0", 0.5}}},
                           {"potential", {{"type", "harmonic"}, {"omega", 0.5}}},
                           {"dt", 5e-3},
                           {"steps", 200},
                           {"snapshot_stride", 10},
                           {"seeds", 16},
                           {"seed_mode", "uniform"},
                           {"substeps", 4}}));
  return out;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
  static const std::vector<CatalogEntry> all = catalog();
  for (const auto& e : all)
    if (e.name == name) return e;
  throw InvalidArgument("catalog: no scenario named '" + name + "'");
}

/// Writes every catalog config as <dir>/<name>.json; returns the paths.
inline std::vector<std::filesystem::path> write_catalog(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  for (const auto& e : catalog()) {
    out.push_back(dir / (e.name + ".json"));
    detail::write_text(out.back(), e.text());
  }
  return out;
}

}  // namespace qhydro::io
