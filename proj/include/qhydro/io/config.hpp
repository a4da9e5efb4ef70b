#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qhydro/bohm/seeds.hpp"
#include "qhydro/bohm/vortex_scene.hpp"
#include "qhydro/core/constants.hpp"
#include "qhydro/core/grid.hpp"
#include "qhydro/evolve/potential.hpp"
#include "qhydro/evolve/schrodinger.hpp"
#include "qhydro/io/csv.hpp"
#include "qhydro/torus/sweep.hpp"
#include "qhydro/vortex/viscosity.hpp"

namespace qhydro::io {

using Json = nlohmann::ordered_json;

inline constexpr int kConfigVersion = 1;

/// Malformed or invalid configuration. Syntax errors carry a 1-based line
/// and column; schema errors name the offending field instead.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// ---------------------------------------------------------------- blocks

struct GridConfig {
  int dim = 1;
  AxisSpec x{-16.0, 16.0, 512};
  AxisSpec y{-16.0, 16.0, 64};
  Boundary boundary = Boundary::periodic;

  Grid make() const { return dim == 1 ? Grid::line(x.min, x.max, x.n, boundary) : Grid::plane(x, y, boundary); }
};

/// Gaussian packet of width sigma (per axis) centred at (x0, y0) with mean
/// wavenumber (k0, ky), or a plane wave exp(i (k0 x + ky y)).
struct InitialConfig {
  std::string type = "gaussian";
  double x0 = 0.0;
  double y0 = 0.0;
  double sigma = 1.0;
  double sigma_y = 1.0;
  double k0 = 0.0;
  double ky = 0.0;
};

struct EvolveBlock {
  GridConfig grid;
  InitialConfig initial;
  PotentialSpec potential = potential::Free{};
  double dt = 2e-3;
  std::size_t steps = 1000;
  Scheme scheme = Scheme::crank_nicolson;
  std::size_t snapshot_stride = 100;
  bool convergence = false;  // also run the residual refinement study
};

struct TrajectoryBlock {
  EvolveBlock evolve;
  std::size_t seeds = 32;
  SeedMode seed_mode = SeedMode::quantile;
  std::size_t substeps = 8;
};

struct AverageConfig {
  double horizon = 20.0;
  std::size_t samples = 2000;
  std::size_t members = 64;
};

struct VortexBlock {
  double gamma = 1.0;
  ViscosityModel viscosity;
  double r_max = 20.0;
  std::size_t r_points = 512;
  double dt = 1e-3;
  std::size_t steps = 1000;
  std::size_t snapshot_stride = 100;
  std::optional<AverageConfig> average;
};

struct DoubleCoverConfig {
  double b = 0.001;
  std::size_t samples = 10000;
};

struct TorusBlock {
  TorusShape base = TorusShape::with_ratio(2.0, 4.0, 2, 1, 0.5);
  std::vector<double> b_list = kSpindleSweepB;
  std::size_t n_theta = 128;
  std::size_t n_phi = 128;
  std::size_t samples_per_tube_turn = 256;
  std::optional<DoubleCoverConfig> double_cover;
};

struct FlowSceneBlock {
  VortexSceneSpec scene;
  std::size_t lines = 21;
  std::size_t grid_points = 129;
};

using ScenarioBlock = std::variant<EvolveBlock, TrajectoryBlock, VortexBlock, TorusBlock, FlowSceneBlock>;

inline const std::vector<std::string> kScenarioKinds{"evolve", "trajectories", "vortex", "torus", "flow_scene"};

struct ScenarioConfig {
  int version = kConfigVersion;
  std::string name;
  std::string description;
  std::string output_dir;
  std::uint64_t seed = 1;
  PhysicalConstants physics;
  ScenarioBlock block;

  std::string kind() const { return kScenarioKinds[block.index()]; }
};

// ---------------------------------------------------------------- reader

namespace detail {

/// Strict view of one JSON object: every key must be consumed before
/// finish(), and values are type-checked.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_->contains(key); }
  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const Json& raw(const std::string& key) {
    seen_.insert(key);
    return j_->at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
    return v.get<double>();
  }
  std::size_t count(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(field(key) + ": expected an integer >= 0");
    return v.get<std::size_t>();
  }
  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
    return v.get<std::string>();
  }
  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(field(key) + ": expected true or false");
    return v.get<bool>();
  }
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) {
    if (!has(key)) return fallback;
    const Json& v = raw(key);
    if (!v.is_array()) throw ConfigError(field(key) + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(field(key) + ": expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }
  Reader child(const std::string& key) { return Reader(raw(key), field(key)); }

  void finish() const {
    for (auto it = j_->begin(); it != j_->end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(field(it.key()) + ": unknown key");
  }

  const std::string& path() const { return path_; }

 private:
  const Json* j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline void check(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field + ": " + what);
}

inline AxisSpec read_axis(Reader& r, const std::string& key, AxisSpec fallback) {
  if (!r.has(key)) return fallback;
  Reader a = r.child(key);
  AxisSpec s{a.number("min", fallback.min), a.number("max", fallback.max), a.count("n", fallback.n)};
  a.finish();
  check(s.max > s.min, r.field(key), "max must exceed min");
  check(s.n >= 4, r.field(key) + ".n", "must be >= 4");
  return s;
}

inline GridConfig read_grid(Reader& r) {
  GridConfig g;
  if (!r.has("grid")) return g;
  Reader gr = r.child("grid");
  g.dim = static_cast<int>(gr.count("dim", 1));
  check(g.dim == 1 || g.dim == 2, gr.field("dim"), "must be 1 or 2");
  g.x = read_axis(gr, "x", g.x);
  g.y = read_axis(gr, "y", g.y);
  const std::string bc = gr.text("boundary", "periodic");
  check(bc == "periodic" || bc == "reflecting", gr.field("boundary"), "must be periodic or reflecting");
  g.boundary = bc == "periodic" ? Boundary::periodic : Boundary::reflecting;
  gr.finish();
  return g;
}

inline InitialConfig read_initial(Reader& r) {
  InitialConfig c;
  if (!r.has("initial")) return c;
  Reader ir = r.child("initial");
  c.type = ir.text("type", c.type);
  check(c.type == "gaussian" || c.type == "plane_wave", ir.field("type"), "must be gaussian or plane_wave");
  c.x0 = ir.number("x0", c.x0);
  c.y0 = ir.number("y0", c.y0);
  c.sigma = ir.number("sigma", c.sigma);
  c.sigma_y = ir.number("sigma_y", c.sigma_y);
  c.k0 = ir.number("k0", c.k0);
  c.ky = ir.number("ky", c.ky);
  check(c.sigma > 0.0, ir.field("sigma"), "must be > 0");
  check(c.sigma_y > 0.0, ir.field("sigma_y"), "must be > 0");
  ir.finish();
  return c;
}

inline PotentialSpec read_potential(Reader& r) {
  if (!r.has("potential")) return potential::Free{};
  Reader pr = r.child("potential");
  const std::string type = pr.text("type", "free");
  PotentialSpec out = potential::Free{};
  if (type == "free") {
  } else if (type == "harmonic") {
    potential::Harmonic h;
    h.omega = pr.number("omega", h.omega);
    check(h.omega > 0.0, pr.field("omega"), "must be > 0");
    out = h;
  } else if (type == "gaussian_barrier") {
    potential::GaussianBarrier b;
    b.height = pr.number("height", b.height);
    b.center = pr.number("center", b.center);
    b.width = pr.number("width", b.width);
    check(b.width > 0.0, pr.field("width"), "must be > 0");
    out = b;
  } else if (type == "double_slit") {
    potential::DoubleSlit d;
    d.height = pr.number("height", d.height);
    d.slit_width = pr.number("slit_width", d.slit_width);
    d.slit_separation = pr.number("slit_separation", d.slit_separation);
    d.thickness = pr.number("thickness", d.thickness);
    d.position = pr.number("position", d.position);
    out = d;
  } else {
    throw ConfigError(pr.field("type") + ": unknown potential '" + type + "'");
  }
  pr.finish();
  return out;
}

/// Fields shared by evolve and trajectories blocks.
inline EvolveBlock read_evolve_fields(Reader& r) {
  EvolveBlock e;
  e.grid = read_grid(r);
  e.initial = read_initial(r);
  e.potential = read_potential(r);
  e.dt = r.number("dt", e.dt);
  check(std::isfinite(e.dt) && e.dt > 0.0, r.field("dt"), "must be > 0");
  e.steps = r.count("steps", e.steps);
  check(e.steps >= 1, r.field("steps"), "must be >= 1");
  const std::string scheme = r.text("scheme", "crank_nicolson");
  check(scheme == "crank_nicolson" || scheme == "split_step_fourier", r.field("scheme"),
        "must be crank_nicolson or split_step_fourier");
  e.scheme = scheme == "crank_nicolson" ? Scheme::crank_nicolson : Scheme::split_step_fourier;
  e.snapshot_stride = r.count("snapshot_stride", e.snapshot_stride);
  check(e.snapshot_stride >= 1, r.field("snapshot_stride"), "must be >= 1");
  check(e.initial.type != "plane_wave" || e.grid.boundary == Boundary::periodic, r.field("initial.type"),
        "plane_wave needs a periodic grid");
  return e;
}

inline EvolveBlock read_evolve(Reader& r) {
  EvolveBlock e = read_evolve_fields(r);
  e.convergence = r.flag("convergence", e.convergence);
  check(!e.convergence || e.grid.dim == 1, r.field("convergence"), "refinement study is 1D only");
  r.finish();
  return e;
}

inline TrajectoryBlock read_trajectories(Reader& r) {
  TrajectoryBlock t;
  t.evolve = read_evolve_fields(r);
  t.evolve.snapshot_stride = r.has("snapshot_stride") ? t.evolve.snapshot_stride : 1;
  t.seeds = r.count("seeds", t.seeds);
  check(t.seeds >= 1, r.field("seeds"), "must be >= 1");
  const std::string mode = r.text("seed_mode", "quantile");
  check(mode == "quantile" || mode == "uniform", r.field("seed_mode"), "must be quantile or uniform");
  t.seed_mode = mode == "quantile" ? SeedMode::quantile : SeedMode::uniform;
  t.substeps = r.count("substeps", t.substeps);
  check(t.substeps >= 1, r.field("substeps"), "must be >= 1");
  r.finish();
  return t;
}

inline VortexBlock read_vortex(Reader& r) {
  VortexBlock v;
  v.gamma = r.number("gamma", v.gamma);
  v.viscosity.sigma = r.number("sigma", v.viscosity.sigma);
  check(v.viscosity.sigma > 0.0, r.field("sigma"), "must be > 0");
  if (r.has("viscosity")) {
    Reader vr = r.child("viscosity");
    const std::string kind = vr.text("kind", "zero");
    if (kind == "zero") {
      v.viscosity.kind = viscosity::Zero{};
    } else if (kind == "constant") {
      v.viscosity.kind = viscosity::Constant{vr.number("nu0", 0.0)};
    } else if (kind == "cosine") {
      viscosity::Cosine c;
      c.nu0 = vr.number("nu0", c.nu0);
      c.omega = vr.number("omega", c.omega);
      check(c.omega > 0.0, vr.field("omega"), "must be > 0");
      check(std::abs(c.nu0) <= 0.9 * c.omega * v.viscosity.sigma * v.viscosity.sigma, vr.field("nu0"),
            "must satisfy |nu0| <= 0.9 omega sigma^2");
      v.viscosity.kind = c;
    } else if (kind == "ou_noise") {
      viscosity::OuNoise o;
      o.amplitude = vr.number("amplitude", o.amplitude);
      o.correlation_time = vr.number("correlation_time", o.correlation_time);
      check(o.amplitude >= 0.0, vr.field("amplitude"), "must be >= 0");
      check(o.correlation_time > 0.0, vr.field("correlation_time"), "must be > 0");
      v.viscosity.kind = o;
    } else {
      throw ConfigError(vr.field("kind") + ": unknown viscosity kind '" + kind + "'");
    }
    vr.finish();
  }
  v.r_max = r.number("r_max", 20.0 * v.viscosity.sigma);
  check(v.r_max > 0.0, r.field("r_max"), "must be > 0");
  v.r_points = r.count("r_points", v.r_points);
  check(v.r_points >= 8, r.field("r_points"), "must be >= 8");
  v.dt = r.number("dt", v.dt);
  check(std::isfinite(v.dt) && v.dt > 0.0, r.field("dt"), "must be > 0");
  v.steps = r.count("steps", v.steps);
  check(v.steps >= 1, r.field("steps"), "must be >= 1");
  v.snapshot_stride = r.count("snapshot_stride", v.snapshot_stride);
  check(v.snapshot_stride >= 1, r.field("snapshot_stride"), "must be >= 1");
  check(!v.viscosity.stochastic() || r.has("average"), r.field("viscosity.kind"),
        "ou_noise needs an average block");
  if (r.has("average")) {
    Reader ar = r.child("average");
    AverageConfig a;
    a.horizon = ar.number("horizon", a.horizon);
    check(a.horizon > 0.0, ar.field("horizon"), "must be > 0");
    a.samples = ar.count("samples", a.samples);
    check(a.samples >= 1, ar.field("samples"), "must be >= 1");
    a.members = ar.count("members", a.members);
    check(a.members >= 2, ar.field("members"), "must be >= 2");
    ar.finish();
    const bool fluctuating = std::holds_alternative<viscosity::Cosine>(v.viscosity.kind) || v.viscosity.stochastic();
    check(fluctuating, ar.field("horizon"), "averaging needs a cosine or ou_noise viscosity");
    v.average = a;
  }
  r.finish();
  return v;
}

inline TorusBlock read_torus(Reader& r) {
  TorusBlock t;
  const double a = r.number("a", t.base.a);
  check(a > 0.0, r.field("a"), "must be > 0");
  std::vector<double> ratio{2.0, 1.0};
  std::optional<double> omega0;
  if (r.has("ratio")) {
    if (r.raw("ratio").is_null()) {
      ratio.clear();
    } else {
      ratio = r.numbers("ratio", ratio);
      check(ratio.size() == 2 && ratio[0] >= 1 && ratio[1] >= 1 && ratio[0] == std::floor(ratio[0]) &&
                ratio[1] == std::floor(ratio[1]),
            r.field("ratio"), "must be [p, q] with positive integers, or null");
    }
  }
  const double omega1 = r.number("omega1", 0.5);
  check(omega1 > 0.0, r.field("omega1"), "must be > 0");
  if (r.has("omega0")) omega0 = r.number("omega0", 1.0);
  if (ratio.empty()) {
    check(omega0.has_value() && *omega0 > 0.0, r.field("omega0"), "needed (> 0) when ratio is null");
    t.base.ratio.reset();
    t.base.omega0 = *omega0;
    t.base.omega1 = omega1;
    t.base.a = a;
  } else {
    check(!omega0.has_value(), r.field("omega0"), "follows from ratio and omega1; give one or the other");
    t.base = TorusShape::with_ratio(a, 0.0, static_cast<long>(ratio[0]), static_cast<long>(ratio[1]), omega1);
  }
  t.base.phi0 = r.number("phi0", 0.0);
  t.base.phi1 = r.number("phi1", 0.0);
  check(t.base.phi0 >= 0.0 && t.base.phi0 < 2.0 * kPi, r.field("phi0"), "must lie in [0, 2 pi)");
  check(t.base.phi1 >= 0.0 && t.base.phi1 < 2.0 * kPi, r.field("phi1"), "must lie in [0, 2 pi)");
  t.b_list = r.numbers("b_list", t.b_list);
  check(!t.b_list.empty(), r.field("b_list"), "must not be empty");
  for (std::size_t k = 0; k < t.b_list.size(); ++k) {
    check(t.b_list[k] >= 0.0, r.field("b_list"), "values must be >= 0");
    check(k == 0 || t.b_list[k] < t.b_list[k - 1], r.field("b_list"), "must be strictly descending");
  }
  t.base.b = t.b_list.front();
  t.n_theta = r.count("n_theta", t.n_theta);
  t.n_phi = r.count("n_phi", t.n_phi);
  check(t.n_theta >= 32, r.field("n_theta"), "must be >= 32");
  check(t.n_phi >= 32, r.field("n_phi"), "must be >= 32");
  t.samples_per_tube_turn = r.count("samples_per_tube_turn", t.samples_per_tube_turn);
  check(t.samples_per_tube_turn >= 64, r.field("samples_per_tube_turn"), "must be >= 64");
  if (r.has("double_cover")) {
    Reader dr = r.child("double_cover");
    DoubleCoverConfig d;
    d.b = dr.number("b", d.b);
    check(d.b >= 0.0, dr.field("b"), "must be >= 0");
    d.samples = dr.count("samples", d.samples);
    check(d.samples >= 128 && d.samples % 2 == 0, dr.field("samples"), "must be even and >= 128");
    dr.finish();
    check(t.base.ratio && t.base.ratio->num == 2, r.field("double_cover"), "needs a closed ring with ratio [2, 1]");
    t.double_cover = d;
  }
  r.finish();
  return t;
}

inline FlowSceneBlock read_flow_scene(Reader& r) {
  FlowSceneBlock f;
  auto& s = f.scene;
  s.u_inf = r.number("u_inf", s.u_inf);
  s.cylinder_radius = r.number("radius", s.cylinder_radius);
  check(s.cylinder_radius > 0.0, r.field("radius"), "must be > 0");
  s.circulation = r.number("circulation", s.circulation);
  check(s.u_inf != 0.0 || s.circulation != 0.0, r.field("circulation"), "u_inf and circulation cannot both be 0");
  const auto box = r.numbers("box", {s.x_min, s.x_max, s.y_min, s.y_max});
  check(box.size() == 4 && box[1] > box[0] && box[3] > box[2], r.field("box"),
        "must be [x_min, x_max, y_min, y_max] with max > min");
  s.x_min = box[0];
  s.x_max = box[1];
  s.y_min = box[2];
  s.y_max = box[3];
  f.lines = r.count("lines", f.lines);
  check(f.lines >= 1, r.field("lines"), "must be >= 1");
  f.grid_points = r.count("grid_points", f.grid_points);
  check(f.grid_points >= 8, r.field("grid_points"), "must be >= 8");
  r.finish();
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(r.path() + ": " + e.what());
  }
  return f;
}

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

/// Parses JSON, rejecting duplicate keys within any object.
inline Json parse_strict(const std::string& text) {
  std::vector<std::set<std::string>> scopes;
  std::string duplicate;
  auto cb = [&](int, Json::parse_event_t ev, Json& parsed) {
    switch (ev) {
      case Json::parse_event_t::object_start: scopes.emplace_back(); break;
      case Json::parse_event_t::object_end: scopes.pop_back(); break;
      case Json::parse_event_t::key:
        if (!scopes.back().insert(parsed.get<std::string>()).second && duplicate.empty())
          duplicate = parsed.get<std::string>();
        break;
      default: break;
    }
    return true;
  };
  Json j;
  try {
    j = Json::parse(text, cb);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw ConfigError("config syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                          ": " + e.what(),
                      line, col);
  }
  if (!duplicate.empty()) throw ConfigError(duplicate + ": duplicate key");
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------- entry points

inline ScenarioConfig parse_config(const std::string& text) {
  const Json j = detail::parse_strict(text);
  detail::Reader r(j, "");
  ScenarioConfig c;
  if (!r.has("version")) throw ConfigError("version: missing");
  const Json& ver = r.raw("version");
  if (!ver.is_number_integer() || ver.get<int>() != kConfigVersion)
    throw ConfigError("version: unsupported, expected " + std::to_string(kConfigVersion));
  c.name = r.text("name", "");
  c.description = r.text("description", "");
  c.output_dir = r.text("output_dir", "");
  detail::check(!c.output_dir.empty(), "output_dir", "missing or empty");
  if (r.has("seed")) {
    const Json& s = r.raw("seed");
    if (!s.is_number_unsigned()) throw ConfigError("seed: expected an unsigned integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (r.has("physics")) {
    detail::Reader pr = r.child("physics");
    const double m = pr.number("mass", 1.0), h = pr.number("hbar", 1.0);
    detail::check(m > 0.0, pr.field("mass"), "must be > 0");
    detail::check(h > 0.0, pr.field("hbar"), "must be > 0");
    pr.finish();
    c.physics = PhysicalConstants(m, h);
  }
  const std::string kind = r.text("scenario", "");
  auto block = [&]() {
    if (!r.has(kind)) throw ConfigError(kind + ": missing parameter block for scenario '" + kind + "'");
    return r.child(kind);
  };
  if (kind == "evolve") {
    auto b = block();
    c.block = detail::read_evolve(b);
  } else if (kind == "trajectories") {
    auto b = block();
    c.block = detail::read_trajectories(b);
  } else if (kind == "vortex") {
    auto b = block();
    c.block = detail::read_vortex(b);
  } else if (kind == "torus") {
    auto b = block();
    c.block = detail::read_torus(b);
  } else if (kind == "flow_scene") {
    auto b = block();
    c.block = detail::read_flow_scene(b);
  } else {
    throw ConfigError("scenario: must be one of evolve, trajectories, vortex, torus, flow_scene");
  }
  r.finish();
  return c;
}

inline ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------- echo

namespace detail {

inline Json axis_json(const AxisSpec& a) { return Json{{"min", a.min}, {"max", a.max}, {"n", a.n}}; }

inline Json potential_json(const PotentialSpec& p) {
  Json j{{"type", kind_name(p)}};
  if (const auto* h = std::get_if<potential::Harmonic>(&p)) j["omega"] = h->omega;
  if (const auto* b = std::get_if<potential::GaussianBarrier>(&p)) {
    j["height"] = b->height;
    j["center"] = b->center;
    j["width"] = b->width;
  }
  if (const auto* d = std::get_if<potential::DoubleSlit>(&p)) {
    j["height"] = d->height;
    j["slit_width"] = d->slit_width;
    j["slit_separation"] = d->slit_separation;
    j["thickness"] = d->thickness;
    j["position"] = d->position;
  }
  return j;
}

inline Json evolve_json(const EvolveBlock& e) {
  Json grid{{"dim", e.grid.dim}, {"x", axis_json(e.grid.x)}};
  if (e.grid.dim == 2) grid["y"] = axis_json(e.grid.y);
  grid["boundary"] = std::string(to_string(e.grid.boundary));
  const auto& i = e.initial;
  Json init{{"type", i.type}, {"x0", i.x0}, {"sigma", i.sigma}, {"k0", i.k0}};
  if (e.grid.dim == 2) {
    init["y0"] = i.y0;
    init["sigma_y"] = i.sigma_y;
    init["ky"] = i.ky;
  }
  return Json{{"grid", grid},          {"initial", init},   {"potential", potential_json(e.potential)},
              {"dt", e.dt},            {"steps", e.steps},  {"scheme", to_string(e.scheme)},
              {"snapshot_stride", e.snapshot_stride}};
}

inline Json viscosity_json(const ViscosityModel& m) {
  Json j{{"kind", kind_name(m.kind)}};
  if (const auto* c = std::get_if<viscosity::Constant>(&m.kind)) j["nu0"] = c->nu0;
  if (const auto* c = std::get_if<viscosity::Cosine>(&m.kind)) {
    j["nu0"] = c->nu0;
    j["omega"] = c->omega;
  }
  if (const auto* o = std::get_if<viscosity::OuNoise>(&m.kind)) {
    j["amplitude"] = o->amplitude;
    j["correlation_time"] = o->correlation_time;
  }
  return j;
}

}  // namespace detail

/// Fully resolved configuration, defaults included. Parsing the echo gives
/// back the same configuration.
inline Json to_json(const ScenarioConfig& c) {
  Json j{{"version", c.version}, {"scenario", c.kind()}};
  if (!c.name.empty()) j["name"] = c.name;
  if (!c.description.empty()) j["description"] = c.description;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  j["physics"] = Json{{"mass", c.physics.mass()}, {"hbar", c.physics.hbar()}};
  Json block;
  if (const auto* e = std::get_if<EvolveBlock>(&c.block)) {
    block = detail::evolve_json(*e);
    block["convergence"] = e->convergence;
  } else if (const auto* t = std::get_if<TrajectoryBlock>(&c.block)) {
    block = detail::evolve_json(t->evolve);
    block["seeds"] = t->seeds;
    block["seed_mode"] = t->seed_mode == SeedMode::quantile ? "quantile" : "uniform";
    block["substeps"] = t->substeps;
  } else if (const auto* v = std::get_if<VortexBlock>(&c.block)) {
    block = Json{{"gamma", v->gamma},
                 {"sigma", v->viscosity.sigma},
                 {"viscosity", detail::viscosity_json(v->viscosity)},
                 {"r_max", v->r_max},
                 {"r_points", v->r_points},
                 {"dt", v->dt},
                 {"steps", v->steps},
                 {"snapshot_stride", v->snapshot_stride}};
    if (v->average)
      block["average"] =
          Json{{"horizon", v->average->horizon}, {"samples", v->average->samples}, {"members", v->average->members}};
  } else if (const auto* t = std::get_if<TorusBlock>(&c.block)) {
    block = Json{{"a", t->base.a}};
    if (t->base.ratio) {
      block["ratio"] = Json::array({t->base.ratio->num, t->base.ratio->den});
    } else {
      block["ratio"] = nullptr;
      block["omega0"] = t->base.omega0;
    }
    block["omega1"] = t->base.omega1;
    block["phi0"] = t->base.phi0;
    block["phi1"] = t->base.phi1;
    block["b_list"] = t->b_list;
    block["n_theta"] = t->n_theta;
    block["n_phi"] = t->n_phi;
    block["samples_per_tube_turn"] = t->samples_per_tube_turn;
    if (t->double_cover) block["double_cover"] = Json{{"b", t->double_cover->b}, {"samples", t->double_cover->samples}};
  } else if (const auto* f = std::get_if<FlowSceneBlock>(&c.block)) {
    const auto& s = f->scene;
    block = Json{{"u_inf", s.u_inf},
                 {"radius", s.cylinder_radius},
                 {"circulation", s.circulation},
                 {"box", Json::array({s.x_min, s.x_max, s.y_min, s.y_max})},
                 {"lines", f->lines},
                 {"grid_points", f->grid_points}};
  }
  j[c.kind()] = block;
  return j;
}

}  // namespace qhydro::io
