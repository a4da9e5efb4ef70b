#pragma once

#include <vector>

#include "qhydro/torus/mesh.hpp"
#include "qhydro/torus/regions.hpp"
#include "qhydro/torus/ring.hpp"

namespace qhydro {

inline const std::vector<double> kSpindleSweepB{3.0, 2.0, 1.5, 1.0, 0.5, 0.01};
inline const std::vector<double> kRingSweepB{4.0, 3.0, 2.0, 1.0, 0.001};

struct SweepEntry {
  TorusShape shape;
  SurfaceMesh mesh;
  TorusMeasures formula;
  MeshMeasures measured;
  CrossSection regions;
  ReversalReport reversals;
  HelicoidalRing ring;
};

struct SweepOptions {
  std::size_t n_theta = 128;
  std::size_t n_phi = 128;
  RingOptions ring;
};

/// One entry per b, in the given order. `base` supplies a, the frequencies
/// and the phases; only b changes along the sweep.
inline std::vector<SweepEntry> spindle_sweep(const TorusShape& base, const std::vector<double>& b_list,
                                             const SweepOptions& opt = {}) {
  detail::require(!b_list.empty(), "spindle_sweep: b_list is empty");
  for (std::size_t k = 0; k < b_list.size(); ++k) {
    detail::require(std::isfinite(b_list[k]) && b_list[k] >= 0.0, "spindle_sweep: b values must be >= 0");
    detail::require(k == 0 || b_list[k] < b_list[k - 1], "spindle_sweep: b_list must be descending");
  }
  std::vector<SweepEntry> out;
  out.reserve(b_list.size());
  for (double b : b_list) {
    SweepEntry e;
    e.shape = base;
    e.shape.b = b;
    e.mesh = mesh_torus(e.shape, opt.n_theta, opt.n_phi);
    e.formula = torus_measures(e.shape.a, b);
    e.measured = mesh_measures(e.mesh);
    e.regions = cross_section_regions(e.shape.a, b);
    e.reversals = normal_reversals(e.mesh);
    e.ring = helicoidal_ring(e.shape, opt.ring);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace qhydro
