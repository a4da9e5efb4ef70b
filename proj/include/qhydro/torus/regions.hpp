#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qhydro/torus/shape.hpp"

namespace qhydro {

/// Regions of the medial (x, z) cross-section, where the surface cuts two
/// tube circles of radius a centred at (+-b, 0).
enum class Region { outer, tube, spindle, sphere_interior };

inline std::string to_string(Region r) {
  switch (r) {
    case Region::outer: return "A";
    case Region::tube: return "B";
    case Region::spindle: return "C";
    default: return "sphere_interior";
  }
}

struct CrossSection {
  double a = 0.0;
  double b = 0.0;
  TorusRegime regime = TorusRegime::ring;
  std::vector<Region> regions;
  std::vector<std::array<double, 2>> intersections;  // (x, z) where the tube circles cross
  std::optional<std::array<double, 2>> contact;      // tangency point when b == a

  bool has(Region r) const {
    for (Region x : regions)
      if (x == r) return true;
    return false;
  }
};

inline CrossSection cross_section_regions(double a, double b) {
  detail::require(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b >= 0.0,
                  "cross_section_regions: need a > 0 and b >= 0");
  CrossSection cs;
  cs.a = a;
  cs.b = b;
  cs.regime = regime(a, b);
  switch (cs.regime) {
    case TorusRegime::ring:
      cs.regions = {Region::outer, Region::tube};
      break;
    case TorusRegime::horn:
      cs.regions = {Region::outer, Region::tube};
      cs.contact = std::array<double, 2>{0.0, 0.0};
      break;
    case TorusRegime::spindle: {
      cs.regions = {Region::outer, Region::tube, Region::spindle};
      const double z = std::sqrt((a - b) * (a + b));
      cs.intersections = {{0.0, z}, {0.0, -z}};
      break;
    }
    case TorusRegime::degenerate:
      cs.regions = {Region::outer, Region::sphere_interior};
      break;
  }
  return cs;
}

/// Region containing the cross-section point (x, z). Points on a circle
/// count as inside it.
inline Region region_at(double a, double b, double x, double z) {
  detail::require(a > 0.0 && b >= 0.0, "region_at: need a > 0 and b >= 0");
  const bool right = (x - b) * (x - b) + z * z <= a * a;
  const bool left = (x + b) * (x + b) + z * z <= a * a;
  if (!right && !left) return Region::outer;
  if (right && left) return b == 0.0 ? Region::sphere_interior : Region::spindle;
  return Region::tube;
}

}  // namespace qhydro
