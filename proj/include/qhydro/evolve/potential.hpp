#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "qhydro/core/constants.hpp"
#include "qhydro/core/field.hpp"

namespace qhydro {

namespace potential {

struct Free {};

/// U = m w^2 |r|^2 / 2
struct Harmonic {
  double omega = 1.0;
};

/// U = height exp(-(x - center)^2 / (2 width^2)); depends on x only.
struct GaussianBarrier {
  double height = 1.0;
  double center = 0.0;
  double width = 1.0;
};

/// Wall of the given thickness centred at x = position with two openings
/// centred at y = +-separation/2. 2D only.
struct DoubleSlit {
  double height = 200.0;
  double slit_width = 0.6;
  double slit_separation = 2.4;
  double thickness = 0.4;
  double position = 0.0;
};

}  // namespace potential

using PotentialSpec =
    std::variant<potential::Free, potential::Harmonic, potential::GaussianBarrier, potential::DoubleSlit>;

inline std::string kind_name(const PotentialSpec& p) {
  struct Visitor {
    std::string operator()(const potential::Free&) const { return "free"; }
    std::string operator()(const potential::Harmonic&) const { return "harmonic"; }
    std::string operator()(const potential::GaussianBarrier&) const { return "gaussian_barrier"; }
    std::string operator()(const potential::DoubleSlit&) const { return "double_slit"; }
  };
  return std::visit(Visitor{}, p);
}

/// Samples U on the grid; rejects parameters that would give a non-finite field.
inline ScalarField evaluate(const PotentialSpec& spec, const Grid& g, const PhysicalConstants& c) {
  struct Visitor {
    const Grid& g;
    const PhysicalConstants& c;

    ScalarField operator()(const potential::Free&) const { return ScalarField(g, 0.0); }

    ScalarField operator()(const potential::Harmonic& h) const {
      detail::require(std::isfinite(h.omega) && h.omega > 0.0, "harmonic potential: omega must be > 0");
      const double k = 0.5 * c.mass() * h.omega * h.omega;
      return ScalarField::sample(g, [k](double x, double y) { return k * (x * x + y * y); });
    }

    ScalarField operator()(const potential::GaussianBarrier& b) const {
      detail::require(std::isfinite(b.height) && std::isfinite(b.center), "gaussian barrier: non-finite parameter");
      detail::require(b.width > 0.0, "gaussian barrier: width must be > 0");
      return ScalarField::sample(g, [&b](double x, double) {
        const double d = (x - b.center) / b.width;
        return b.height * std::exp(-0.5 * d * d);
      });
    }

    ScalarField operator()(const potential::DoubleSlit& s) const {
      detail::require(g.dim() == 2, "double slit potential needs a 2D grid");
      detail::require(std::isfinite(s.height) && s.height >= 0.0, "double slit: height must be >= 0");
      detail::require(s.slit_width > 0.0 && s.thickness > 0.0, "double slit: widths must be > 0");
      detail::require(s.slit_separation > s.slit_width, "double slit: slits overlap");
      return ScalarField::sample(g, [&s](double x, double y) {
        if (std::abs(x - s.position) > 0.5 * s.thickness) return 0.0;
        const double half = 0.5 * s.slit_separation;
        const bool open = std::abs(y - half) < 0.5 * s.slit_width || std::abs(y + half) < 0.5 * s.slit_width;
        return open ? 0.0 : s.height;
      });
    }
  };
  return std::visit(Visitor{g, c}, spec);
}

}  // namespace qhydro
