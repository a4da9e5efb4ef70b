#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "qhydro/core/error.hpp"

namespace qhydro {

enum class Boundary { periodic, reflecting };

inline std::string_view to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "reflecting";
}

struct AxisSpec {
  double min = 0.0;
  double max = 1.0;
  std::size_t n = 8;
};

/// Uniform Cartesian grid in one or two dimensions.
///
/// Periodic axes hold n points at min + i*h with h = (max - min)/n; the point
/// at max is the image of the one at min. Reflecting axes include both
/// endpoints, h = (max - min)/(n - 1). Storage is x-fastest.
class Grid {
 public:
  Grid() = default;

  static Grid line(double min, double max, std::size_t n, Boundary bc) {
    return Grid(1, {AxisSpec{min, max, n}, AxisSpec{0.0, 1.0, 1}}, bc);
  }
  static Grid plane(AxisSpec x, AxisSpec y, Boundary bc) { return Grid(2, {x, y}, bc); }

  int dim() const { return dim_; }
  Boundary boundary() const { return bc_; }
  bool periodic() const { return bc_ == Boundary::periodic; }

  std::size_t n(int axis) const { return axes_[axis].n; }
  double min(int axis) const { return axes_[axis].min; }
  double max(int axis) const { return axes_[axis].max; }
  double length(int axis) const { return axes_[axis].max - axes_[axis].min; }
  double spacing(int axis) const { return h_[axis]; }
  std::size_t size() const { return axes_[0].n * axes_[1].n; }

  double coord(int axis, std::size_t i) const {
    return axes_[axis].min + static_cast<double>(i) * h_[axis];
  }
  std::size_t index(std::size_t i, std::size_t j = 0) const { return i + axes_[0].n * j; }
  std::size_t ix(std::size_t idx) const { return idx % axes_[0].n; }
  std::size_t iy(std::size_t idx) const { return idx / axes_[0].n; }

  /// Quadrature weight of node idx: trapezoid on reflecting axes, uniform on
  /// periodic ones.
  double weight(std::size_t idx) const {
    double w = h_[0];
    if (!periodic() && (ix(idx) == 0 || ix(idx) + 1 == axes_[0].n)) w *= 0.5;
    if (dim_ == 2) {
      double wy = h_[1];
      if (!periodic() && (iy(idx) == 0 || iy(idx) + 1 == axes_[1].n)) wy *= 0.5;
      w *= wy;
    }
    return w;
  }
  double cell_volume() const { return dim_ == 2 ? h_[0] * h_[1] : h_[0]; }

  bool on_boundary(std::size_t idx) const {
    bool b = ix(idx) == 0 || ix(idx) + 1 == axes_[0].n;
    if (dim_ == 2) b = b || iy(idx) == 0 || iy(idx) + 1 == axes_[1].n;
    return b;
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    if (a.dim_ != b.dim_ || a.bc_ != b.bc_) return false;
    for (int k = 0; k < a.dim_; ++k) {
      if (a.axes_[k].n != b.axes_[k].n || a.axes_[k].min != b.axes_[k].min ||
          a.axes_[k].max != b.axes_[k].max)
        return false;
    }
    return true;
  }

 private:
  Grid(int dim, std::array<AxisSpec, 2> axes, Boundary bc) : dim_(dim), bc_(bc), axes_(axes) {
    for (int k = 0; k < dim; ++k) {
      const auto& a = axes_[k];
      detail::require(std::isfinite(a.min) && std::isfinite(a.max) && a.max > a.min,
                      "grid: axis extents must satisfy min < max");
      detail::require(a.n >= 8, "grid: at least 8 points per axis");
      h_[k] = (a.max - a.min) / static_cast<double>(periodic() ? a.n : a.n - 1);
    }
  }

  int dim_ = 1;
  Boundary bc_ = Boundary::periodic;
  std::array<AxisSpec, 2> axes_{AxisSpec{0.0, 1.0, 8}, AxisSpec{0.0, 1.0, 1}};
  std::array<double, 2> h_{1.0 / 8.0, 1.0};
};

}  // namespace qhydro
