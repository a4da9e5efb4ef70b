#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qhydro/core/grid.hpp"

namespace qhydro {

using cplx = std::complex<double>;

/// Scalar samples on a Grid. Immutable by convention once handed to an
/// operation; the mutable accessors exist for construction.
template <typename T>
class Field {
 public:
  Field() = default;
  explicit Field(Grid grid, T fill = T{}) : grid_(std::move(grid)), values_(grid_.size(), fill) {}
  Field(Grid grid, std::vector<T> values) : grid_(std::move(grid)), values_(std::move(values)) {
    detail::require(values_.size() == grid_.size(), "field: value count does not match grid");
  }

  /// Samples f(x, y) at every node.
  template <typename F>
  static Field sample(const Grid& grid, F&& f) {
    Field out(grid);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      double x = grid.coord(0, grid.ix(idx));
      double y = grid.dim() == 2 ? grid.coord(1, grid.iy(idx)) : 0.0;
      out.values_[idx] = f(x, y);
    }
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  T& operator[](std::size_t idx) { return values_[idx]; }
  const T& operator[](std::size_t idx) const { return values_[idx]; }
  T& at(std::size_t i, std::size_t j = 0) { return values_[grid_.index(i, j)]; }
  const T& at(std::size_t i, std::size_t j = 0) const { return values_[grid_.index(i, j)]; }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }
  std::vector<T>& raw() { return values_; }
  const std::vector<T>& raw() const { return values_; }

  template <typename F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(values_[0]))>;
    Field<U> out(grid_);
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = f(values_[i]);
    return out;
  }

 private:
  Grid grid_;
  std::vector<T> values_;
};

using ScalarField = Field<double>;
using ComplexField = Field<cplx>;

/// Up to two Cartesian components; only the first grid.dim() are meaningful.
struct VectorField {
  std::array<ScalarField, 2> comp;

  VectorField() = default;
  explicit VectorField(const Grid& g) : comp{ScalarField(g), ScalarField(g)} {}
  VectorField(ScalarField x, ScalarField y) : comp{std::move(x), std::move(y)} {}

  const Grid& grid() const { return comp[0].grid(); }
  int dim() const { return grid().dim(); }

  template <typename F>
  static VectorField sample(const Grid& grid, F&& f) {
    VectorField out(grid);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      double x = grid.coord(0, grid.ix(idx));
      double y = grid.dim() == 2 ? grid.coord(1, grid.iy(idx)) : 0.0;
      auto v = f(x, y);
      out.comp[0][idx] = v[0];
      out.comp[1][idx] = v[1];
    }
    return out;
  }
};

/// Node-wise validity, 1 where the value is meaningful.
using Mask = std::vector<std::uint8_t>;

struct MaskedField {
  ScalarField values;
  Mask valid;

  bool all_valid() const {
    return std::all_of(valid.begin(), valid.end(), [](std::uint8_t v) { return v != 0; });
  }
  std::size_t valid_count() const {
    return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), std::uint8_t{1}));
  }
};

inline Mask full_mask(const Grid& g) { return Mask(g.size(), 1); }

inline Mask mask_and(const Mask& a, const Mask& b) {
  Mask out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] && b[i]) ? 1 : 0;
  return out;
}

// Norms over the valid nodes, weighted by the grid quadrature.

inline double l2_norm(const ScalarField& f, const Mask& valid) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (valid[i]) s += f[i] * f[i] * f.grid().weight(i);
  return std::sqrt(s);
}

inline double l2_norm(const ScalarField& f) { return l2_norm(f, full_mask(f.grid())); }

/// sqrt(sum rho * f^2 dV): residual norm as an expectation over the density.
inline double weighted_l2_norm(const ScalarField& f, const ScalarField& rho, const Mask& valid) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (valid[i]) s += rho[i] * f[i] * f[i] * f.grid().weight(i);
  return std::sqrt(s);
}

inline double max_abs(const ScalarField& f, const Mask& valid) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (valid[i]) m = std::max(m, std::abs(f[i]));
  return m;
}

inline double max_abs(const ScalarField& f) { return max_abs(f, full_mask(f.grid())); }

inline double integrate(const ScalarField& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * f.grid().weight(i);
  return s;
}

}  // namespace qhydro
