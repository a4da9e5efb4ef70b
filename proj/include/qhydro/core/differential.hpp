#pragma once

#include <cmath>
#include <vector>

#include "qhydro/core/fft.hpp"
#include "qhydro/core/field.hpp"

namespace qhydro {

/// Spatial derivative discretization. Central stencils are second order,
/// wrapping on periodic grids and one-sided (still second order) at the
/// walls of reflecting grids. Spectral derivatives need a periodic grid.
enum class Stencil { central, spectral };

namespace detail {

template <typename T, typename Op>
Field<T> along_axis(const Field<T>& f, int axis, Op&& op) {
  const Grid& g = f.grid();
  const std::size_t n = g.n(axis);
  const std::size_t lines = g.size() / n;
  Field<T> out(g);
  std::vector<T> in(n), res(n);
  for (std::size_t l = 0; l < lines; ++l) {
    auto idx = [&](std::size_t k) {
      return axis == 0 ? g.index(k, l) : g.index(l, k);
    };
    for (std::size_t k = 0; k < n; ++k) in[k] = f[idx(k)];
    op(in, res);
    for (std::size_t k = 0; k < n; ++k) out[idx(k)] = res[k];
  }
  return out;
}

template <typename T>
Field<T> central_first(const Field<T>& f, int axis) {
  const double h = f.grid().spacing(axis);
  const bool periodic = f.grid().periodic();
  return along_axis(f, axis, [&](const std::vector<T>& v, std::vector<T>& r) {
    const std::size_t n = v.size();
    for (std::size_t k = 1; k + 1 < n; ++k) r[k] = (v[k + 1] - v[k - 1]) / (2.0 * h);
    if (periodic) {
      r[0] = (v[1] - v[n - 1]) / (2.0 * h);
      r[n - 1] = (v[0] - v[n - 2]) / (2.0 * h);
    } else {
      r[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
      r[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    }
  });
}

template <typename T>
Field<T> central_second(const Field<T>& f, int axis) {
  const double h2 = f.grid().spacing(axis) * f.grid().spacing(axis);
  const bool periodic = f.grid().periodic();
  return along_axis(f, axis, [&](const std::vector<T>& v, std::vector<T>& r) {
    const std::size_t n = v.size();
    for (std::size_t k = 1; k + 1 < n; ++k) r[k] = (v[k + 1] - 2.0 * v[k] + v[k - 1]) / h2;
    if (periodic) {
      r[0] = (v[1] - 2.0 * v[0] + v[n - 1]) / h2;
      r[n - 1] = (v[0] - 2.0 * v[n - 1] + v[n - 2]) / h2;
    } else {
      r[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
      r[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / h2;
    }
  });
}

/// order 1 or 2 spectral derivative; the Nyquist mode is dropped for odd order.
inline std::vector<cplx> spectral_derivative(const Grid& g, std::vector<cplx> data, int axis,
                                             int order) {
  spectral::Transform tr(g);
  auto hat = tr.forward(std::move(data));
  const std::size_t n = g.n(axis);
  const auto k = spectral::wavenumbers(n, g.length(axis));
  for (std::size_t idx = 0; idx < hat.size(); ++idx) {
    const std::size_t m = axis == 0 ? g.ix(idx) : g.iy(idx);
    if (order == 1) {
      hat[idx] *= (n % 2 == 0 && m == n / 2) ? cplx(0.0) : cplx(0.0, k[m]);
    } else {
      hat[idx] *= -k[m] * k[m];
    }
  }
  return tr.inverse(std::move(hat));
}

template <typename T>
Field<T> spectral_apply(const Field<T>& f, int axis, int order) {
  std::vector<cplx> data(f.raw().begin(), f.raw().end());
  auto res = spectral_derivative(f.grid(), std::move(data), axis, order);
  Field<T> out(f.grid());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if constexpr (std::is_same_v<T, cplx>) {
      out[i] = res[i];
    } else {
      out[i] = res[i].real();
    }
  }
  return out;
}

}  // namespace detail

template <typename T>
Field<T> partial(const Field<T>& f, int axis, Stencil s = Stencil::central) {
  detail::require(axis < f.grid().dim(), "partial: axis out of range");
  return s == Stencil::spectral ? detail::spectral_apply(f, axis, 1) : detail::central_first(f, axis);
}

template <typename T>
Field<T> partial2(const Field<T>& f, int axis, Stencil s = Stencil::central) {
  detail::require(axis < f.grid().dim(), "partial2: axis out of range");
  return s == Stencil::spectral ? detail::spectral_apply(f, axis, 2) : detail::central_second(f, axis);
}

template <typename T>
Field<T> laplacian(const Field<T>& f, Stencil s = Stencil::central) {
  Field<T> out = partial2(f, 0, s);
  if (f.grid().dim() == 2) {
    auto yy = partial2(f, 1, s);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += yy[i];
  }
  return out;
}

inline VectorField gradient(const ScalarField& f, Stencil s = Stencil::central) {
  VectorField out(f.grid());
  out.comp[0] = partial(f, 0, s);
  if (f.grid().dim() == 2) out.comp[1] = partial(f, 1, s);
  return out;
}

inline ScalarField divergence(const VectorField& v, Stencil s = Stencil::central) {
  ScalarField out = partial(v.comp[0], 0, s);
  if (v.dim() == 2) {
    auto dy = partial(v.comp[1], 1, s);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += dy[i];
  }
  return out;
}

/// z-component of the curl in 2D; identically zero in 1D.
inline ScalarField curl(const VectorField& v, Stencil s = Stencil::central) {
  if (v.dim() == 1) return ScalarField(v.grid(), 0.0);
  auto dvy_dx = partial(v.comp[1], 0, s);
  auto dvx_dy = partial(v.comp[0], 1, s);
  for (std::size_t i = 0; i < dvy_dx.size(); ++i) dvy_dx[i] -= dvx_dy[i];
  return dvy_dx;
}

/// Nodes whose whole central stencil (one neighbour per side, or the three
/// inward points at a reflecting wall) is valid. Spectral stencils are
/// global, so the mask is returned unchanged for them.
inline Mask stencil_support(const Mask& valid, const Grid& g, Stencil s = Stencil::central) {
  if (s == Stencil::spectral) return valid;
  Mask out = valid;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    if (!valid[idx]) continue;
    for (int axis = 0; axis < g.dim() && out[idx]; ++axis) {
      const std::size_t n = g.n(axis);
      const std::size_t k = axis == 0 ? g.ix(idx) : g.iy(idx);
      auto at = [&](std::size_t kk) { return axis == 0 ? g.index(kk, g.iy(idx)) : g.index(g.ix(idx), kk); };
      auto ok = [&](std::size_t kk) { return valid[at(kk)] != 0; };
      bool good;
      if (k > 0 && k + 1 < n) {
        good = ok(k - 1) && ok(k + 1);
      } else if (g.periodic()) {
        good = ok(k == 0 ? n - 1 : k - 1) && ok(k + 1 == n ? 0 : k + 1);
      } else if (k == 0) {
        good = ok(1) && ok(2) && ok(3);
      } else {
        good = ok(n - 2) && ok(n - 3) && ok(n - 4);
      }
      if (!good) out[idx] = 0;
    }
  }
  return out;
}

}  // namespace qhydro
