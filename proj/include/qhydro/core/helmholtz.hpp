#pragma once

#include <array>
#include <vector>

#include "qhydro/core/fft.hpp"
#include "qhydro/core/field.hpp"

namespace qhydro {

struct HelmholtzParts {
  VectorField v_s;  // curl-free, carries the mean
  VectorField v_r;  // divergence-free, zero mean
};

/// Spectral Leray projection on a periodic 2D grid. Nyquist wavenumbers are
/// zeroed in the projector so the split is exact for the spectral curl and
/// divergence, which also drop them.
inline HelmholtzParts helmholtz_decompose(const VectorField& v) {
  const Grid& g = v.grid();
  detail::require(g.dim() == 2, "helmholtz_decompose: 2D field required");
  detail::require(g.periodic(), "helmholtz_decompose: only periodic grids are supported");

  spectral::Transform tr(g);
  auto vx = tr.forward(v.comp[0]);
  auto vy = tr.forward(v.comp[1]);
  const std::size_t nx = g.n(0), ny = g.n(1);
  auto kx = spectral::wavenumbers(nx, g.length(0));
  auto ky = spectral::wavenumbers(ny, g.length(1));
  if (nx % 2 == 0) kx[nx / 2] = 0.0;
  if (ny % 2 == 0) ky[ny / 2] = 0.0;

  std::vector<cplx> sx(g.size()), sy(g.size());
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const double a = kx[g.ix(idx)], b = ky[g.iy(idx)];
    const double k2 = a * a + b * b;
    if (k2 == 0.0) {
      sx[idx] = vx[idx];
      sy[idx] = vy[idx];
      continue;
    }
    const cplx dot = (a * vx[idx] + b * vy[idx]) / k2;
    sx[idx] = a * dot;
    sy[idx] = b * dot;
  }
  sx = tr.inverse(std::move(sx));
  sy = tr.inverse(std::move(sy));

  HelmholtzParts out{VectorField(g), VectorField(g)};
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.v_s.comp[0][i] = sx[i].real();
    out.v_s.comp[1][i] = sy[i].real();
    out.v_r.comp[0][i] = v.comp[0][i] - sx[i].real();
    out.v_r.comp[1][i] = v.comp[1][i] - sy[i].real();
  }
  return out;
}

}  // namespace qhydro
