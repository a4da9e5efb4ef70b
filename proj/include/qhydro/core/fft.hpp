#pragma once

#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "qhydro/core/constants.hpp"
#include "qhydro/core/field.hpp"

namespace qhydro::spectral {

/// Angular wavenumbers for an n-point periodic axis of length L, in FFT order.
inline std::vector<double> wavenumbers(std::size_t n, double length) {
  std::vector<double> k(n);
  const double base = 2.0 * kPi / length;
  for (std::size_t i = 0; i < n; ++i) {
    auto m = static_cast<long>(i);
    if (i > n / 2) m -= static_cast<long>(n);
    k[i] = base * static_cast<double>(m);
  }
  return k;
}

/// Forward/inverse transform of a field, x then y. Inverse is normalized.
class Transform {
 public:
  explicit Transform(const Grid& g) : grid_(g) {
    detail::require(g.periodic(), "spectral transform requires a periodic grid");
  }

  std::vector<cplx> forward(std::vector<cplx> data) const { return apply(std::move(data), true); }
  std::vector<cplx> inverse(std::vector<cplx> data) const { return apply(std::move(data), false); }

  std::vector<cplx> forward(const ScalarField& f) const {
    return forward(std::vector<cplx>(f.raw().begin(), f.raw().end()));
  }

 private:
  std::vector<cplx> apply(std::vector<cplx> data, bool fwd) const {
    const std::size_t nx = grid_.n(0);
    const std::size_t ny = grid_.dim() == 2 ? grid_.n(1) : 1;
    std::vector<cplx> in(nx), out(nx);
    for (std::size_t j = 0; j < ny; ++j) {
      std::copy_n(data.begin() + static_cast<long>(j * nx), nx, in.begin());
      fwd ? fft_.fwd(out, in) : fft_.inv(out, in);
      std::copy_n(out.begin(), nx, data.begin() + static_cast<long>(j * nx));
    }
    if (ny > 1) {
      std::vector<cplx> col(ny), res(ny);
      for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) col[j] = data[i + nx * j];
        fwd ? fft_.fwd(res, col) : fft_.inv(res, col);
        for (std::size_t j = 0; j < ny; ++j) data[i + nx * j] = res[j];
      }
    }
    return data;
  }

  Grid grid_;
  mutable Eigen::FFT<double> fft_;
};

}  // namespace qhydro::spectral
