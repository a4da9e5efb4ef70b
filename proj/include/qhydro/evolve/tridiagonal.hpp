#pragma once

#include <vector>

#include "qhydro/core/error.hpp"
#include "qhydro/core/field.hpp"

namespace qhydro {

/// Pre-factorized (optionally cyclic) tridiagonal system with constant
/// coefficients along one line:
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = r[i]
/// For cyclic systems lower[0] couples x[n-1] and upper[n-1] couples x[0].
/// The cyclic solve uses the Sherman-Morrison correction.
template <typename T>
class Tridiagonal {
 public:
  Tridiagonal(std::vector<T> lower, std::vector<T> diag, std::vector<T> upper, bool cyclic)
      : n_(diag.size()), cyclic_(cyclic), lower_(std::move(lower)), upper_(std::move(upper)) {
    detail::require(n_ >= 3 && lower_.size() == n_ && upper_.size() == n_, "tridiagonal: bad sizes");
    if (cyclic_) {
      gamma_ = -diag[0];
      diag[0] -= gamma_;
      diag[n_ - 1] -= lower_[0] * upper_[n_ - 1] / gamma_;
    }
    factor(diag);
    if (cyclic_) {
      std::vector<T> u(n_, T{});
      u[0] = gamma_;
      u[n_ - 1] = upper_[n_ - 1];
      z_ = thomas(std::move(u));
      v_last_ = lower_[0] / gamma_;
      denom_ = T{1} + z_[0] + v_last_ * z_[n_ - 1];
      detail::require(std::abs(denom_) > 0.0, "tridiagonal: singular cyclic system");
    }
  }

  std::size_t size() const { return n_; }

  std::vector<T> solve(std::vector<T> r) const {
    detail::require(r.size() == n_, "tridiagonal: rhs size mismatch");
    auto y = thomas(std::move(r));
    if (cyclic_) {
      const T f = (y[0] + v_last_ * y[n_ - 1]) / denom_;
      for (std::size_t i = 0; i < n_; ++i) y[i] -= f * z_[i];
    }
    return y;
  }

 private:
  void factor(const std::vector<T>& diag) {
    cp_.resize(n_);
    inv_.resize(n_);
    T b = diag[0];
    detail::require(std::abs(b) > 0.0, "tridiagonal: zero pivot");
    inv_[0] = T{1} / b;
    cp_[0] = upper_[0] * inv_[0];
    for (std::size_t i = 1; i < n_; ++i) {
      b = diag[i] - lower_[i] * cp_[i - 1];
      detail::require(std::abs(b) > 0.0, "tridiagonal: zero pivot");
      inv_[i] = T{1} / b;
      cp_[i] = upper_[i] * inv_[i];
    }
  }

  std::vector<T> thomas(std::vector<T> d) const {
    d[0] *= inv_[0];
    for (std::size_t i = 1; i < n_; ++i) d[i] = (d[i] - lower_[i] * d[i - 1]) * inv_[i];
    for (std::size_t i = n_ - 1; i-- > 0;) d[i] -= cp_[i] * d[i + 1];
    return d;
  }

  std::size_t n_;
  bool cyclic_;
  std::vector<T> lower_, upper_;
  std::vector<T> cp_, inv_;
  T gamma_{}, v_last_{}, denom_{};
  std::vector<T> z_;
};

}  // namespace qhydro
