#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qhydro/core/constants.hpp"
#include "qhydro/core/error.hpp"

namespace qhydro {

namespace viscosity {
struct Zero {};
struct Constant {
  double nu0 = 0.0;
};
/// nu(t) = nu0 cos(omega t).
struct Cosine {
  double nu0 = 0.0;
  double omega = 1.0;
};
/// Stationary Ornstein-Uhlenbeck process with standard deviation
/// `amplitude` and autocorrelation exp(-|dt| / correlation_time).
struct OuNoise {
  double amplitude = 0.02;
  double correlation_time = 0.5;
  std::uint64_t seed = 1;
};
}  // namespace viscosity

using ViscosityKind = std::variant<viscosity::Zero, viscosity::Constant, viscosity::Cosine, viscosity::OuNoise>;

inline std::string kind_name(const ViscosityKind& k) {
  switch (k.index()) {
    case 0: return "zero";
    case 1: return "constant";
    case 2: return "cosine";
    default: return "ou_noise";
  }
}

/// Kinematic viscosity nu(t) plus the floor sigma of the spreading
/// parameter Sigma(t) = integral_0^t nu + sigma^2.
struct ViscosityModel {
  ViscosityKind kind = viscosity::Zero{};
  double sigma = 1.0;

  void validate() const {
    detail::require(std::isfinite(sigma) && sigma > 0.0, "viscosity: sigma must be > 0");
    if (const auto* c = std::get_if<viscosity::Constant>(&kind)) {
      detail::require(std::isfinite(c->nu0), "viscosity: nu0 must be finite");
    } else if (const auto* c = std::get_if<viscosity::Cosine>(&kind)) {
      detail::require(std::isfinite(c->omega) && c->omega > 0.0, "viscosity: cosine omega must be > 0");
      detail::require(std::isfinite(c->nu0) && std::abs(c->nu0) <= 0.9 * c->omega * sigma * sigma,
                      "viscosity: cosine model needs |nu0| <= 0.9 omega sigma^2");
    } else if (const auto* o = std::get_if<viscosity::OuNoise>(&kind)) {
      detail::require(std::isfinite(o->amplitude) && o->amplitude >= 0.0, "viscosity: ou amplitude must be >= 0");
      detail::require(std::isfinite(o->correlation_time) && o->correlation_time > 0.0,
                      "viscosity: ou correlation_time must be > 0");
    }
  }

  bool stochastic() const { return std::holds_alternative<viscosity::OuNoise>(kind); }

  /// Fluctuation time scale: the cosine period or the OU correlation time
  /// (0 for the non-fluctuating kinds).
  double fluctuation_time() const {
    if (const auto* c = std::get_if<viscosity::Cosine>(&kind)) return 2.0 * kPi / c->omega;
    if (const auto* o = std::get_if<viscosity::OuNoise>(&kind)) return o->correlation_time;
    return 0.0;
  }
};

struct SigmaValue {
  double value = 0.0;
  bool clamped = false;
};

namespace detail {

inline SigmaValue clamp_sigma(double raw, double sigma) {
  const double floor = 1e-3 * sigma * sigma;
  if (raw <= floor) return {floor, true};
  return {raw, false};
}

/// splitmix64 finalizer; derives independent stream seeds from one base.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// One realization of nu(t) on [0, horizon]. Deterministic kinds are
/// evaluated in closed form. The OU kind is sampled exactly (AR(1)) on a
/// lattice of step correlation_time / 32, interpolated linearly, and its
/// integral is the matching trapezoid sum.
class ViscosityHistory {
 public:
  ViscosityHistory(ViscosityModel model, double horizon) : model_(std::move(model)), horizon_(horizon) {
    model_.validate();
    detail::require(std::isfinite(horizon) && horizon >= 0.0, "viscosity: horizon must be >= 0");
    if (const auto* o = std::get_if<viscosity::OuNoise>(&model_.kind)) {
      step_ = o->correlation_time / 32.0;
      const auto n = static_cast<std::size_t>(std::ceil(horizon / step_)) + 1;
      std::mt19937_64 rng(detail::splitmix64(o->seed));
      std::normal_distribution<double> normal(0.0, 1.0);
      const double rho = std::exp(-step_ / o->correlation_time);
      const double kick = o->amplitude * std::sqrt(1.0 - rho * rho);
      nu_.resize(n + 1);
      cum_.assign(n + 1, 0.0);
      nu_[0] = o->amplitude * normal(rng);
      for (std::size_t k = 1; k <= n; ++k) {
        nu_[k] = rho * nu_[k - 1] + kick * normal(rng);
        cum_[k] = cum_[k - 1] + 0.5 * step_ * (nu_[k - 1] + nu_[k]);
      }
    }
  }

  const ViscosityModel& model() const { return model_; }
  double horizon() const { return horizon_; }

  double nu(double t) const {
    check(t);
    return std::visit(
        [&](const auto& k) -> double {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, viscosity::Zero>) {
            return 0.0;
          } else if constexpr (std::is_same_v<K, viscosity::Constant>) {
            return k.nu0;
          } else if constexpr (std::is_same_v<K, viscosity::Cosine>) {
            return k.nu0 * std::cos(k.omega * t);
          } else {
            const auto [i, f] = locate(t);
            return (1.0 - f) * nu_[i] + f * nu_[i + 1];
          }
        },
        model_.kind);
  }

  /// integral_0^t nu.
  double integral(double t) const {
    check(t);
    return std::visit(
        [&](const auto& k) -> double {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, viscosity::Zero>) {
            return 0.0;
          } else if constexpr (std::is_same_v<K, viscosity::Constant>) {
            return k.nu0 * t;
          } else if constexpr (std::is_same_v<K, viscosity::Cosine>) {
            return k.nu0 / k.omega * std::sin(k.omega * t);
          } else {
            const auto [i, f] = locate(t);
            const double s = f * step_;
            const double slope = (nu_[i + 1] - nu_[i]) / step_;
            return cum_[i] + nu_[i] * s + 0.5 * slope * s * s;
          }
        },
        model_.kind);
  }

  /// Sigma(t), clamped at 1e-3 sigma^2 (and flagged) if it would drop lower.
  SigmaValue sigma(double t) const {
    return detail::clamp_sigma(integral(t) + model_.sigma * model_.sigma, model_.sigma);
  }

 private:
  void check(double t) const {
    detail::require(std::isfinite(t) && t >= 0.0, "viscosity: t must be >= 0");
    detail::require(!model_.stochastic() || t <= horizon_ * (1.0 + 1e-12),
                    "viscosity: t beyond the sampled horizon");
  }

  std::pair<std::size_t, double> locate(double t) const {
    const double u = t / step_;
    const auto i = std::min(static_cast<std::size_t>(u), nu_.size() - 2);
    return {i, u - static_cast<double>(i)};
  }

  ViscosityModel model_;
  double horizon_ = 0.0;
  double step_ = 0.0;
  std::vector<double> nu_, cum_;
};

/// Sigma(t) for a deterministic model. OU models need a ViscosityHistory.
inline SigmaValue sigma_accumulate(const ViscosityModel& model, double t) {
  detail::require(!model.stochastic(), "sigma_accumulate: ou_noise needs a sampled ViscosityHistory");
  return ViscosityHistory(model, t).sigma(t);
}

inline SigmaValue sigma_accumulate(const ViscosityHistory& h, double t) { return h.sigma(t); }

}  // namespace qhydro
