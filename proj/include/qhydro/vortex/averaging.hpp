#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qhydro/vortex/profile.hpp"
#include "qhydro/vortex/viscosity.hpp"

namespace qhydro {

struct AveragedProfile {
  std::vector<double> r;
  std::vector<double> mean_omega;
  std::vector<double> stderr_omega;  // across ensemble members; 0 for deterministic models
  std::size_t members = 1;
  std::size_t clamped_samples = 0;
  std::vector<std::string> warnings;
};

struct AveragingOptions {
  std::size_t members = 64;  // ensemble size for ou_noise, member i uses seed + i
};

/// Time average of the Gaussian profile over `samples` midpoint instants
/// t_k = (k + 1/2) horizon / samples; for ou_noise also the ensemble mean
/// and standard error of the per-member time averages.
inline AveragedProfile long_time_average_profile(const ViscosityModel& model, double gamma, double horizon,
                                                 std::size_t samples, const std::vector<double>& r,
                                                 const AveragingOptions& opt = {}) {
  model.validate();
  detail::require(std::holds_alternative<viscosity::Cosine>(model.kind) || model.stochastic(),
                  "average: model must be cosine or ou_noise");
  detail::require(std::isfinite(horizon) && horizon > 0.0, "average: horizon must be > 0");
  detail::require(samples >= 1, "average: samples must be >= 1");
  detail::require(!model.stochastic() || opt.members >= 2, "average: ou_noise needs at least 2 members");

  AveragedProfile out;
  out.r = r;
  if (horizon < 10.0 * model.fluctuation_time())
    out.warnings.push_back("average: horizon shorter than 10 fluctuation times");

  const std::size_t members = model.stochastic() ? opt.members : 1;
  out.members = members;
  std::vector<double> sum(r.size(), 0.0), sum2(r.size(), 0.0), member(r.size());
  for (std::size_t i = 0; i < members; ++i) {
    ViscosityModel mi = model;
    if (auto* o = std::get_if<viscosity::OuNoise>(&mi.kind)) o->seed += i;
    const ViscosityHistory h(mi, horizon);
    std::fill(member.begin(), member.end(), 0.0);
    for (std::size_t k = 0; k < samples; ++k) {
      const double t = (static_cast<double>(k) + 0.5) * horizon / static_cast<double>(samples);
      const auto s = h.sigma(t);
      if (s.clamped) ++out.clamped_samples;
      for (std::size_t j = 0; j < r.size(); ++j) member[j] += omega_profile(gamma, s.value, r[j]);
    }
    for (std::size_t j = 0; j < r.size(); ++j) {
      const double a = member[j] / static_cast<double>(samples);
      sum[j] += a;
      sum2[j] += a * a;
    }
  }
  const double nm = static_cast<double>(members);
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double mean = sum[j] / nm;
    out.mean_omega.push_back(mean);
    if (members < 2) {
      out.stderr_omega.push_back(0.0);
    } else {
      const double var = std::max(sum2[j] - nm * mean * mean, 0.0) / (nm - 1.0);
      out.stderr_omega.push_back(std::sqrt(var / nm));
    }
  }
  if (out.clamped_samples > 0)
    out.warnings.push_back("average: Sigma clamped at " + std::to_string(out.clamped_samples) + " samples");
  return out;
}

}  // namespace qhydro
