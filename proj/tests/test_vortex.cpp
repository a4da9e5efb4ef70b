#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qhydro/vortex/averaging.hpp"
#include "qhydro/vortex/profile.hpp"
#include "qhydro/vortex/radial_solver.hpp"
#include "qhydro/vortex/viscosity.hpp"

using namespace qhydro;

namespace {

ViscosityModel make(ViscosityKind k, double sigma = 1.0) {
  ViscosityModel m;
  m.kind = k;
  m.sigma = sigma;
  return m;
}

/// Area-weighted relative L2 distance between radial profiles.
double rel_l2(const std::vector<double>& r, const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0, den = 0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double w = std::max(r[j], 1e-3 * r[1]);
    num += (a[j] - b[j]) * (a[j] - b[j]) * w;
    den += b[j] * b[j] * w;
  }
  return std::sqrt(num / den);
}

std::vector<double> gaussian(const std::vector<double>& r, double gamma, double sig) {
  std::vector<double> w;
  for (double x : r) w.push_back(oracle::lo_omega(gamma, sig, x));
  return w;
}

/// Composite Simpson on [0, t].
template <typename F>
double simpson(F&& f, double t, std::size_t n = 20000) {
  const double h = t / static_cast<double>(n);
  double s = f(0.0) + f(t);
  for (std::size_t k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return s * h / 3.0;
}

}  // namespace

TEST(Viscosity, ZeroKindKeepsSigmaFloor) {
  const auto m = make(viscosity::Zero{}, 1.7);
  for (double t : {0.0, 1.0, 100.0}) EXPECT_DOUBLE_EQ(sigma_accumulate(m, t).value, 1.7 * 1.7);
}

TEST(Viscosity, ConstantKindIsLinear) {
  const auto m = make(viscosity::Constant{0.3}, 1.2);
  for (double t : {0.0, 0.5, 7.0}) EXPECT_NEAR(sigma_accumulate(m, t).value, 0.3 * t + 1.44, 1e-14);
}

TEST(Viscosity, CosineMatchesQuadrature) {
  const double nu0 = 0.4, om = 1.3;
  const auto m = make(viscosity::Cosine{nu0, om});
  for (double t : {0.3, 2.0, 5.5, 11.0}) {
    const double q = simpson([&](double s) { return nu0 * std::cos(om * s); }, t);
    EXPECT_NEAR(sigma_accumulate(m, t).value, q + 1.0, 1e-10);
    EXPECT_NEAR(sigma_accumulate(m, t).value, nu0 / om * std::sin(om * t) + 1.0, 1e-14);
  }
}

TEST(Viscosity, CosineComplianceBound) {
  EXPECT_NO_THROW(make(viscosity::Cosine{0.9, 1.0}).validate());
  EXPECT_THROW(make(viscosity::Cosine{0.91, 1.0}).validate(), InvalidArgument);
  EXPECT_THROW(make(viscosity::Cosine{0.1, 0.0}).validate(), InvalidArgument);
  EXPECT_THROW(make(viscosity::Zero{}, 0.0).validate(), InvalidArgument);
}

TEST(Viscosity, NonPositiveSigmaIsClampedAndFlagged) {
  const auto m = make(viscosity::Constant{-1.0});
  const auto ok = sigma_accumulate(m, 0.5);
  EXPECT_FALSE(ok.clamped);
  const auto bad = sigma_accumulate(m, 2.0);
  EXPECT_TRUE(bad.clamped);
  EXPECT_DOUBLE_EQ(bad.value, 1e-3);
}

TEST(Viscosity, CompliantCosineNeverClamps) {
  const auto m = make(viscosity::Cosine{0.9, 2.0}, 1.0);
  for (int k = 0; k < 1000; ++k) EXPECT_FALSE(sigma_accumulate(m, 0.01 * k).clamped);
}

TEST(Viscosity, OuStatisticsAndDeterminism) {
  const double amp = 0.05, tau = 0.5, horizon = 2000.0;
  const ViscosityHistory h(make(viscosity::OuNoise{amp, tau, 11}), horizon);
  double s = 0, s2 = 0;
  const std::size_t n = 200000;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = h.nu(horizon * (k + 0.5) / n);
    s += v;
    s2 += v * v;
  }
  const double mean = s / n, var = s2 / n - mean * mean;
  // effective sample count horizon / (2 tau)
  EXPECT_LT(std::abs(mean), 4.0 * amp / std::sqrt(horizon / (2 * tau)));
  EXPECT_NEAR(var / (amp * amp), 1.0, 0.1);

  const ViscosityHistory same(make(viscosity::OuNoise{amp, tau, 11}), horizon);
  const ViscosityHistory other(make(viscosity::OuNoise{amp, tau, 12}), horizon);
  EXPECT_EQ(h.nu(3.3), same.nu(3.3));
  EXPECT_NE(h.nu(3.3), other.nu(3.3));
}

TEST(Viscosity, OuIntegralMatchesInterpolatedPath) {
  const ViscosityHistory h(make(viscosity::OuNoise{0.1, 0.3, 5}), 10.0);
  for (double t : {0.37, 4.0, 9.99}) {
    const double q = simpson([&](double s) { return h.nu(s); }, t, 200000);
    EXPECT_NEAR(h.integral(t), q, 1e-8);
  }
  EXPECT_THROW(h.nu(10.5), InvalidArgument);
  EXPECT_THROW(sigma_accumulate(make(viscosity::OuNoise{}), 1.0), InvalidArgument);
}

TEST(Profile, AxisLimits) {
  EXPECT_DOUBLE_EQ(omega_profile(2.0, 0.5, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(v_profile(2.0, 0.5, 0.0), 0.0);
  // v ~ Gamma r / (8 Sigma) near the axis
  EXPECT_NEAR(v_profile(2.0, 0.5, 1e-6) / 1e-6, 2.0 / 4.0, 1e-9);
  EXPECT_THROW(omega_profile(1.0, 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(v_profile(1.0, -1.0, 1.0), InvalidArgument);
}

TEST(Profile, FreeCirculationTail) {
  for (double sig : {0.3, 1.0, 4.0}) {
    const double r = 20.0 * std::sqrt(sig);
    EXPECT_NEAR(v_profile(1.5, sig, r) / (1.5 / (2 * r)), 1.0, 1e-8);
  }
}

TEST(Profile, VorticityVelocityDuality) {
  for (double sig : {0.25, 1.0, 3.0})
    for (double gamma : {1.0, -2.5}) {
      const double s = std::sqrt(sig), h = 1e-4 * s;
      double worst = 0;
      for (double x = 0.1 * s; x <= 10 * s; x += 0.05 * s) {
        const double d = ((x + h) * v_profile(gamma, sig, x + h) - (x - h) * v_profile(gamma, sig, x - h)) / (2 * h);
        worst = std::max(worst, std::abs(d / x - omega_profile(gamma, sig, x)));
      }
      EXPECT_LT(worst, 1e-8) << sig << " " << gamma;
    }
}

TEST(Profile, ShapeInvariants) {
  const auto p = make_profile(1.0, 1.0, radial_grid(20.0, 2001));
  for (std::size_t j = 1; j < p.r.size(); ++j) {
    EXPECT_GT(p.omega[j], 0.0);
    EXPECT_LT(p.omega[j], p.omega[j - 1]);
  }
  const auto peak = std::max_element(p.v.begin(), p.v.end()) - p.v.begin();
  EXPECT_NEAR(p.r[peak], p.r0, p.r[1]);
  // single interior maximum: increasing before, decreasing after
  for (long j = 1; j < peak; ++j) EXPECT_GT(p.v[j], p.v[j - 1]);
  for (std::size_t j = peak + 1; j < p.v.size(); ++j) EXPECT_LT(p.v[j], p.v[j - 1]);
}

TEST(CoreRadius, RootAndValue) {
  const double xi = core_xi();
  EXPECT_LT(std::abs(std::exp(xi) - 1 - 2 * xi), 1e-12);
  EXPECT_NEAR(xi, 1.25643, 1e-5);
  EXPECT_NEAR(core_radius(1.0), 2.24181, 1e-4);
  for (double sig : {0.1, 2.0, 9.0}) EXPECT_NEAR(core_radius(4 * sig) / core_radius(sig), 2.0, 1e-14);
}

TEST(CoreRadius, MatchesDirectMaximization) {
  // golden-section search on v(r), independent of the root equation
  for (double sig : {0.5, 1.0, 3.0}) {
    auto f = [&](double r) { return -v_profile(1.0, sig, r); };
    double a = 0.1, b = 10.0 * std::sqrt(sig);
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 200; ++it) {
      const double c = b - g * (b - a), d = a + g * (b - a);
      (f(c) < f(d) ? b : a) = (f(c) < f(d) ? d : c);
    }
    EXPECT_NEAR(0.5 * (a + b), core_radius(sig), 1e-6 * std::sqrt(sig));
  }
}

TEST(Circulation, EnclosedValues) {
  EXPECT_NEAR(enclosed_circulation(1.0, 1.0, 20.0), 1.0, 1e-8);
  EXPECT_NEAR(enclosed_circulation(1.0, 2.0, core_radius(2.0)), 0.71534, 1e-5);
  EXPECT_NEAR(1 - std::exp(-core_xi()), 0.71534, 1e-5);
  EXPECT_DOUBLE_EQ(enclosed_circulation(1.0, 1.0, 0.0), 0.0);
  for (double r : {0.3, 1.0, 4.0})
    EXPECT_NEAR(enclosed_circulation(2.0, 1.0, r), 2.0 * enclosed_circulation(1.0, 1.0, r), 1e-15);
}

TEST(Circulation, MonotoneAndBounded) {
  double prev = 0;
  for (double r = 0.01; r < 30; r += 0.01) {
    const double c = enclosed_circulation(1.0, 1.0, r);
    EXPECT_GE(c, prev);
    EXPECT_LE(c, 1.0);
    prev = c;
  }
}

TEST(Circulation, FromSamples) {
  const auto p = make_profile(1.0, 1.0, radial_grid(20.0, 512));
  EXPECT_DOUBLE_EQ(enclosed_circulation(p.r, p.v, 0.0), 0.0);
  EXPECT_NEAR(enclosed_circulation(p.r, p.v, p.r[100]), enclosed_circulation(1.0, 1.0, p.r[100]), 1e-14);
  EXPECT_NEAR(enclosed_circulation(p.r, p.v, p.r0), 0.71534, 1e-3);
  EXPECT_THROW(enclosed_circulation(p.r, p.v, 21.0), InvalidArgument);
}

TEST(RadialSolver, ZeroViscosityIsPermanent) {
  const auto r = radial_grid(20.0, 512);
  const auto w0 = gaussian(r, 1.0, 1.0);
  const ViscosityHistory h(make(viscosity::Zero{}), 10.0);
  const auto out = evolve_radial_vorticity(r, w0, h, 0.01, 1000, {100});
  double drift = 0;
  for (const auto& w : out.omega)
    for (std::size_t j = 0; j < r.size(); ++j) drift = std::max(drift, std::abs(w[j] - w0[j]));
  EXPECT_LT(drift, 1e-12);
}

TEST(RadialSolver, ConstantViscosityMatchesSpreadingGaussian) {
  const auto r = radial_grid(20.0, 512);
  const double nu0 = 0.5;
  const ViscosityHistory h(make(viscosity::Constant{nu0}), 2.0);
  const auto out = evolve_radial_vorticity(r, gaussian(r, 1.0, 1.0), h, 0.01, 200, {50});
  ASSERT_NEAR(out.sigma_eff.back(), 2.0, 1e-12);
  for (std::size_t k = 0; k < out.times.size(); ++k) {
    const double sig = nu0 * out.times[k] + 1.0;
    EXPECT_LT(rel_l2(r, out.omega[k], gaussian(r, 1.0, sig)), 1e-3) << out.times[k];
  }
}

TEST(RadialSolver, ConvergesAtSecondOrder) {
  const ViscosityHistory h(make(viscosity::Constant{0.5}), 2.0);
  std::vector<double> err;
  for (std::size_t n : {129, 257, 513}) {
    const auto r = radial_grid(20.0, n);
    const auto out = evolve_radial_vorticity(r, gaussian(r, 1.0, 1.0), h, 0.02 * 128.0 / (n - 1), 100 * (n - 1) / 128);
    err.push_back(rel_l2(r, out.omega.back(), gaussian(r, 1.0, 2.0)));
  }
  EXPECT_NEAR(std::log2(err[0] / err[1]), 2.0, 0.25);
  EXPECT_NEAR(std::log2(err[1] / err[2]), 2.0, 0.25);
}

TEST(RadialSolver, CosineViscosityIsPeriodic) {
  const auto r = radial_grid(20.0, 512);
  const double om = 1.0, period = 2 * oracle::pi / om;
  const auto w0 = gaussian(r, 1.0, 1.0);
  const ViscosityHistory h(make(viscosity::Cosine{0.5, om}), 3 * period);
  const std::size_t per = 1000;
  const auto out = evolve_radial_vorticity(r, w0, h, period / per, 3 * per, {50});
  const std::size_t stride_per = per / 50;
  EXPECT_LT(rel_l2(r, out.omega[stride_per], w0), 1e-3);
  for (std::size_t k = 0; k + stride_per < out.omega.size(); ++k)
    EXPECT_LT(rel_l2(r, out.omega[k + stride_per], out.omega[k]), 1e-3) << out.times[k];
}

TEST(RadialSolver, DiffusiveScalingMapsSolutions) {
  const double lam = 2.0;
  const ViscosityHistory h(make(viscosity::Constant{0.5}), 8.0);
  const auto r1 = radial_grid(20.0, 256), r2 = radial_grid(20.0 * lam, 256);
  const auto a = evolve_radial_vorticity(r1, gaussian(r1, 1.0, 1.0), h, 0.01, 100);
  const auto b = evolve_radial_vorticity(r2, gaussian(r2, 1.0, lam * lam), h, 0.01 * lam * lam, 100);
  for (std::size_t j = 0; j < r1.size(); ++j)
    EXPECT_NEAR(b.omega.back()[j] * lam * lam, a.omega.back()[j], 1e-13);
}

TEST(RadialSolver, WarningsAndRejections) {
  const auto r = radial_grid(20.0, 512);
  const auto w0 = gaussian(r, 1.0, 1.0);
  const ViscosityHistory h(make(viscosity::Constant{1.0}), 10.0);
  EXPECT_FALSE(evolve_radial_vorticity(r, w0, h, 0.1, 5).warnings.empty());
  EXPECT_TRUE(evolve_radial_vorticity(r, w0, h, 0.001, 5).warnings.empty());
  auto bad = w0;
  bad[3] = std::nan("");
  EXPECT_THROW(evolve_radial_vorticity(r, bad, h, 0.01, 5), InvalidArgument);
  auto uneven = r;
  uneven[5] += 1e-3;
  EXPECT_THROW(evolve_radial_vorticity(uneven, w0, h, 0.01, 5), InvalidArgument);
  EXPECT_THROW(evolve_radial_vorticity(r, w0, h, 0.0, 5), InvalidArgument);
  const ViscosityHistory ou(make(viscosity::OuNoise{}), 1.0);
  EXPECT_THROW(evolve_radial_vorticity(r, w0, ou, 0.01, 200), InvalidArgument);
}

TEST(Averaging, CosineCentreMatchesPeriodQuadrature) {
  const double om = 1.0, nu0 = 0.5, period = 2 * oracle::pi;
  const auto m = make(viscosity::Cosine{nu0, om});
  const auto a = long_time_average_profile(m, 1.0, 100 * period, 10000, {0.0});
  const double quad = simpson([&](double t) { return 1.0 / (4.0 * (1.0 + nu0 / om * std::sin(om * t))); }, period) / period;
  EXPECT_NEAR(quad, 1.0 / (4.0 * std::sqrt(1.0 - 0.25)), 1e-10);
  EXPECT_LT(std::abs(a.mean_omega[0] / quad - 1.0), 0.02);
  EXPECT_TRUE(a.warnings.empty());
}

TEST(Averaging, VanishingAmplitudeGivesGaussianExactly) {
  const auto m = make(viscosity::Cosine{0.0, 1.0}, 1.3);
  const auto r = radial_grid(10.0, 64);
  const auto a = long_time_average_profile(m, 2.0, 100.0, 500, r);
  for (std::size_t j = 0; j < r.size(); ++j)
    EXPECT_NEAR(a.mean_omega[j], omega_profile(2.0, 1.69, r[j]), 1e-12);
}

TEST(Averaging, OuEnsembleMatchesSecondOrderExpectation) {
  // The ensemble mean of omega(Sigma) carries the convexity shift
  // f''(sigma^2)/2 * <Var I(t)>, I = integral of nu, Var I(t) =
  // 2 a^2 tau^2 (t/tau - 1 + exp(-t/tau)) for a stationary OU process.
  const double amp = 0.02, tau = 0.5, horizon = 20.0;
  const std::size_t samples = 2000;
  const auto m = make(viscosity::OuNoise{amp, tau, 1});
  const auto r = radial_grid(12.0, 308);
  const auto a = long_time_average_profile(m, 1.0, horizon, samples, r);
  EXPECT_EQ(a.members, 64u);
  double var_i = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = (k + 0.5) * horizon / samples;
    var_i += 2 * amp * amp * tau * tau * (t / tau - 1 + std::exp(-t / tau));
  }
  var_i /= samples;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double q = r[j] * r[j] / 4, f = oracle::lo_omega(1.0, 1.0, r[j]);
    const double d1 = -1 + q, f2 = f * (d1 * d1 + 1 - 2 * q);
    const double expect = f + 0.5 * f2 * var_i;
    EXPECT_LE(std::abs(a.mean_omega[j] - expect), 3 * a.stderr_omega[j]) << "r = " << r[j];
  }
}

TEST(Averaging, WarningsAndRejections) {
  const auto m = make(viscosity::Cosine{0.5, 1.0});
  EXPECT_FALSE(long_time_average_profile(m, 1.0, 20.0, 100, {0.0}).warnings.empty());
  EXPECT_THROW(long_time_average_profile(make(viscosity::Constant{0.1}), 1.0, 10.0, 10, {0.0}), InvalidArgument);
  EXPECT_THROW(long_time_average_profile(m, 1.0, 0.0, 10, {0.0}), InvalidArgument);
}
