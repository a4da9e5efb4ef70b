#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qhydro/bohm/seeds.hpp"
#include "qhydro/bohm/trajectories.hpp"
#include "qhydro/bohm/vortex_scene.hpp"
#include "qhydro/evolve/schrodinger.hpp"

using namespace qhydro;

namespace {

const PhysicalConstants kUnit{1.0, 1.0};

ScalarField gaussian_density(const Grid& g, double s, double x0 = 0.0) {
  auto rho = ScalarField::sample(g, [&](double x, double) {
    return std::exp(-(x - x0) * (x - x0) / (2 * s * s)) / std::sqrt(2 * oracle::pi * s * s);
  });
  const double n = integrate(rho);
  for (auto& r : rho.raw()) r /= n;
  return rho;
}

ComplexField normalized(ComplexField psi) {
  const double n = norm(psi);
  for (auto& z : psi.raw()) z /= std::sqrt(n);
  return psi;
}

struct PacketRun {
  EvolutionResult evo;
  TrajectoryBundle bundle;
};

/// Free packet, sigma0 = 1, periodic [-16, 16), evolved to t = 2 m s0^2 / hbar.
PacketRun free_packet_run(std::size_t n_grid, std::size_t steps, std::size_t stride, std::size_t seeds,
                          double shift_cells = 0) {
  const Grid g = Grid::line(-16.0, 16.0, n_grid, Boundary::periodic);
  oracle::FreePacket p;
  p.x0 = shift_cells * g.spacing(0);
  const auto psi0 = normalized(ComplexField::sample(g, [&](double x, double) { return p.psi(x, 0.0); }));
  EvolutionConfig cfg;
  cfg.dt = 2.0 / static_cast<double>(steps);
  cfg.steps = steps;
  cfg.snapshot_stride = stride;
  PacketRun run{evolve(psi0, potential::Free{}, cfg, kUnit), {}};
  const auto rho0 = psi0.map([](cplx z) { return std::norm(z); });
  const auto set = sample_seeds(rho0, seeds, SeedMode::quantile);
  run.bundle = integrate_bundle(run.evo.snapshots, std::nullopt, set.positions, kUnit);
  return run;
}

}  // namespace

TEST(Seeds, ThreeQuantilesOfGaussian) {
  const double s = 1.3;
  const Grid g = Grid::line(-12.0, 12.0, 2048, Boundary::periodic);
  const auto set = sample_seeds(gaussian_density(g, s), 3, SeedMode::quantile);
  ASSERT_EQ(set.positions.size(), 3u);
  const double z = oracle::normal_quantile(5.0 / 6.0);
  EXPECT_NEAR(z, 0.9674, 1e-4);
  EXPECT_NEAR(set.positions[0][0], -z * s, 1e-5);
  EXPECT_NEAR(set.positions[1][0], 0.0, 1e-12);
  EXPECT_NEAR(set.positions[2][0], z * s, 1e-5);
}

TEST(Seeds, SymmetricDensityGivesSymmetricSeeds) {
  const Grid g = Grid::line(-10.0, 10.0, 400, Boundary::reflecting);
  const auto set = sample_seeds(gaussian_density(g, 1.0), 20, SeedMode::quantile);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(set.positions[i][0], -set.positions[19 - i][0], 1e-10);
}

TEST(Seeds, SingleSeedAtMedian) {
  const Grid g = Grid::line(-10.0, 10.0, 256, Boundary::periodic);
  const auto set = sample_seeds(gaussian_density(g, 1.0, 1.25), 1, SeedMode::quantile);
  ASSERT_EQ(set.positions.size(), 1u);
  EXPECT_NEAR(set.positions[0][0], 1.25, 1e-12);
}

TEST(Seeds, PlateauResolvesToLeftmostPoint) {
  // two boxes separated by a zero gap: the median level lands on the flat
  // stretch [4.1, 5.9] of the piecewise-linear CDF
  const Grid g = Grid::line(0.0, 10.0, 101, Boundary::reflecting);
  auto rho = ScalarField::sample(g, [](double x, double) { return (x <= 4.0 || x >= 6.0) ? 1.0 : 0.0; });
  const double n = integrate(rho);
  for (auto& r : rho.raw()) r /= n;
  const auto set = sample_seeds(rho, 1, SeedMode::quantile);
  EXPECT_NEAR(set.positions[0][0], 4.1, 1e-12);
}

TEST(Seeds, UniformLatticeSpansSupport) {
  const Grid g = Grid::line(-10.0, 10.0, 401, Boundary::reflecting);
  const auto set = sample_seeds(gaussian_density(g, 1.0), 4, SeedMode::uniform);
  ASSERT_EQ(set.positions.size(), 4u);
  const double d = set.positions[1][0] - set.positions[0][0];
  EXPECT_NEAR(set.positions[3][0] - set.positions[2][0], d, 1e-12);
  EXPECT_NEAR(set.positions[0][0], -set.positions[3][0], 1e-12);
  // support edge: rho / max = 1e-6 at |x| = sqrt(2 ln 1e6) ~ 5.26
  EXPECT_GT(set.positions[3][0], 3.0);
  EXPECT_LT(set.positions[3][0], 5.26);
}

TEST(Seeds, TwoDimensionalProductQuantiles) {
  const Grid g = Grid::plane({-8, 8, 128}, {-8, 8, 128}, Boundary::periodic);
  auto rho = ScalarField::sample(g, [](double x, double y) { return std::exp(-(x * x + y * y) / 2) / (2 * oracle::pi); });
  const auto set = sample_seeds(rho, 9, SeedMode::quantile);
  ASSERT_EQ(set.positions.size(), 9u);
  EXPECT_NEAR(set.positions[4][0], 0.0, 1e-12);
  EXPECT_NEAR(set.positions[4][1], 0.0, 1e-12);
  EXPECT_THROW(sample_seeds(rho, 10, SeedMode::quantile), InvalidArgument);
}

TEST(Seeds, RejectsAndWarns) {
  const Grid g = Grid::line(-10.0, 10.0, 64, Boundary::periodic);
  auto rho = gaussian_density(g, 1.0);
  EXPECT_THROW(sample_seeds(rho, 0, SeedMode::quantile), InvalidArgument);
  EXPECT_FALSE(sample_seeds(rho, 100, SeedMode::quantile).warnings.empty());
  for (auto& r : rho.raw()) r *= 2.0;
  EXPECT_THROW(sample_seeds(rho, 3, SeedMode::quantile), InvalidArgument);
}

TEST(Trajectories, FreePacketSpreadLaw) {
  const auto run = free_packet_run(512, 1000, 1, 32);
  const auto& b = run.bundle;
  oracle::FreePacket p;
  ASSERT_NEAR(b.times.back(), 2.0, 1e-12);
  double worst = 0.0;
  for (std::size_t i = 0; i < b.paths.size(); ++i) {
    EXPECT_EQ(b.paths[i][0], b.seeds[i]);
    EXPECT_EQ(b.final_flags(i), 0);
    const double expect = p.trajectory(b.seeds[i][0], 2.0);
    worst = std::max(worst, std::abs(b.paths[i].back()[0] - expect) / std::abs(expect));
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(Trajectories, NonCrossingAndIncreasingTimes) {
  const auto run = free_packet_run(512, 400, 4, 64);
  const auto& b = run.bundle;
  for (std::size_t k = 1; k < b.times.size(); ++k) EXPECT_GT(b.times[k], b.times[k - 1]);
  for (std::size_t k = 0; k < b.times.size(); ++k)
    for (std::size_t i = 1; i < b.paths.size(); ++i) ASSERT_LT(b.paths[i - 1][k][0], b.paths[i][k][0]);
}

TEST(Trajectories, TranslationEquivariance) {
  const auto a = free_packet_run(256, 200, 2, 16, 0);
  const auto s = free_packet_run(256, 200, 2, 16, 10);
  const double offset = 10 * 32.0 / 256.0;
  for (std::size_t i = 0; i < a.bundle.paths.size(); ++i)
    for (std::size_t k = 0; k < a.bundle.times.size(); ++k)
      ASSERT_NEAR(s.bundle.paths[i][k][0] - a.bundle.paths[i][k][0], offset, 1e-9);
}

TEST(Trajectories, DensityTransportL1) {
  const auto run = free_packet_run(512, 1000, 10, 10000);
  const auto& b = run.bundle;
  oracle::FreePacket p;
  // histogram on bins of width 0.25 over [-8, 8] against the exact cell mass
  const double lo = -8.0, w = 0.25;
  const std::size_t bins = 64;
  std::vector<double> hist(bins, 0.0);
  for (const auto& path : b.paths) {
    const double x = path.back()[0];
    if (x < lo || x >= lo + bins * w) continue;
    hist[static_cast<std::size_t>((x - lo) / w)] += 1.0 / static_cast<double>(b.paths.size());
  }
  const double s = p.width(2.0);
  double l1 = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    const double a = lo + k * w, c = a + w;
    const double mass = 0.5 * (std::erf(c / (std::sqrt(2.0) * s)) - std::erf(a / (std::sqrt(2.0) * s)));
    l1 += std::abs(hist[k] - mass);
  }
  EXPECT_LT(l1, 0.02);
}

TEST(Trajectories, SnapshotStrideRefinementIsSecondOrder) {
  // same evolution (dt fixed); only the snapshot spacing handed to the integrator changes
  const Grid g = Grid::line(-16.0, 16.0, 512, Boundary::periodic);
  oracle::FreePacket p;
  p.k0 = 0.0;
  const auto psi0 = normalized(ComplexField::sample(g, [&](double x, double) { return p.psi(x, 0.0); }));
  EvolutionConfig cfg;
  cfg.dt = 2e-3;
  cfg.steps = 1000;
  cfg.snapshot_stride = 1;
  const auto evo = evolve(psi0, potential::Free{}, cfg, kUnit);
  auto every = [&](std::size_t k) {
    std::vector<WaveField> out;
    for (std::size_t i = 0; i < evo.snapshots.size(); i += k) out.push_back(evo.snapshots[i]);
    return out;
  };
  TrajectoryOptions opt;
  opt.substeps = 2;
  const std::vector<Point> seeds{{-1.5, 0.0}, {0.4, 0.0}, {2.0, 0.0}};
  const auto b200 = integrate_bundle(every(200), std::nullopt, seeds, kUnit, opt);
  const auto b100 = integrate_bundle(every(100), std::nullopt, seeds, kUnit, opt);
  const auto b50 = integrate_bundle(every(50), std::nullopt, seeds, kUnit, opt);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const double d1 = std::abs(b200.paths[i].back()[0] - b100.paths[i].back()[0]);
    const double d2 = std::abs(b100.paths[i].back()[0] - b50.paths[i].back()[0]);
    EXPECT_GT(d1 / d2, 3.5) << "seed " << i;
  }
}

TEST(Trajectories, PlaneWaveStraightLines) {
  const Grid g = Grid::line(0.0, 20.0, 256, Boundary::periodic);
  const double k = 2 * oracle::pi * 3 / 20.0;
  const auto psi0 = normalized(ComplexField::sample(g, [&](double x, double) { return std::polar(1.0, k * x); }));
  EvolutionConfig cfg;
  cfg.dt = 1e-3;
  cfg.steps = 500;
  cfg.snapshot_stride = 50;
  const auto evo = evolve(psi0, potential::Free{}, cfg, kUnit);
  const std::vector<Point> seeds{{1.0, 0.0}, {7.3, 0.0}, {19.9, 0.0}};
  const auto b = integrate_bundle(evo.snapshots, std::nullopt, seeds, kUnit);
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t t = 0; t < b.times.size(); ++t) {
      EXPECT_NEAR(b.paths[i][t][0], seeds[i][0] + k * b.times[t], 1e-10);
      EXPECT_NEAR(b.velocities[i][t][0], k, 1e-10);
    }
}

TEST(Trajectories, HarmonicGroundStateIsStationary) {
  const Grid g = Grid::line(-8.0, 8.0, 128, Boundary::periodic);
  oracle::HarmonicGround ho;
  const auto psi0 = normalized(ComplexField::sample(g, [&](double x, double) { return ho.psi(x); }));
  EvolutionConfig cfg;
  cfg.dt = 1e-4;
  cfg.steps = 1000;
  cfg.snapshot_stride = 50;
  cfg.scheme = Scheme::split_step_fourier;
  const auto evo = evolve(psi0, potential::Harmonic{1.0}, cfg, kUnit);
  const auto rho0 = psi0.map([](cplx z) { return std::norm(z); });
  const auto set = sample_seeds(rho0, 16, SeedMode::quantile);
  const auto b = integrate_bundle(evo.snapshots, std::nullopt, set.positions, kUnit);
  for (std::size_t i = 0; i < b.paths.size(); ++i)
    EXPECT_LT(std::abs(b.paths[i].back()[0] - b.seeds[i][0]), 1e-8);
}

TEST(Trajectories, NodeProximityIsFlagged) {
  // first excited oscillator state: a density node at x = 0, v = 0 elsewhere
  const Grid g = Grid::line(-8.0, 8.0, 129, Boundary::reflecting);
  const auto psi = normalized(ComplexField::sample(g, [](double x, double) { return x * std::exp(-x * x / 2); }));
  std::vector<WaveField> snaps{to_polar(psi, kUnit, {}, 0.0), to_polar(psi, kUnit, {}, 1.0)};
  ASSERT_FALSE(snaps[0].valid[64]);
  const double h = g.spacing(0);
  const std::vector<Point> seeds{{0.5 * h, 0.0}, {3.5 * h, 0.0}, {10 * h, 0.0}};
  const auto b = integrate_bundle(snaps, std::nullopt, seeds, kUnit);
  EXPECT_TRUE(b.final_flags(0) & path_flag::entered_node);
  EXPECT_EQ(b.paths[0].back(), seeds[0]);
  EXPECT_TRUE(b.final_flags(1) & path_flag::near_node);
  EXPECT_FALSE(b.final_flags(1) & path_flag::entered_node);
  EXPECT_EQ(b.final_flags(2), 0);
  EXPECT_FALSE(b.warnings.empty());
}

TEST(Trajectories, ExitFromReflectingDomainIsClipped) {
  const Grid g = Grid::line(0.0, 10.0, 201, Boundary::reflecting);
  const auto psi = normalized(ComplexField::sample(g, [](double x, double) { return std::polar(1.0, 1.0 * x); }));
  std::vector<WaveField> snaps{to_polar(psi, kUnit, {}, 0.0), to_polar(psi, kUnit, {}, 1.0)};
  const std::vector<Point> seeds{{9.5, 0.0}, {2.0, 0.0}};
  const auto b = integrate_bundle(snaps, std::nullopt, seeds, kUnit);
  EXPECT_TRUE(b.final_flags(0) & path_flag::exited);
  EXPECT_DOUBLE_EQ(b.paths[0].back()[0], 10.0);
  EXPECT_EQ(b.final_flags(1), 0);
  EXPECT_NEAR(b.paths[1].back()[0], 3.0, 1e-12);
}

TEST(Trajectories, RejectsBadInput) {
  const Grid g = Grid::line(0.0, 10.0, 64, Boundary::reflecting);
  const auto psi = normalized(ComplexField(g, cplx(1.0, 0.0)));
  std::vector<WaveField> snaps{to_polar(psi, kUnit, {}, 0.0)};
  EXPECT_THROW(integrate_bundle(snaps, std::nullopt, {{1.0, 0.0}}, kUnit), InvalidArgument);
  snaps.push_back(to_polar(psi, kUnit, {}, 1.0));
  snaps.push_back(to_polar(psi, kUnit, {}, 2.5));
  EXPECT_THROW(integrate_bundle(snaps, std::nullopt, {{1.0, 0.0}}, kUnit), InvalidArgument);
  snaps.pop_back();
  EXPECT_THROW(integrate_bundle(snaps, std::nullopt, {{11.0, 0.0}}, kUnit), InvalidArgument);
}

TEST(FlowScene, NoCirculationStagnationPoints) {
  VortexSceneSpec s;
  s.cylinder_radius = 1.5;
  s.x_min = -6, s.x_max = 6, s.y_min = -5, s.y_max = 5;
  const auto pts = stagnation_points(s);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_NEAR(pts[0][0], -1.5, 1e-6);
  EXPECT_NEAR(pts[0][1], 0.0, 1e-6);
  EXPECT_NEAR(pts[1][0], 1.5, 1e-6);
  EXPECT_NEAR(pts[1][1], 0.0, 1e-6);
  for (const auto& p : pts) EXPECT_LT(std::hypot(s.velocity(p)[0], s.velocity(p)[1]), 1e-12);
}

TEST(FlowScene, NoCirculationSymmetry) {
  VortexSceneSpec s;
  for (double x : {1.2, 2.5, 3.7})
    for (double y : {0.3, 1.1, 2.9}) {
      const auto v = s.velocity({x, y});
      const auto vx = s.velocity({-x, y});
      const auto vy = s.velocity({x, -y});
      EXPECT_NEAR(v[0], vx[0], 1e-14);
      EXPECT_NEAR(v[1], -vx[1], 1e-14);
      EXPECT_NEAR(v[0], vy[0], 1e-14);
      EXPECT_NEAR(v[1], -vy[1], 1e-14);
    }
}

TEST(FlowScene, StagnationPointsWithCirculation) {
  VortexSceneSpec s;
  for (double gamma : {3.0, -7.0, 4 * oracle::pi, 20.0, -30.0}) {
    s.circulation = gamma;
    const auto pts = stagnation_points(s);
    ASSERT_FALSE(pts.empty());
    for (const auto& p : pts) {
      const auto v = s.velocity(p);
      EXPECT_LT(std::hypot(v[0], v[1]), 1e-12) << gamma;
      EXPECT_GE(std::hypot(p[0], p[1]), s.cylinder_radius - 1e-12);
    }
    if (std::abs(gamma) > 4 * oracle::pi) {
      EXPECT_GT(std::abs(pts[0][1]), s.cylinder_radius);
    }
  }
}

TEST(FlowScene, VelocityIsCurlOfStreamFunction) {
  VortexSceneSpec s;
  s.circulation = 5.0;
  const double e = 1e-5;
  for (Point p : {Point{2.0, 1.0}, Point{-1.5, 2.2}, Point{0.3, -3.1}}) {
    const double u = (s.stream({p[0], p[1] + e}) - s.stream({p[0], p[1] - e})) / (2 * e);
    const double v = -(s.stream({p[0] + e, p[1]}) - s.stream({p[0] - e, p[1]})) / (2 * e);
    EXPECT_NEAR(u, s.velocity(p)[0], 1e-8);
    EXPECT_NEAR(v, s.velocity(p)[1], 1e-8);
  }
}

TEST(FlowScene, StreamlinesConserveStreamFunctionAndAvoidCylinder) {
  for (double gamma : {0.0, 5.0, -15.0}) {
    VortexSceneSpec s;
    s.circulation = gamma;
    const auto scene = streamlines_around_vortex(s, 21);
    ASSERT_EQ(scene.lines.size(), 21u);
    for (const auto& line : scene.lines) {
      EXPECT_NE(line.stop, "cylinder");
      EXPECT_NE(line.stop, "length");
      for (std::size_t k = 0; k < line.points.size(); ++k) {
        ASSERT_LT(std::abs(line.stream[k] - line.stream[0]), 1e-6) << "gamma " << gamma;
        ASSERT_GE(std::hypot(line.points[k][0], line.points[k][1]), s.cylinder_radius - 1e-9);
      }
    }
  }
}

TEST(FlowScene, PureVortexGivesCircles) {
  VortexSceneSpec s;
  s.u_inf = 0.0;
  s.circulation = 2.0;
  const auto scene = streamlines_around_vortex(s, 5);
  ASSERT_EQ(scene.lines.size(), 5u);
  EXPECT_TRUE(scene.stagnation.empty());
  for (const auto& line : scene.lines) {
    EXPECT_EQ(line.stop, "closed");
    const double r0 = std::hypot(line.points[0][0], line.points[0][1]);
    for (const auto& p : line.points) ASSERT_NEAR(std::hypot(p[0], p[1]), r0, 1e-8);
    EXPECT_NEAR(line.points.back()[0], line.points[0][0], 1e-8);
    EXPECT_NEAR(line.points.back()[1], 0.0, 1e-8);
    EXPECT_NEAR(line.s.back(), 2 * oracle::pi * r0, 1e-6);
  }
}

TEST(FlowScene, RejectsSeedsAndBadScenes) {
  VortexSceneSpec s;
  const auto scene = streamlines_around_vortex(s, std::vector<Point>{{0.2, 0.1}, {-5.0, 1.0}});
  EXPECT_EQ(scene.lines.size(), 1u);
  EXPECT_EQ(scene.rejected_seeds.size(), 1u);
  EXPECT_FALSE(scene.warnings.empty());
  VortexSceneSpec tight;
  tight.x_max = 2.5;
  EXPECT_THROW(tight.validate(), InvalidArgument);
  VortexSceneSpec still;
  still.u_inf = 0.0;
  EXPECT_THROW(still.validate(), InvalidArgument);
}
