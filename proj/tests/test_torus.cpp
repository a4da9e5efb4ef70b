#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "qhydro/torus/double_cover.hpp"
#include "qhydro/torus/mesh.hpp"
#include "qhydro/torus/regions.hpp"
#include "qhydro/torus/ring.hpp"
#include "qhydro/torus/shape.hpp"
#include "qhydro/torus/sweep.hpp"

using namespace qhydro;

namespace {

constexpr double pi = oracle::pi;

TorusShape half_frequency(double a, double b) { return TorusShape::with_ratio(a, b, 2, 1, 0.5); }

Vec3 rotate_z(const Vec3& p, double alpha) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  return {c * p[0] - s * p[1], s * p[0] + c * p[1], p[2]};
}

double hausdorff(const std::vector<Vec3>& p, const std::vector<Vec3>& q) {
  auto one_way = [](const std::vector<Vec3>& u, const std::vector<Vec3>& v) {
    double worst = 0.0;
    for (const auto& x : u) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : v) best = std::min(best, length(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(p, q), one_way(q, p));
}

/// Discrete parallel transport by projection: carry r to each new sample by
/// removing its tangential part and renormalizing.
Vec3 projected_transport(const TorusShape& s, double t0, double t1, std::size_t n, Vec3 r) {
  for (std::size_t i = 1; i <= n; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n);
    const double h = 1e-6;
    const Vec3 tan = normalized(torus_point(s, t + h) - torus_point(s, t - h));
    r = normalized(r - dot(r, tan) * tan);
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- point

TEST(TorusPoint, StartsAtOuterEquator) {
  TorusShape s = half_frequency(2.0, 4.0);
  const Vec3 p = torus_point(s, 0.0);
  EXPECT_EQ(p[0], 6.0);
  EXPECT_EQ(p[1], 0.0);
  EXPECT_EQ(p[2], 0.0);
}

TEST(TorusPoint, AxialRadiusMatchesTubeFormula) {
  TorusShape s = half_frequency(2.0, 4.0);
  s.phi0 = 0.3;
  s.phi1 = 1.1;
  double worst = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double t = 0.01 * i;
    const Vec3 p = torus_point(s, t);
    const double theta = s.omega0 * t + s.phi0;
    worst = std::max(worst, std::abs(std::hypot(p[0], p[1]) - (s.b + s.a * std::cos(theta))));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(TorusPoint, HeightSpansTubeDiameter) {
  TorusShape s = half_frequency(2.0, 4.0);
  double lo = 1e9, hi = -1e9;
  for (int i = 0; i <= 4096; ++i) {
    const double z = torus_point(s, 2.0 * pi / s.omega0 * i / 4096.0)[2];
    lo = std::min(lo, z);
    hi = std::max(hi, z);
  }
  EXPECT_NEAR(lo, -2.0, 1e-12);
  EXPECT_NEAR(hi, 2.0, 1e-12);
}

TEST(TorusShapeTest, RejectsInvalid) {
  TorusShape s;
  s.a = 0.0;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = TorusShape{};
  s.b = -1.0;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = TorusShape{};
  s.phi1 = 2.0 * pi;
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = TorusShape{};
  s.omega0 = 1.5;  // ratio says 2
  EXPECT_THROW(s.validate(), InvalidArgument);
  EXPECT_THROW(Rational::make(0, 1), InvalidArgument);
}

// ---------------------------------------------------------------- ring

TEST(Ring, HalfFrequencyClosesAfterTwoTubeTurns) {
  const TorusShape s = half_frequency(2.0, 4.0);
  const auto ring = helicoidal_ring(s);
  EXPECT_TRUE(ring.closed);
  EXPECT_EQ(ring.turns_about_tube, 2);
  EXPECT_EQ(ring.turns_about_axis, 1);
  EXPECT_DOUBLE_EQ(ring.period, 4.0 * pi / s.omega0);
  EXPECT_LT(ring.closure_gap, 1e-10 * s.a);
  EXPECT_GE(ring.samples.size(), 2u * 64u + 1u);
}

TEST(Ring, EqualFrequenciesCloseAfterOneTurn) {
  const TorusShape s = TorusShape::with_ratio(2.0, 4.0, 3, 3, 0.7);
  const auto ring = helicoidal_ring(s);
  EXPECT_EQ(ring.turns_about_tube, 1);
  EXPECT_EQ(ring.turns_about_axis, 1);
  EXPECT_NEAR(ring.period, 2.0 * pi / s.omega0, 1e-14);
  EXPECT_LT(ring.closure_gap, 1e-10 * s.a);
}

TEST(Ring, TurnCountsAreLowestTerms) {
  const auto ring = helicoidal_ring(TorusShape::with_ratio(1.0, 3.0, 6, 4));
  EXPECT_EQ(ring.turns_about_tube, 3);
  EXPECT_EQ(ring.turns_about_axis, 2);
  EXPECT_LT(ring.closure_gap, 1e-10);
}

TEST(Ring, WithoutExactRatioIsOpen) {
  TorusShape s = half_frequency(2.0, 4.0);
  s.ratio.reset();
  s.omega1 = s.omega0 / std::sqrt(2.0);
  const auto ring = helicoidal_ring(s);
  EXPECT_FALSE(ring.closed);
  EXPECT_EQ(ring.turns_about_tube, 0);
  EXPECT_GT(ring.closure_gap, 1e-3);
}

TEST(Ring, RejectsCoarseSampling) {
  RingOptions opt;
  opt.samples_per_tube_turn = 63;
  EXPECT_THROW(helicoidal_ring(half_frequency(2.0, 4.0), opt), InvalidArgument);
}

TEST(Ring, OrientationTagAlternatesPerRevolution) {
  RingOptions opt;
  opt.samples_per_tube_turn = 64;
  const auto ring = helicoidal_ring(half_frequency(2.0, 4.0), opt);
  ASSERT_EQ(ring.samples.size(), 129u);
  EXPECT_EQ(ring.orientation_tag[0], 1);
  EXPECT_EQ(ring.orientation_tag[64], 1);  // closes the first revolution
  EXPECT_EQ(ring.orientation_tag[65], -1);
  EXPECT_EQ(ring.orientation_tag[128], -1);
  EXPECT_NEAR(ring.axis_angle[128], 4.0 * pi, 1e-12);
}

TEST(Ring, PhaseShiftIsRigidRotation) {
  RingOptions opt;
  opt.samples_per_tube_turn = 128;
  TorusShape s = half_frequency(2.0, 4.0);
  const auto base = helicoidal_ring(s, opt);
  s.phi0 = 5.0 * 2.0 * pi / 128.0;
  const auto shifted = helicoidal_ring(s, opt);

  // drop the repeated closing sample and register by cyclic shift plus z rotation
  std::vector<Vec3> p(base.samples.begin(), base.samples.end() - 1);
  std::vector<Vec3> q(shifted.samples.begin(), shifted.samples.end() - 1);
  const std::size_t n = p.size();
  double best_rms = 1e300, best_alpha = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double sc = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3& u = q[i];
      const Vec3& v = p[(i + k) % n];
      sc += u[0] * v[0] + u[1] * v[1];
      ss += u[0] * v[1] - u[1] * v[0];
    }
    const double alpha = std::atan2(ss, sc);
    double rms = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 d = rotate_z(q[i], alpha) - p[(i + k) % n];
      rms += dot(d, d);
    }
    if (rms < best_rms) {
      best_rms = rms;
      best_alpha = alpha;
    }
  }
  std::vector<Vec3> moved;
  for (const auto& x : q) moved.push_back(rotate_z(x, best_alpha));
  EXPECT_LT(hausdorff(moved, p), 1e-9);
}

TEST(Ring, DownsamplingKeepsEveryOtherVertex) {
  RingOptions fine, coarse;
  fine.samples_per_tube_turn = 256;
  coarse.samples_per_tube_turn = 128;
  TorusShape s = half_frequency(2.0, 1.0);
  s.phi0 = 0.4;
  const auto f = helicoidal_ring(s, fine);
  const auto c = helicoidal_ring(s, coarse);
  const auto refined = helicoidal_ring(c.shape, fine);
  ASSERT_EQ(f.samples.size(), 2 * c.samples.size() - 1);
  for (std::size_t i = 0; i < c.samples.size(); ++i) {
    EXPECT_EQ(c.t[i], f.t[2 * i]);
    EXPECT_EQ(c.samples[i], f.samples[2 * i]);
  }
  for (std::size_t i = 0; i < f.samples.size(); ++i) EXPECT_EQ(refined.samples[i], f.samples[i]);
}

// ---------------------------------------------------------------- measures

TEST(Measures, FormulaValues) {
  const auto m = torus_measures(2.0, 4.0);
  EXPECT_NEAR(m.volume, 32.0 * pi * pi, 1e-12);
  EXPECT_NEAR(m.area, 32.0 * pi * pi, 1e-12);
  EXPECT_NEAR(m.volume, 315.827, 1e-3);
  EXPECT_EQ(m.regime, TorusRegime::ring);
  const auto tiny = torus_measures(0.0, 4.0);
  EXPECT_EQ(tiny.volume, 0.0);
  EXPECT_EQ(tiny.area, 0.0);
  const auto deg = torus_measures(2.0, 0.0);
  EXPECT_EQ(deg.volume, 0.0);
  EXPECT_EQ(deg.area, 0.0);
  EXPECT_EQ(deg.regime, TorusRegime::degenerate);
  EXPECT_EQ(torus_measures(2.0, 2.0).regime, TorusRegime::horn);
  EXPECT_EQ(torus_measures(2.0, 1.0).regime, TorusRegime::spindle);
}

TEST(Measures, ApproachZeroWithTubeRadius) {
  double prev = torus_measures(1.0, 4.0).volume;
  for (double a : {0.1, 0.01, 0.001}) {
    const auto m = torus_measures(a, 4.0);
    EXPECT_LT(m.volume, prev);
    EXPECT_NEAR(m.area, 16.0 * pi * pi * a, 1e-12);
    prev = m.volume;
  }
}

TEST(Measures, ScaleAsVolumeAndArea) {
  const double lambda = 1.7;
  for (double b : {4.0, 2.0, 1.0, 0.0}) {
    const auto f0 = torus_measures(2.0, b), f1 = torus_measures(2.0 * lambda, b * lambda);
    EXPECT_NEAR(f1.volume, f0.volume * std::pow(lambda, 3), 1e-12 * std::max(1.0, f1.volume));
    EXPECT_NEAR(f1.area, f0.area * lambda * lambda, 1e-12 * std::max(1.0, f1.area));
    const auto m0 = mesh_measures(mesh_torus(half_frequency(2.0, b), 64, 64));
    const auto m1 = mesh_measures(mesh_torus(half_frequency(2.0 * lambda, b * lambda), 64, 64));
    EXPECT_NEAR(m1.unsigned_area / m0.unsigned_area, lambda * lambda, 1e-12);
    EXPECT_NEAR(m1.enclosed_volume / m0.enclosed_volume, std::pow(lambda, 3), 1e-12);
  }
}

// ---------------------------------------------------------------- mesh

TEST(Mesh, RingAreaMatchesFormula) {
  const auto mm = mesh_measures(mesh_torus(half_frequency(2.0, 4.0), 256, 256));
  const double exact = 4.0 * pi * pi * 4.0 * 2.0;
  EXPECT_LT(std::abs(mm.unsigned_area - exact) / exact, 1e-3);
  const double vol = 2.0 * pi * pi * 4.0 * 4.0;
  EXPECT_LT(std::abs(mm.enclosed_volume - vol) / vol, 5e-3);
  EXPECT_NEAR(mm.signed_volume, mm.enclosed_volume, 1e-9 * vol);
}

TEST(Mesh, AreaConvergesAtSecondOrder) {
  const double exact = 4.0 * pi * pi * 4.0 * 2.0;
  std::vector<double> err;
  for (std::size_t n : {32u, 64u, 128u}) {
    err.push_back(std::abs(mesh_measures(mesh_torus(half_frequency(2.0, 4.0), n, n)).unsigned_area - exact));
  }
  EXPECT_GT(err[0] / err[1], 3.5);
  EXPECT_GT(err[1] / err[2], 3.5);
}

TEST(Mesh, DegenerateSphereIsDoublyCoated) {
  const double a = 2.0;
  const auto mesh = mesh_torus(half_frequency(a, 0.0), 256, 256);
  const auto mm = mesh_measures(mesh);
  EXPECT_EQ(mm.regime, TorusRegime::degenerate);
  const double sphere_area = 4.0 * pi * a * a;
  EXPECT_LT(std::abs(mm.unsigned_area - 2.0 * sphere_area) / (2.0 * sphere_area), 2e-3);
  EXPECT_LT(std::abs(0.5 * mm.unsigned_area - sphere_area) / sphere_area, 2e-3);
  const double ball = 4.0 * pi * a * a * a / 3.0;
  EXPECT_LT(std::abs(mm.enclosed_volume - ball) / ball, 5e-3);
  // opposite sheets cancel in the fully signed sum
  EXPECT_LT(std::abs(mm.signed_volume), 1e-9 * ball);
  EXPECT_GT(mesh.dropped_triangles, 0u);
}

TEST(Mesh, SignedVolumeFollowsFormulaInEveryRegime) {
  for (double b : {3.0, 2.0, 1.0, 0.5}) {
    const auto mm = mesh_measures(mesh_torus(half_frequency(2.0, b), 256, 256));
    const double v = torus_measures(2.0, b).volume;
    EXPECT_LT(std::abs(mm.signed_volume - v) / v, 5e-3) << "b = " << b;
  }
}

TEST(Mesh, NormalsAreUnit) {
  for (double b : {4.0, 2.0, 1.0, 0.0}) {
    const auto mesh = mesh_torus(half_frequency(2.0, b), 64, 96);
    for (const auto& n : mesh.normals) ASSERT_NEAR(length(n), 1.0, 1e-12);
  }
}

TEST(Mesh, NormalsFollowSurfaceOrientation) {
  const auto mesh = mesh_torus(half_frequency(2.0, 1.0), 64, 64);
  // vertex normal agrees with the winding of each incident face where that face is not flat
  std::size_t agree = 0, total = 0;
  for (std::size_t f = 0; f < mesh.quads.size(); ++f) {
    const auto& q = mesh.quads[f];
    const Vec3 fn = cross(mesh.vertices[q[1]] - mesh.vertices[q[0]], mesh.vertices[q[3]] - mesh.vertices[q[0]]);
    if (length(fn) < 1e-8) continue;
    ++total;
    if (dot(fn, mesh.normals[q[0]]) > 0.0) ++agree;
  }
  EXPECT_GT(static_cast<double>(agree) / static_cast<double>(total), 0.95);
}

TEST(Mesh, RejectsCoarseLattice) {
  EXPECT_THROW(mesh_torus(half_frequency(2.0, 4.0), 31, 64), InvalidArgument);
}

// ---------------------------------------------------------------- normal reversal

TEST(NormalReversal, ContinuousWhenTubeClearsAxis) {
  for (double b : {4.0, 3.0, 2.0}) {
    const std::size_t n = 96;
    const auto rep = normal_reversals(mesh_torus(half_frequency(2.0, b), n, n));
    EXPECT_EQ(rep.flipped_edges, 0u) << "b = " << b;
    EXPECT_TRUE(rep.locus_abs_z.empty());
    EXPECT_LT(rep.max_turn, 2.0 * pi / n + 1e-12);
  }
}

TEST(NormalReversal, SpindleHasOneLocusAtIntersection) {
  const double a = 2.0;
  for (double b : {1.5, 1.0, 0.5, 0.01, 0.0}) {
    const auto rep = normal_reversals(mesh_torus(half_frequency(a, b), 128, 128));
    ASSERT_EQ(rep.locus_abs_z.size(), 1u) << "b = " << b;
    EXPECT_NEAR(rep.locus_abs_z[0], std::sqrt(a * a - b * b), 1e-12) << "b = " << b;
    EXPECT_EQ(rep.flipped_edges, 2u * 128u);
  }
}

// ---------------------------------------------------------------- regions

TEST(Regions, RingHasNoSpindle) {
  const auto cs = cross_section_regions(2.0, 3.0);
  EXPECT_TRUE(cs.has(Region::outer));
  EXPECT_TRUE(cs.has(Region::tube));
  EXPECT_FALSE(cs.has(Region::spindle));
  EXPECT_TRUE(cs.intersections.empty());
  EXPECT_FALSE(cs.contact.has_value());
}

TEST(Regions, SpindleIntersection) {
  const auto cs = cross_section_regions(2.0, 1.0);
  EXPECT_TRUE(cs.has(Region::spindle));
  ASSERT_EQ(cs.intersections.size(), 2u);
  EXPECT_EQ(cs.intersections[0][0], 0.0);
  EXPECT_NEAR(cs.intersections[0][1], std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(cs.intersections[1][1], -std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(cs.intersections[0][1], 1.7321, 1e-4);
  // both tube circles pass through the reported points
  for (const auto& p : cs.intersections) {
    EXPECT_NEAR(std::hypot(p[0] - 1.0, p[1]), 2.0, 1e-12);
    EXPECT_NEAR(std::hypot(p[0] + 1.0, p[1]), 2.0, 1e-12);
  }
}

TEST(Regions, HornTouchesAtOrigin) {
  const auto cs = cross_section_regions(2.0, 2.0);
  EXPECT_FALSE(cs.has(Region::spindle));
  ASSERT_TRUE(cs.contact.has_value());
  EXPECT_EQ((*cs.contact)[0], 0.0);
  EXPECT_EQ((*cs.contact)[1], 0.0);
}

TEST(Regions, DegenerateSphereHasNoTube) {
  const auto cs = cross_section_regions(2.0, 0.0);
  EXPECT_TRUE(cs.has(Region::sphere_interior));
  EXPECT_FALSE(cs.has(Region::tube));
  EXPECT_EQ(region_at(2.0, 0.0, 0.5, 0.5), Region::sphere_interior);
}

TEST(Regions, PointClassification) {
  EXPECT_EQ(region_at(2.0, 1.0, 0.0, 0.0), Region::spindle);
  EXPECT_EQ(region_at(2.0, 1.0, 2.5, 0.0), Region::tube);
  EXPECT_EQ(region_at(2.0, 1.0, 3.5, 0.0), Region::outer);
  EXPECT_EQ(region_at(2.0, 1.0, 0.0, 1.8), Region::outer);
  EXPECT_EQ(region_at(2.0, 3.0, 0.0, 0.0), Region::outer);
  EXPECT_EQ(region_at(2.0, 3.0, 3.0, 0.0), Region::tube);
}

// ---------------------------------------------------------------- double cover

TEST(DoubleCover, ReversedAfterOneRevolutionRestoredAfterTwo) {
  const auto ring = helicoidal_ring(half_frequency(2.0, 0.001));
  const auto trace = double_cover_rotation(ring);
  EXPECT_TRUE(trace.degenerate);
  ASSERT_EQ(trace.states.size(), 3u);
  EXPECT_NEAR(trace.states[0].direction_dot, 1.0, 1e-12);
  EXPECT_NEAR(trace.states[1].axis_angle_deg, 360.0, 1e-9);
  EXPECT_NEAR(trace.states[1].direction_dot, -1.0, 1e-6);
  EXPECT_NEAR(trace.states[2].axis_angle_deg, 720.0, 1e-9);
  EXPECT_NEAR(trace.states[2].direction_dot, 1.0, 1e-6);
  EXPECT_EQ(trace.states[1].orientation_tag, -1);
  EXPECT_EQ(trace.states[2].orientation_tag, 1);
}

TEST(DoubleCover, NormalMatchesProjectionTransport) {
  const TorusShape s = half_frequency(2.0, 0.001);
  const auto ring = helicoidal_ring(s);
  const auto trace = double_cover_rotation(ring);
  // independent transport of the same initial normal, sampled 10^4 times per half
  const double t0 = (0.5 * pi) / s.omega0;
  const double tt = ring.period;
  const Vec3 tan0 = normalized(torus_point(s, t0 + 1e-6) - torus_point(s, t0 - 1e-6));
  const Vec3 guess = tube_normal(0.5 * pi, s.omega1 * t0);
  const Vec3 r0 = normalized(guess - dot(guess, tan0) * tan0);
  const Vec3 r1 = projected_transport(s, t0, t0 + 0.5 * tt, 10000, r0);
  const Vec3 r2 = projected_transport(s, t0 + 0.5 * tt, t0 + tt, 10000, r1);
  EXPECT_NEAR(trace.states[1].normal_dot, dot(r1, r0), 5e-3);
  EXPECT_NEAR(trace.states[2].normal_dot, dot(r2, r0), 5e-3);
}

TEST(DoubleCover, ReverseTraversalFlipsSequence) {
  const auto ring = helicoidal_ring(half_frequency(2.0, 0.001));
  const auto fwd = double_cover_rotation(ring, Traversal::forward);
  const auto rev = double_cover_rotation(ring, Traversal::reverse);
  ASSERT_EQ(rev.states.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(rev.states[k].direction_dot, -fwd.states[k].direction_dot, 1e-6);
  EXPECT_NEAR(rev.states[0].direction_dot, -1.0, 1e-6);
  EXPECT_NEAR(rev.states[1].direction_dot, 1.0, 1e-6);
  EXPECT_NEAR(rev.states[2].direction_dot, -1.0, 1e-6);
}

TEST(DoubleCover, HornRingAlsoReturnsAfterTwoRevolutions) {
  const auto trace = double_cover_rotation(helicoidal_ring(half_frequency(2.0, 2.0)));
  EXPECT_FALSE(trace.degenerate);
  EXPECT_NEAR(trace.states[1].direction_dot, -1.0, 1e-6);
  EXPECT_NEAR(trace.states[2].direction_dot, 1.0, 1e-6);
}

TEST(DoubleCover, RejectsOpenOrSingleTurnRing) {
  TorusShape open = half_frequency(2.0, 0.001);
  open.ratio.reset();
  EXPECT_THROW(double_cover_rotation(helicoidal_ring(open)), InvalidArgument);
  EXPECT_THROW(double_cover_rotation(helicoidal_ring(TorusShape::with_ratio(2.0, 0.001, 1, 1))), InvalidArgument);
}

// ---------------------------------------------------------------- sweep

TEST(Sweep, SpindleSequence) {
  const auto sweep = spindle_sweep(half_frequency(2.0, 4.0), kSpindleSweepB);
  ASSERT_EQ(sweep.size(), 6u);
  const std::vector<double> expected{3.0, 2.0, 1.5, 1.0, 0.5, 0.01};
  for (std::size_t k = 0; k < sweep.size(); ++k) {
    const auto& e = sweep[k];
    EXPECT_EQ(e.shape.b, expected[k]);
    EXPECT_EQ(e.shape.a, 2.0);
    EXPECT_TRUE(e.ring.closed);
    EXPECT_LT(e.ring.closure_gap, 1e-10 * e.shape.a);
    const bool spindle = e.shape.b < e.shape.a;
    EXPECT_EQ(e.regions.has(Region::spindle), spindle);
    EXPECT_EQ(e.reversals.locus_abs_z.size(), spindle ? 1u : 0u) << "b = " << e.shape.b;
  }
}

TEST(Sweep, RingSequenceStaysClosed) {
  const auto sweep = spindle_sweep(half_frequency(2.0, 4.0), kRingSweepB);
  ASSERT_EQ(sweep.size(), 5u);
  EXPECT_EQ(sweep.back().shape.b, 0.001);
  for (const auto& e : sweep) {
    EXPECT_EQ(e.ring.turns_about_tube, 2);
    EXPECT_LT(e.ring.closure_gap, 1e-10 * e.shape.a);
  }
}

TEST(Sweep, RejectsUnsortedList) {
  EXPECT_THROW(spindle_sweep(half_frequency(2.0, 4.0), {1.0, 2.0}), InvalidArgument);
  EXPECT_THROW(spindle_sweep(half_frequency(2.0, 4.0), {1.0, -0.5}), InvalidArgument);
}
