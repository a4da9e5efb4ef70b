#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "qhydro/torus/shape.hpp"

namespace qhydro {

/// Periodic (theta, phi) lattice of the surface, theta_i = 2 pi i / n_theta,
/// phi_j = 2 pi j / n_phi. Vertex (i, j) is stored at i * n_phi + j. Quads
/// are ordered so that their winding follows X_phi x X_theta, i.e. the
/// geometric normal a (b + a cos theta) n_tube.
struct SurfaceMesh {
  double a = 0.0;
  double b = 0.0;
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;
  std::vector<Vec3> vertices;
  std::vector<Vec3> normals;  // unit; sign of b + a cos theta times n_tube
  std::vector<std::array<std::size_t, 4>> quads;
  std::vector<double> face_area;
  std::size_t dropped_triangles = 0;

  double theta(std::size_t i) const { return 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_theta); }
  double phi(std::size_t j) const { return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_phi); }
  std::size_t vertex(std::size_t i, std::size_t j) const { return (i % n_theta) * n_phi + (j % n_phi); }
};

namespace detail {

inline double triangle_area(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
  return 0.5 * length(cross(p1 - p0, p2 - p0));
}

// Triangles below this area (relative to a^2) are pole slivers of b = 0.
inline constexpr double kDegenerateArea = 1e-14;

inline std::array<std::array<std::size_t, 3>, 2> split_quad(const std::array<std::size_t, 4>& q) {
  return {{{q[0], q[1], q[2]}, {q[0], q[2], q[3]}}};
}

}  // namespace detail

inline SurfaceMesh mesh_torus(const TorusShape& s, std::size_t n_theta, std::size_t n_phi) {
  s.validate();
  detail::require(n_theta >= 32 && n_phi >= 32, "mesh_torus: n_theta and n_phi must be >= 32");
  SurfaceMesh m;
  m.a = s.a;
  m.b = s.b;
  m.n_theta = n_theta;
  m.n_phi = n_phi;
  m.vertices.reserve(n_theta * n_phi);
  m.normals.reserve(n_theta * n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double th = m.theta(i);
    const double sheet = s.b + s.a * std::cos(th) >= 0.0 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double ph = m.phi(j);
      m.vertices.push_back(surface_point(s.a, s.b, th, ph));
      m.normals.push_back(sheet * tube_normal(th, ph));
    }
  }
  const double floor = detail::kDegenerateArea * s.a * s.a;
  for (std::size_t i = 0; i < n_theta; ++i) {
    for (std::size_t j = 0; j < n_phi; ++j) {
      const std::array<std::size_t, 4> q{m.vertex(i, j), m.vertex(i, j + 1), m.vertex(i + 1, j + 1), m.vertex(i + 1, j)};
      double area = 0.0;
      for (const auto& tri : detail::split_quad(q)) {
        const double ta = detail::triangle_area(m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]);
        if (ta < floor) {
          ++m.dropped_triangles;
        } else {
          area += ta;
        }
      }
      m.quads.push_back(q);
      m.face_area.push_back(area);
    }
  }
  return m;
}

/// unsigned_area sums the face areas. signed_volume is the divergence-theorem
/// volume over every face with its lattice orientation, so regions covered by
/// sheets of opposite orientation cancel. enclosed_volume keeps only faces on
/// the outward sheet (b + a cos theta > 0 at the face centre): the volume the
/// surface bounds once, which at b = 0 is the ball.
struct MeshMeasures {
  double unsigned_area = 0.0;
  double enclosed_volume = 0.0;
  double signed_volume = 0.0;
  TorusRegime regime = TorusRegime::ring;
};

inline MeshMeasures mesh_measures(const SurfaceMesh& m) {
  detail::require(m.quads.size() == m.n_theta * m.n_phi && m.face_area.size() == m.quads.size(),
                  "mesh_measures: inconsistent mesh");
  MeshMeasures out;
  out.regime = regime(m.a, m.b);
  for (std::size_t f = 0; f < m.quads.size(); ++f) {
    out.unsigned_area += m.face_area[f];
    double vol = 0.0;
    for (const auto& tri : detail::split_quad(m.quads[f])) {
      const Vec3& p0 = m.vertices[tri[0]];
      vol += dot(p0, cross(m.vertices[tri[1]], m.vertices[tri[2]])) / 6.0;
    }
    out.signed_volume += vol;
    const double theta_c = 2.0 * kPi * (static_cast<double>(f / m.n_phi) + 0.5) / static_cast<double>(m.n_theta);
    if (m.b + m.a * std::cos(theta_c) > 0.0) out.enclosed_volume += vol;
  }
  return out;
}

/// Normal flips between neighbouring vertices. Along phi lines the sheet
/// never changes, so only theta edges can flip; each flip is located by
/// bisecting b + a cos theta on its edge and reported by its height z.
/// Flips whose |z| agree within `cluster_tol * a` form one locus.
struct ReversalReport {
  std::size_t flipped_edges = 0;
  std::vector<double> locus_abs_z;  // one entry per distinct locus
  double max_turn = 0.0;            // largest angle between unflipped neighbours
};

inline ReversalReport normal_reversals(const SurfaceMesh& m, double cluster_tol = 0.05) {
  ReversalReport r;
  auto turn = [&](std::size_t u, std::size_t v) {
    const double c = std::clamp(dot(m.normals[u], m.normals[v]), -1.0, 1.0);
    return std::acos(c);
  };
  for (std::size_t i = 0; i < m.n_theta; ++i) {
    for (std::size_t j = 0; j < m.n_phi; ++j) {
      const std::size_t u = m.vertex(i, j);
      r.max_turn = std::max(r.max_turn, turn(u, m.vertex(i, j + 1)));
      const std::size_t v = m.vertex(i + 1, j);
      if (dot(m.normals[u], m.normals[v]) >= 0.0) {
        r.max_turn = std::max(r.max_turn, turn(u, v));
        continue;
      }
      ++r.flipped_edges;
      const double t0 = m.theta(i);
      const double t1 = t0 + 2.0 * kPi / static_cast<double>(m.n_theta);
      auto sheet = [&](double th) { return m.b + m.a * std::cos(th); };
      double lo = t0, hi = t1;
      const bool lo_positive = sheet(lo) >= 0.0;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        ((sheet(mid) >= 0.0) == lo_positive ? lo : hi) = mid;
      }
      const double th = 0.5 * (lo + hi);
      const double z = std::abs(m.a * std::sin(th));
      const bool known = std::any_of(r.locus_abs_z.begin(), r.locus_abs_z.end(),
                                     [&](double zl) { return std::abs(zl - z) <= cluster_tol * m.a; });
      if (!known) r.locus_abs_z.push_back(z);
    }
  }
  return r;
}

}  // namespace qhydro
