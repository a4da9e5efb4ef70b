#pragma once

#include <filesystem>
#include <fstream>

#include "qhydro/io/csv.hpp"
#include "qhydro/torus/mesh.hpp"

namespace qhydro::io {

/// Wavefront OBJ with one normal per vertex. Faces with zero area are
/// left out. Returns the number of faces written.
inline std::size_t write_obj(const std::filesystem::path& path, const SurfaceMesh& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << "# torus a=" << format_double(m.a) << " b=" << format_double(m.b) << " lattice " << m.n_theta << "x"
     << m.n_phi << '\n';
  for (const auto& v : m.vertices)
    os << "v " << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2]) << '\n';
  for (const auto& n : m.normals)
    os << "vn " << format_double(n[0]) << ' ' << format_double(n[1]) << ' ' << format_double(n[2]) << '\n';
  std::size_t faces = 0;
  for (std::size_t f = 0; f < m.quads.size(); ++f) {
    if (m.face_area[f] == 0.0) continue;
    os << 'f';
    for (std::size_t v : m.quads[f]) os << ' ' << v + 1 << "//" << v + 1;
    os << '\n';
    ++faces;
  }
  if (!os) throw IoError("write failed: " + path.string());
  return faces;
}

/// Lattice vertices with angles and normals, one row per vertex.
inline CsvTable mesh_table(const SurfaceMesh& m) {
  CsvTable t({"i", "j", "theta", "phi", "x", "y", "z", "nx", "ny", "nz"});
  for (std::size_t i = 0; i < m.n_theta; ++i) {
    for (std::size_t j = 0; j < m.n_phi; ++j) {
      const auto& v = m.vertices[m.vertex(i, j)];
      const auto& n = m.normals[m.vertex(i, j)];
      t.add({static_cast<double>(i), static_cast<double>(j), m.theta(i), m.phi(j), v[0], v[1], v[2], n[0], n[1],
             n[2]});
    }
  }
  return t;
}

}  // namespace qhydro::io
