#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "nestmesh/mesh.hpp"
#include "nestmesh/vec3.hpp"

namespace nestmesh {

/// Regular hexahedral lattice: origin, cell size and per-axis cell counts.
struct LatticeSpec {
  Vec3 origin;
  double cell_size = 1.0;      // h, mm
  int nx = 1, ny = 1, nz = 1;  // cell counts

  void validate() const {
    if (!(cell_size > 0.0)) throw std::invalid_argument("lattice cell size must be > 0");
    if (nx < 1 || ny < 1 || nz < 1) throw std::invalid_argument("lattice cell counts must be >= 1");
  }
};

/// Smallest lattice covering `box` with cell size h (counts = ceil(extent/h)).
inline LatticeSpec lattice_covering(const Aabb& box, double h) {
  LatticeSpec s;
  s.origin = box.lo;
  s.cell_size = h;
  const Vec3 e = box.extent();
  s.nx = std::max(1, static_cast<int>(std::ceil(e.x / h - 1e-12)));
  s.ny = std::max(1, static_cast<int>(std::ceil(e.y / h - 1e-12)));
  s.nz = std::max(1, static_cast<int>(std::ceil(e.z / h - 1e-12)));
  return s;
}

/// Splits every lattice cell into five tetrahedra: one central tet spanning
/// alternate cube corners plus four corner tets. Cell parity (ix+iy+iz) mod 2
/// mirrors the subdivision so face diagonals match between adjacent cells and
/// the mesh is conforming. All labels start at 0 (bounding box).
inline TetrahedralMesh generate_lattice_mesh(const LatticeSpec& spec) {
  spec.validate();
  const int nx = spec.nx, ny = spec.ny, nz = spec.nz;
  const double h = spec.cell_size;

  TetrahedralMesh mesh;
  mesh.nodes.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1) * (nz + 1));
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i)
        mesh.nodes.push_back(spec.origin + Vec3(i * h, j * h, k * h));

  auto node_id = [&](int i, int j, int k) {
    return static_cast<std::uint32_t>((static_cast<std::size_t>(k) * (ny + 1) + j) * (nx + 1) + i);
  };

  mesh.tetrahedra.reserve(static_cast<std::size_t>(nx) * ny * nz * 5);
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        // Cube corners c[dz][dy][dx].
        std::uint32_t c[2][2][2];
        for (int dz = 0; dz < 2; ++dz)
          for (int dy = 0; dy < 2; ++dy)
            for (int dx = 0; dx < 2; ++dx) c[dz][dy][dx] = node_id(i + dx, j + dy, k + dz);

        const bool even = ((i + j + k) & 1) == 0;
        // Central tet corners; the remaining four corners each span a corner tet
        // with their three central-tet neighbors.
        //   even: {000,110,101,011}   odd: {100,010,001,111}
        std::uint32_t v000 = c[0][0][0], v100 = c[0][0][1], v010 = c[0][1][0], v110 = c[0][1][1];
        std::uint32_t v001 = c[1][0][0], v101 = c[1][0][1], v011 = c[1][1][0], v111 = c[1][1][1];
        if (even) {
          mesh.tetrahedra.push_back({v000, v110, v101, v011});  // central
          mesh.tetrahedra.push_back({v100, v000, v110, v101});
          mesh.tetrahedra.push_back({v010, v000, v110, v011});
          mesh.tetrahedra.push_back({v001, v000, v101, v011});
          mesh.tetrahedra.push_back({v111, v110, v101, v011});
        } else {
          mesh.tetrahedra.push_back({v100, v010, v001, v111});  // central
          mesh.tetrahedra.push_back({v000, v100, v010, v001});
          mesh.tetrahedra.push_back({v110, v100, v010, v111});
          mesh.tetrahedra.push_back({v101, v100, v001, v111});
          mesh.tetrahedra.push_back({v011, v010, v001, v111});
        }
      }
    }
  }
  mesh.labels.assign(mesh.tet_count(), 0);
  mesh.normalize_orientation();
  return mesh;
}

}  // namespace nestmesh
