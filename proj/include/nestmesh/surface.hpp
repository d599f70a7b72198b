#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "nestmesh/vec3.hpp"

namespace nestmesh {

using Triangle = std::array<std::uint32_t, 3>;

/// Closed, outward-oriented triangle mesh (positions in mm).
struct TriangleSurface {
  std::vector<Vec3> positions;
  std::vector<Triangle> triangles;

  std::size_t vertex_count() const { return positions.size(); }
  std::size_t triangle_count() const { return triangles.size(); }

  Aabb bounds() const {
    Aabb b;
    for (const Vec3& p : positions) b.expand(p);
    return b;
  }

  double area() const {
    double a = 0.0;
    for (const Triangle& t : triangles)
      a += 0.5 * norm(cross(positions[t[1]] - positions[t[0]], positions[t[2]] - positions[t[0]]));
    return a;
  }

  /// Signed volume via the divergence theorem; positive for outward orientation.
  double signed_volume() const {
    double v = 0.0;
    for (const Triangle& t : triangles)
      v += dot(positions[t[0]], cross(positions[t[1]], positions[t[2]])) / 6.0;
    return v;
  }

  double mean_edge_length() const {
    if (triangles.empty()) return 0.0;
    double sum = 0.0;
    std::size_t count = 0;
    std::unordered_map<std::uint64_t, char> seen;
    seen.reserve(triangles.size() * 2);
    for (const Triangle& t : triangles) {
      for (int i = 0; i < 3; ++i) {
        const std::uint32_t a = t[i], b = t[(i + 1) % 3];
        if (seen.emplace(edge_key(a, b), 1).second) {
          sum += distance(positions[a], positions[b]);
          ++count;
        }
      }
    }
    return count ? sum / static_cast<double>(count) : 0.0;
  }
};

struct OpenEdge {
  std::uint32_t a = 0, b = 0;
  int incidence = 0;  // number of incident triangles (!= 2)
};

struct ClosednessReport {
  std::vector<OpenEdge> open_edges;            // edges with incidence != 2
  std::vector<std::uint64_t> orientation_errors;  // edges traversed twice in the same direction

  bool ok() const { return open_edges.empty() && orientation_errors.empty(); }
};

/// A surface is closed when every undirected edge has exactly two incident
/// triangles traversing it in opposite directions.
inline ClosednessReport validate_closed(const TriangleSurface& s) {
  struct EdgeUse { int count = 0; int forward = 0; };
  std::unordered_map<std::uint64_t, EdgeUse> edges;
  edges.reserve(s.triangles.size() * 2);
  for (const Triangle& t : s.triangles) {
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t a = t[i], b = t[(i + 1) % 3];
      auto& u = edges[edge_key(a, b)];
      ++u.count;
      if (a < b) ++u.forward;
    }
  }
  ClosednessReport r;
  for (auto& [key, u] : edges) {
    auto [a, b] = edge_key_nodes(key);
    if (u.count != 2) r.open_edges.push_back({a, b, u.count});
    else if (u.forward != 1) r.orientation_errors.push_back(key);
  }
  std::sort(r.open_edges.begin(), r.open_edges.end(),
            [](const OpenEdge& x, const OpenEdge& y) {
              return std::pair(x.a, x.b) < std::pair(y.a, y.b);
            });
  std::sort(r.orientation_errors.begin(), r.orientation_errors.end());
  return r;
}

/// Merges vertices closer than `tol` (grid hash, 27-cell probe) and drops the
/// triangles this degenerates.
inline TriangleSurface merge_duplicate_vertices(const TriangleSurface& s, double tol = 1e-6) {
  struct CellHash {
    std::size_t operator()(const std::array<std::int64_t, 3>& c) const {
      std::uint64_t h = 1469598103934665603ull;
      for (std::int64_t v : c) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_map<std::array<std::int64_t, 3>, std::vector<std::uint32_t>, CellHash> grid;
  std::vector<std::uint32_t> remap(s.positions.size());
  std::vector<Vec3> merged;
  merged.reserve(s.positions.size());
  const double inv = 1.0 / std::max(tol, 1e-300);
  for (std::size_t v = 0; v < s.positions.size(); ++v) {
    const Vec3& p = s.positions[v];
    const std::array<std::int64_t, 3> cell{static_cast<std::int64_t>(std::floor(p.x * inv)),
                                           static_cast<std::int64_t>(std::floor(p.y * inv)),
                                           static_cast<std::int64_t>(std::floor(p.z * inv))};
    std::int64_t found = -1;
    for (std::int64_t dz = -1; dz <= 1 && found < 0; ++dz)
      for (std::int64_t dy = -1; dy <= 1 && found < 0; ++dy)
        for (std::int64_t dx = -1; dx <= 1 && found < 0; ++dx) {
          auto it = grid.find({cell[0] + dx, cell[1] + dy, cell[2] + dz});
          if (it == grid.end()) continue;
          for (std::uint32_t m : it->second) {
            if (distance(merged[m], p) <= tol) { found = m; break; }
          }
        }
    if (found >= 0) {
      remap[v] = static_cast<std::uint32_t>(found);
    } else {
      remap[v] = static_cast<std::uint32_t>(merged.size());
      grid[cell].push_back(remap[v]);
      merged.push_back(p);
    }
  }
  TriangleSurface out;
  out.positions = std::move(merged);
  out.triangles.reserve(s.triangles.size());
  for (const Triangle& t : s.triangles) {
    Triangle m{remap[t[0]], remap[t[1]], remap[t[2]]};
    if (m[0] != m[1] && m[1] != m[2] && m[0] != m[2]) out.triangles.push_back(m);
  }
  return out;
}

/// Drops vertices not referenced by any triangle.
inline TriangleSurface compact_surface(const TriangleSurface& s) {
  std::vector<std::int64_t> remap(s.positions.size(), -1);
  TriangleSurface out;
  for (const Triangle& t : s.triangles) {
    Triangle m;
    for (int i = 0; i < 3; ++i) {
      if (remap[t[i]] < 0) {
        remap[t[i]] = static_cast<std::int64_t>(out.positions.size());
        out.positions.push_back(s.positions[t[i]]);
      }
      m[i] = static_cast<std::uint32_t>(remap[t[i]]);
    }
    out.triangles.push_back(m);
  }
  return out;
}

}  // namespace nestmesh
