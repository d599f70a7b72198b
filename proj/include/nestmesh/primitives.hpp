#pragma once

#include <cmath>
#include <map>
#include <numbers>

#include "nestmesh/surface.hpp"
#include "nestmesh/vec3.hpp"

namespace nestmesh {

/// Regular icosahedron inscribed in the sphere of the given radius.
inline TriangleSurface icosahedron(double radius = 1.0, const Vec3& center = {}) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double s = radius / std::sqrt(1.0 + phi * phi);
  const double a = s, b = s * phi;
  TriangleSurface m;
  m.positions = {{-a, b, 0}, {a, b, 0},  {-a, -b, 0}, {a, -b, 0}, {0, -a, b}, {0, a, b},
                 {0, -a, -b}, {0, a, -b}, {b, 0, -a},  {b, 0, a},  {-b, 0, -a}, {-b, 0, a}};
  for (Vec3& p : m.positions) p += center;
  m.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                 {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                 {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                 {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return m;
}

/// Icosahedron subdivided `level` times, vertices projected to the sphere.
inline TriangleSurface icosphere(double radius, int level, const Vec3& center = {}) {
  TriangleSurface m = icosahedron(1.0);
  for (int l = 0; l < level; ++l) {
    std::map<std::uint64_t, std::uint32_t> midpoint;
    auto mid = [&](std::uint32_t u, std::uint32_t v) {
      auto [it, inserted] = midpoint.try_emplace(edge_key(u, v), 0);
      if (inserted) {
        it->second = static_cast<std::uint32_t>(m.positions.size());
        m.positions.push_back(normalized((m.positions[u] + m.positions[v]) * 0.5));
      }
      return it->second;
    };
    std::vector<Triangle> next;
    next.reserve(m.triangles.size() * 4);
    for (const Triangle& t : m.triangles) {
      const std::uint32_t ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.triangles = std::move(next);
  }
  for (Vec3& p : m.positions) p = normalized(p) * radius + center;
  return m;
}

/// Subdivision level such that the icosphere edge length approximates
/// `target_edge` (base icosahedron edge is ~1.0515 radius).
inline int icosphere_level_for_edge(double radius, double target_edge, int max_level = 8) {
  const double base = 1.0514622242382672 * radius;
  int level = 0;
  double edge = base;
  while (edge > target_edge && level < max_level) {
    edge *= 0.5;
    ++level;
  }
  return level;
}

inline TriangleSurface icosphere_with_edge(double radius, double target_edge,
                                           const Vec3& center = {}) {
  return icosphere(radius, icosphere_level_for_edge(radius, target_edge), center);
}

/// Axis-aligned box surface as 12 outward-oriented triangles.
inline TriangleSurface box_surface(const Aabb& box) {
  TriangleSurface m;
  const Vec3 lo = box.lo, hi = box.hi;
  m.positions = {{lo.x, lo.y, lo.z}, {hi.x, lo.y, lo.z}, {lo.x, hi.y, lo.z}, {hi.x, hi.y, lo.z},
                 {lo.x, lo.y, hi.z}, {hi.x, lo.y, hi.z}, {lo.x, hi.y, hi.z}, {hi.x, hi.y, hi.z}};
  m.triangles = {{0, 2, 1}, {1, 2, 3},   // z = lo
                 {4, 5, 6}, {5, 7, 6},   // z = hi
                 {0, 1, 4}, {1, 5, 4},   // y = lo
                 {2, 6, 3}, {3, 6, 7},   // y = hi
                 {0, 4, 2}, {2, 4, 6},   // x = lo
                 {1, 3, 5}, {3, 7, 5}};  // x = hi
  return m;
}

/// Golden-angle spiral point layout on a sphere, near-uniform spacing.
inline std::vector<Vec3> fibonacci_sphere_points(int count, double radius,
                                                 const Vec3& center = {}) {
  std::vector<Vec3> pts;
  pts.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double th = golden * i;
    pts.push_back(center + Vec3{r * std::cos(th), r * std::sin(th), z} * radius);
  }
  return pts;
}

}  // namespace nestmesh
