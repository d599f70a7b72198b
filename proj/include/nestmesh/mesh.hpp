#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "nestmesh/vec3.hpp"

namespace nestmesh {

using Tet = std::array<std::uint32_t, 4>;

struct UnknownLabel : std::runtime_error {
  explicit UnknownLabel(int label)
      : std::runtime_error("no tetrahedron carries label " + std::to_string(label)) {}
};

/// Labeled tetrahedral mesh. Node positions in millimeters, tetrahedra stored
/// as node-index quadruples normalized to positive signed volume at
/// construction time. Label 0 is reserved for the removable bounding-box
/// compartment.
struct TetrahedralMesh {
  std::vector<Vec3> nodes;
  std::vector<Tet> tetrahedra;
  std::vector<int> labels;  // one per tetrahedron

  std::size_t node_count() const { return nodes.size(); }
  std::size_t tet_count() const { return tetrahedra.size(); }

  double signed_volume(std::size_t t) const {
    const Tet& e = tetrahedra[t];
    return tet_signed_volume(nodes[e[0]], nodes[e[1]], nodes[e[2]], nodes[e[3]]);
  }

  /// Swaps two indices of any negatively oriented tetrahedron.
  void normalize_orientation() {
    for (std::size_t t = 0; t < tetrahedra.size(); ++t) {
      if (signed_volume(t) < 0.0) std::swap(tetrahedra[t][2], tetrahedra[t][3]);
    }
  }

  double total_volume() const {
    double v = 0.0;
    for (std::size_t t = 0; t < tetrahedra.size(); ++t) v += signed_volume(t);
    return v;
  }

  /// Outward face opposite to local vertex i of a positively oriented tet.
  static std::array<std::uint32_t, 3> outward_face(const Tet& t, int i) {
    switch (i) {
      case 0: return {t[1], t[2], t[3]};
      case 1: return {t[0], t[3], t[2]};
      case 2: return {t[0], t[1], t[3]};
      default: return {t[0], t[2], t[1]};
    }
  }
};

/// Map from sorted face triple to the 1 or 2 incident tetrahedra.
struct FaceAdjacency {
  std::unordered_map<TriKey, std::array<std::int32_t, 2>, TriKeyHash> faces;

  static FaceAdjacency build(const TetrahedralMesh& mesh) {
    FaceAdjacency adj;
    adj.faces.reserve(mesh.tet_count() * 2);
    for (std::size_t t = 0; t < mesh.tet_count(); ++t) {
      const Tet& e = mesh.tetrahedra[t];
      for (int i = 0; i < 4; ++i) {
        auto f = TetrahedralMesh::outward_face(e, i);
        TriKey key(f[0], f[1], f[2]);
        auto [it, inserted] = adj.faces.try_emplace(key, std::array<std::int32_t, 2>{-1, -1});
        auto& slot = it->second;
        if (slot[0] < 0) slot[0] = static_cast<std::int32_t>(t);
        else if (slot[1] < 0) slot[1] = static_cast<std::int32_t>(t);
        else throw std::runtime_error("face shared by more than two tetrahedra");
      }
    }
    return adj;
  }
};

/// Boundary of a set of tetrahedra: outward-oriented triangles plus the nodes
/// they reference.
struct CompartmentBoundary {
  int label = -1;
  std::vector<std::array<std::uint32_t, 3>> triangles;  // outward orientation
  std::vector<std::uint32_t> nodes;                     // sorted, unique
};

namespace detail {

inline CompartmentBoundary extract_boundary_of(const TetrahedralMesh& mesh,
                                               const std::vector<char>& in_region, int tag) {
  // A face is on the region boundary when exactly one of its incident tets is
  // in the region; orientation is outward from that tet.
  std::unordered_map<TriKey, std::array<std::uint32_t, 3>, TriKeyHash> open;
  open.reserve(1024);
  for (std::size_t t = 0; t < mesh.tet_count(); ++t) {
    if (!in_region[t]) continue;
    for (int i = 0; i < 4; ++i) {
      auto f = TetrahedralMesh::outward_face(mesh.tetrahedra[t], i);
      TriKey key(f[0], f[1], f[2]);
      auto it = open.find(key);
      if (it == open.end()) open.emplace(key, f);
      else open.erase(it);  // interior to the region
    }
  }
  CompartmentBoundary b;
  b.label = tag;
  b.triangles.reserve(open.size());
  for (auto& [key, f] : open) b.triangles.push_back(f);
  std::sort(b.triangles.begin(), b.triangles.end());
  std::vector<std::uint32_t> ns;
  ns.reserve(open.size() * 3);
  for (auto& f : b.triangles) ns.insert(ns.end(), f.begin(), f.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  b.nodes = std::move(ns);
  return b;
}

}  // namespace detail

/// Boundary of the single-label compartment: faces owned by exactly one tet of
/// that label (interfaces to other labels and the mesh exterior).
inline CompartmentBoundary extract_compartment_boundary(const TetrahedralMesh& mesh, int label) {
  std::vector<char> in(mesh.tet_count(), 0);
  bool found = false;
  for (std::size_t t = 0; t < mesh.tet_count(); ++t) {
    if (mesh.labels[t] == label) { in[t] = 1; found = true; }
  }
  if (!found) throw UnknownLabel(label);
  return detail::extract_boundary_of(mesh, in, label);
}

/// Boundary of the union of several labels (used for nested-compartment
/// fitting, where surface k bounds the union of compartments 1..k).
inline CompartmentBoundary extract_region_boundary(const TetrahedralMesh& mesh,
                                                   const std::vector<int>& label_set) {
  std::vector<char> in(mesh.tet_count(), 0);
  for (std::size_t t = 0; t < mesh.tet_count(); ++t) {
    for (int l : label_set) {
      if (mesh.labels[t] == l) { in[t] = 1; break; }
    }
  }
  return detail::extract_boundary_of(mesh, in, label_set.empty() ? -1 : label_set.back());
}

struct ValidationReport {
  std::vector<std::size_t> inverted_elements;       // signed volume <= 0
  std::vector<TriKey> conformity_violations;        // face incident to 3+ tets
  std::vector<std::uint32_t> orphan_nodes;          // referenced by no tet
  std::vector<std::size_t> index_errors;            // tets with out-of-range nodes
  bool labels_length_ok = true;
  std::vector<std::size_t> label_range_errors;      // negative labels

  bool ok() const {
    return inverted_elements.empty() && conformity_violations.empty() && orphan_nodes.empty() &&
           index_errors.empty() && labels_length_ok && label_range_errors.empty();
  }
  std::string summary() const {
    std::ostringstream os;
    os << "inverted=" << inverted_elements.size()
       << " nonconforming=" << conformity_violations.size()
       << " orphans=" << orphan_nodes.size() << " index_errors=" << index_errors.size()
       << " labels_length_ok=" << (labels_length_ok ? 1 : 0)
       << " label_range_errors=" << label_range_errors.size();
    return os.str();
  }
};

namespace detail {

/// Parity of the permutation taking the sorted triple to (a,b,c); two tets
/// sharing a face must see it with opposite parities.
inline int face_parity(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  int inv = 0;
  if (a > b) ++inv;
  if (a > c) ++inv;
  if (b > c) ++inv;
  return inv & 1;
}

}  // namespace detail

inline ValidationReport validate_mesh(const TetrahedralMesh& mesh) {
  ValidationReport r;
  r.labels_length_ok = mesh.labels.size() == mesh.tetrahedra.size();
  std::vector<char> used(mesh.node_count(), 0);
  struct FaceInfo { int count = 0; int parity_sum = 0; };
  std::unordered_map<TriKey, FaceInfo, TriKeyHash> face_count;
  face_count.reserve(mesh.tet_count() * 2);
  for (std::size_t t = 0; t < mesh.tet_count(); ++t) {
    const Tet& e = mesh.tetrahedra[t];
    bool in_range = true;
    for (auto n : e) {
      if (n >= mesh.node_count()) in_range = false;
    }
    if (!in_range) {
      r.index_errors.push_back(t);
      continue;
    }
    for (auto n : e) used[n] = 1;
    if (mesh.signed_volume(t) <= 0.0) r.inverted_elements.push_back(t);
    for (int i = 0; i < 4; ++i) {
      auto f = TetrahedralMesh::outward_face(e, i);
      auto& info = face_count[TriKey(f[0], f[1], f[2])];
      ++info.count;
      info.parity_sum += detail::face_parity(f[0], f[1], f[2]);
    }
  }
  for (auto& [key, info] : face_count) {
    // Shared faces must be seen once from each side (opposite parity).
    if (info.count > 2 || (info.count == 2 && info.parity_sum != 1))
      r.conformity_violations.push_back(key);
  }
  std::sort(r.conformity_violations.begin(), r.conformity_violations.end());
  for (std::uint32_t n = 0; n < mesh.node_count(); ++n) {
    if (!used[n]) r.orphan_nodes.push_back(n);
  }
  if (r.labels_length_ok) {
    for (std::size_t t = 0; t < mesh.labels.size(); ++t) {
      if (mesh.labels[t] < 0) r.label_range_errors.push_back(t);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// tetmesh v1 ASCII format
//
//   tetmesh v1
//   <node count>
//   <tet count>
//   x y z                 (one node per line)
//   i0 i1 i2 i3 label     (one tet per line, zero-based indices)
// ---------------------------------------------------------------------------

inline void write_tetmesh(std::ostream& os, const TetrahedralMesh& mesh) {
  os << "tetmesh v1\n" << mesh.node_count() << "\n" << mesh.tet_count() << "\n";
  char buf[96];
  for (const Vec3& p : mesh.nodes) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p.x, p.y, p.z);
    os << buf;
  }
  for (std::size_t t = 0; t < mesh.tet_count(); ++t) {
    const Tet& e = mesh.tetrahedra[t];
    os << e[0] << ' ' << e[1] << ' ' << e[2] << ' ' << e[3] << ' ' << mesh.labels[t] << "\n";
  }
}

inline void save_tetmesh(const std::string& path, const TetrahedralMesh& mesh) {
  std::ofstream os(path, std::ios::binary);  // binary: byte-stable newlines
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_tetmesh(os, mesh);
}

inline TetrahedralMesh read_tetmesh(std::istream& is) {
  std::string magic, version;
  is >> magic >> version;
  if (magic != "tetmesh" || version != "v1") throw std::runtime_error("not a tetmesh v1 stream");
  std::size_t nn = 0, nt = 0;
  is >> nn >> nt;
  TetrahedralMesh mesh;
  mesh.nodes.resize(nn);
  for (auto& p : mesh.nodes) is >> p.x >> p.y >> p.z;
  mesh.tetrahedra.resize(nt);
  mesh.labels.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    auto& e = mesh.tetrahedra[t];
    is >> e[0] >> e[1] >> e[2] >> e[3] >> mesh.labels[t];
  }
  if (!is) throw std::runtime_error("truncated tetmesh stream");
  return mesh;
}

inline TetrahedralMesh load_tetmesh(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_tetmesh(is);
}

/// Node -> incident tets, CSR layout.
struct NodeTetAdjacency {
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> tets;

  static NodeTetAdjacency build(const TetrahedralMesh& mesh) {
    NodeTetAdjacency a;
    a.offsets.assign(mesh.node_count() + 1, 0);
    for (const Tet& e : mesh.tetrahedra)
      for (auto n : e) ++a.offsets[n + 1];
    for (std::size_t i = 1; i < a.offsets.size(); ++i) a.offsets[i] += a.offsets[i - 1];
    a.tets.resize(a.offsets.back());
    std::vector<std::uint32_t> cur(a.offsets.begin(), a.offsets.end() - 1);
    for (std::uint32_t t = 0; t < mesh.tet_count(); ++t)
      for (auto n : mesh.tetrahedra[t]) a.tets[cur[n]++] = t;
    return a;
  }
};

/// Node -> edge-connected neighbor nodes, CSR layout, neighbors sorted.
struct NodeNodeAdjacency {
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> neighbors;

  static NodeNodeAdjacency build(const TetrahedralMesh& mesh) {
    std::vector<std::vector<std::uint32_t>> nbr(mesh.node_count());
    auto link = [&](std::uint32_t a, std::uint32_t b) {
      nbr[a].push_back(b);
      nbr[b].push_back(a);
    };
    for (const Tet& e : mesh.tetrahedra) {
      link(e[0], e[1]); link(e[0], e[2]); link(e[0], e[3]);
      link(e[1], e[2]); link(e[1], e[3]); link(e[2], e[3]);
    }
    NodeNodeAdjacency a;
    a.offsets.assign(mesh.node_count() + 1, 0);
    for (std::size_t n = 0; n < nbr.size(); ++n) {
      auto& v = nbr[n];
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      a.offsets[n + 1] = a.offsets[n] + static_cast<std::uint32_t>(v.size());
    }
    a.neighbors.resize(a.offsets.back());
    for (std::size_t n = 0; n < nbr.size(); ++n)
      std::copy(nbr[n].begin(), nbr[n].end(), a.neighbors.begin() + a.offsets[n]);
    return a;
  }
};

}  // namespace nestmesh
