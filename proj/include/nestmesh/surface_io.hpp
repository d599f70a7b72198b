#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nestmesh/surface.hpp"

namespace nestmesh {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyMesh : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SurfaceFormat { OffAscii, StlAscii, PlyAscii };

inline SurfaceFormat surface_format_from_path(const std::string& path) {
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == "off") return SurfaceFormat::OffAscii;
  if (ext == "stl") return SurfaceFormat::StlAscii;
  if (ext == "ply") return SurfaceFormat::PlyAscii;
  throw ParseError("unrecognized surface extension: " + path);
}

namespace detail {

inline std::string next_token(std::istream& is) {
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') {  // comment to end of line
      std::string rest;
      std::getline(is, rest);
      continue;
    }
    return tok;
  }
  return {};
}

inline double parse_double(std::istream& is, const char* what) {
  std::string tok = next_token(is);
  if (tok.empty()) throw ParseError(std::string("unexpected end of file reading ") + what);
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad number '") + tok + "' reading " + what);
  }
}

inline long parse_long(std::istream& is, const char* what) {
  std::string tok = next_token(is);
  if (tok.empty()) throw ParseError(std::string("unexpected end of file reading ") + what);
  try {
    std::size_t used = 0;
    long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad integer '") + tok + "' reading " + what);
  }
}

}  // namespace detail

inline TriangleSurface read_off(std::istream& is) {
  std::string magic = detail::next_token(is);
  if (magic != "OFF") throw ParseError("missing OFF header");
  const long nv = detail::parse_long(is, "vertex count");
  const long nf = detail::parse_long(is, "face count");
  detail::parse_long(is, "edge count");
  if (nv < 0 || nf < 0) throw ParseError("negative counts in OFF header");
  TriangleSurface m;
  m.positions.resize(nv);
  for (auto& p : m.positions) {
    p.x = detail::parse_double(is, "vertex");
    p.y = detail::parse_double(is, "vertex");
    p.z = detail::parse_double(is, "vertex");
  }
  m.triangles.reserve(nf);
  for (long f = 0; f < nf; ++f) {
    const long k = detail::parse_long(is, "face size");
    if (k < 3) throw ParseError("OFF face with fewer than 3 vertices");
    std::vector<long> idx(k);
    for (long& i : idx) {
      i = detail::parse_long(is, "face index");
      if (i < 0 || i >= nv) throw ParseError("OFF face index out of range");
    }
    // fan-triangulate polygons
    for (long i = 1; i + 1 < k; ++i)
      m.triangles.push_back({static_cast<std::uint32_t>(idx[0]),
                             static_cast<std::uint32_t>(idx[i]),
                             static_cast<std::uint32_t>(idx[i + 1])});
  }
  return m;
}

inline TriangleSurface read_stl_ascii(std::istream& is) {
  std::string tok;
  if (!(is >> tok) || tok != "solid") throw ParseError("missing 'solid' header (binary STL unsupported)");
  std::getline(is, tok);  // solid name
  TriangleSurface m;
  while (is >> tok) {
    if (tok == "endsolid") break;
    if (tok != "facet") throw ParseError("expected 'facet', got '" + tok + "'");
    is >> tok;  // normal
    if (tok != "normal") throw ParseError("expected 'normal'");
    for (int i = 0; i < 3; ++i) detail::parse_double(is, "facet normal");
    is >> tok;
    if (tok != "outer") throw ParseError("expected 'outer'");
    is >> tok;  // loop
    for (int i = 0; i < 3; ++i) {
      is >> tok;
      if (tok != "vertex") throw ParseError("expected 'vertex'");
      Vec3 p;
      p.x = detail::parse_double(is, "vertex");
      p.y = detail::parse_double(is, "vertex");
      p.z = detail::parse_double(is, "vertex");
      m.positions.push_back(p);
    }
    is >> tok;
    if (tok != "endloop") throw ParseError("expected 'endloop'");
    is >> tok;
    if (tok != "endfacet") throw ParseError("expected 'endfacet'");
    const auto n = static_cast<std::uint32_t>(m.positions.size());
    m.triangles.push_back({n - 3, n - 2, n - 1});
  }
  if (tok != "endsolid") throw ParseError("truncated STL (missing 'endsolid')");
  return m;
}

inline TriangleSurface read_ply_ascii(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.substr(0, 3) != "ply") throw ParseError("missing ply header");
  long nv = -1, nf = -1;
  int vertex_props = 0;
  bool in_vertex_element = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "format") {
      ls >> word;
      if (word != "ascii") throw ParseError("only ascii PLY supported");
    } else if (word == "element") {
      std::string kind;
      long count = 0;
      ls >> kind >> count;
      if (kind == "vertex") { nv = count; in_vertex_element = true; }
      else { if (kind == "face") nf = count; in_vertex_element = false; }
    } else if (word == "property") {
      if (in_vertex_element) ++vertex_props;
    } else if (word == "end_header") {
      break;
    }
  }
  if (nv < 0 || nf < 0) throw ParseError("PLY header missing vertex or face element");
  if (vertex_props < 3) throw ParseError("PLY vertex element needs x y z properties");
  TriangleSurface m;
  m.positions.resize(nv);
  for (auto& p : m.positions) {
    p.x = detail::parse_double(is, "vertex");
    p.y = detail::parse_double(is, "vertex");
    p.z = detail::parse_double(is, "vertex");
    for (int extra = 3; extra < vertex_props; ++extra) detail::parse_double(is, "vertex property");
  }
  for (long f = 0; f < nf; ++f) {
    const long k = detail::parse_long(is, "face size");
    if (k < 3) throw ParseError("PLY face with fewer than 3 vertices");
    std::vector<long> idx(k);
    for (long& i : idx) {
      i = detail::parse_long(is, "face index");
      if (i < 0 || i >= nv) throw ParseError("PLY face index out of range");
    }
    for (long i = 1; i + 1 < k; ++i)
      m.triangles.push_back({static_cast<std::uint32_t>(idx[0]),
                             static_cast<std::uint32_t>(idx[i]),
                             static_cast<std::uint32_t>(idx[i + 1])});
  }
  return m;
}

/// Loads a surface, merging duplicate vertices within `merge_tol` mm.
inline TriangleSurface load_surface(const std::string& path, SurfaceFormat format,
                                    double merge_tol = 1e-6) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open " + path);
  TriangleSurface m;
  switch (format) {
    case SurfaceFormat::OffAscii: m = read_off(is); break;
    case SurfaceFormat::StlAscii: m = read_stl_ascii(is); break;
    case SurfaceFormat::PlyAscii: m = read_ply_ascii(is); break;
  }
  m = merge_duplicate_vertices(m, merge_tol);
  if (m.triangles.empty()) throw EmptyMesh("no triangles in " + path);
  return m;
}

inline TriangleSurface load_surface(const std::string& path, double merge_tol = 1e-6) {
  return load_surface(path, surface_format_from_path(path), merge_tol);
}

inline void write_off(std::ostream& os, const TriangleSurface& m) {
  os << "OFF\n" << m.vertex_count() << ' ' << m.triangle_count() << " 0\n";
  char buf[96];
  for (const Vec3& p : m.positions) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p.x, p.y, p.z);
    os << buf;
  }
  for (const Triangle& t : m.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
}

inline void write_ply_ascii(std::ostream& os, const TriangleSurface& m) {
  os << "ply\nformat ascii 1.0\nelement vertex " << m.vertex_count()
     << "\nproperty double x\nproperty double y\nproperty double z\nelement face "
     << m.triangle_count() << "\nproperty list uchar int vertex_indices\nend_header\n";
  char buf[96];
  for (const Vec3& p : m.positions) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p.x, p.y, p.z);
    os << buf;
  }
  for (const Triangle& t : m.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
}

inline void save_surface(const std::string& path, const TriangleSurface& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  switch (surface_format_from_path(path)) {
    case SurfaceFormat::OffAscii: write_off(os, m); break;
    case SurfaceFormat::PlyAscii: write_ply_ascii(os, m); break;
    case SurfaceFormat::StlAscii: {
      os << "solid nestmesh\n";
      char buf[160];
      for (const Triangle& t : m.triangles) {
        const Vec3 n = normalized(cross(m.positions[t[1]] - m.positions[t[0]],
                                        m.positions[t[2]] - m.positions[t[0]]));
        std::snprintf(buf, sizeof(buf), "facet normal %.9g %.9g %.9g\n", n.x, n.y, n.z);
        os << buf << "  outer loop\n";
        for (int i = 0; i < 3; ++i) {
          const Vec3& p = m.positions[t[i]];
          std::snprintf(buf, sizeof(buf), "    vertex %.17g %.17g %.17g\n", p.x, p.y, p.z);
          os << buf;
        }
        os << "  endloop\nendfacet\n";
      }
      os << "endsolid nestmesh\n";
      break;
    }
  }
}

}  // namespace nestmesh
