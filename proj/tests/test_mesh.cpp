#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "nestmesh/lattice.hpp"
#include "nestmesh/mesh.hpp"

using namespace nestmesh;

namespace {

TetrahedralMesh single_tet(int label = 1) {
  TetrahedralMesh m;
  m.nodes = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  m.tetrahedra = {{0, 1, 2, 3}};
  m.labels = {label};
  return m;
}

// True when the two triangles are the same cycle traversed in opposite order.
bool opposite_orientation(std::array<std::uint32_t, 3> f, std::array<std::uint32_t, 3> g) {
  std::array<std::uint32_t, 3> rev{g[2], g[1], g[0]};
  for (int r = 0; r < 3; ++r) {
    if (f == rev) return true;
    std::rotate(rev.begin(), rev.begin() + 1, rev.end());
  }
  return false;
}

}  // namespace

TEST_CASE("signed volume of canonical tets") {
  const Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0}, d{0, 0, 1};
  CHECK(tet_signed_volume(a, b, c, d) == Catch::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(tet_signed_volume(a, b, b, d) == 0.0);                 // coincident vertices
  CHECK(tet_signed_volume(a, c, b, d) == Catch::Approx(-1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("orientation is normalized at construction") {
  TetrahedralMesh m;
  m.nodes = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  m.tetrahedra = {{0, 2, 1, 3}};  // negative as given
  m.labels = {1};
  m.normalize_orientation();
  CHECK(m.signed_volume(0) > 0.0);
}

TEST_CASE("boundary of an isolated labeled tet is its four faces") {
  auto m = single_tet(7);
  auto b = extract_compartment_boundary(m, 7);
  CHECK(b.triangles.size() == 4);
  CHECK(b.nodes.size() == 4);
  CHECK_THROWS_AS(extract_compartment_boundary(m, 3), UnknownLabel);
}

TEST_CASE("boundary of the five-tet cube is the twelve surface triangles") {
  LatticeSpec spec;
  spec.cell_size = 1.0;
  auto m = generate_lattice_mesh(spec);
  std::fill(m.labels.begin(), m.labels.end(), 1);
  auto b = extract_compartment_boundary(m, 1);
  CHECK(b.triangles.size() == 12);

  // Watertight: every boundary edge belongs to exactly two boundary triangles.
  std::unordered_map<std::uint64_t, int> edge_count;
  for (auto& f : b.triangles) {
    ++edge_count[edge_key(f[0], f[1])];
    ++edge_count[edge_key(f[1], f[2])];
    ++edge_count[edge_key(f[2], f[0])];
  }
  for (auto& [k, c] : edge_count) CHECK(c == 2);
}

TEST_CASE("shared interface appears in both boundaries with opposite orientation") {
  TetrahedralMesh m;
  m.nodes = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  m.tetrahedra = {{0, 1, 2, 3}, {1, 2, 3, 4}};
  m.labels = {1, 2};
  m.normalize_orientation();
  REQUIRE(validate_mesh(m).ok());

  auto b1 = extract_compartment_boundary(m, 1);
  auto b2 = extract_compartment_boundary(m, 2);
  const TriKey shared(1, 2, 3);
  std::array<std::uint32_t, 3> f1{}, f2{};
  for (auto& f : b1.triangles)
    if (TriKey(f[0], f[1], f[2]) == shared) f1 = f;
  for (auto& f : b2.triangles)
    if (TriKey(f[0], f[1], f[2]) == shared) f2 = f;
  REQUIRE(f1 != std::array<std::uint32_t, 3>{});
  REQUIRE(f2 != std::array<std::uint32_t, 3>{});
  CHECK(opposite_orientation(f1, f2));
}

TEST_CASE("validate_mesh findings") {
  LatticeSpec spec;
  spec.nx = spec.ny = spec.nz = 2;
  auto m = generate_lattice_mesh(spec);
  CHECK(validate_mesh(m).ok());

  SECTION("is idempotent and side-effect free") {
    auto before = m.tetrahedra;
    auto r1 = validate_mesh(m);
    auto r2 = validate_mesh(m);
    CHECK(r1.summary() == r2.summary());
    CHECK(m.tetrahedra == before);
  }
  SECTION("vertex swap reports one inverted element") {
    std::swap(m.tetrahedra[4][0], m.tetrahedra[4][1]);
    auto r = validate_mesh(m);
    CHECK(r.inverted_elements.size() == 1);
    CHECK(r.inverted_elements[0] == 4);
  }
  SECTION("duplicated tetrahedron breaks conformity") {
    m.tetrahedra.push_back(m.tetrahedra[0]);
    m.labels.push_back(m.labels[0]);
    auto r = validate_mesh(m);
    CHECK_FALSE(r.conformity_violations.empty());
  }
  SECTION("orphan node and label length are reported") {
    m.nodes.push_back({99, 99, 99});
    auto r = validate_mesh(m);
    CHECK(r.orphan_nodes.size() == 1);
    m.labels.pop_back();
    CHECK_FALSE(validate_mesh(m).labels_length_ok);
  }
}

TEST_CASE("tetmesh v1 round-trip") {
  LatticeSpec spec;
  spec.origin = {-1.5, 0.25, 3.0};
  spec.cell_size = 0.7;
  spec.nx = 2; spec.ny = 1; spec.nz = 3;
  auto m = generate_lattice_mesh(spec);
  for (std::size_t t = 0; t < m.tet_count(); ++t) m.labels[t] = static_cast<int>(t % 3);

  std::stringstream ss;
  write_tetmesh(ss, m);
  auto back = read_tetmesh(ss);
  REQUIRE(back.node_count() == m.node_count());
  REQUIRE(back.tet_count() == m.tet_count());
  CHECK(back.tetrahedra == m.tetrahedra);
  CHECK(back.labels == m.labels);
  for (std::size_t n = 0; n < m.node_count(); ++n) {
    CHECK(back.nodes[n].x == m.nodes[n].x);
    CHECK(back.nodes[n].y == m.nodes[n].y);
    CHECK(back.nodes[n].z == m.nodes[n].z);
  }
}

TEST_CASE("adjacency builders") {
  LatticeSpec spec;
  spec.nx = spec.ny = spec.nz = 2;
  auto m = generate_lattice_mesh(spec);

  auto fa = FaceAdjacency::build(m);
  for (auto& [key, tets] : fa.faces) {
    CHECK(tets[0] >= 0);  // never empty
  }
  auto nn = NodeNodeAdjacency::build(m);
  CHECK(nn.offsets.size() == m.node_count() + 1);
  auto nt = NodeTetAdjacency::build(m);
  CHECK(nt.tets.size() == m.tet_count() * 4);
}
