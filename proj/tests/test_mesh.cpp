#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "ununfold/constructions.hpp"
#include "ununfold/errors.hpp"
#include "ununfold/mesh.hpp"

using namespace ununfold;

namespace {

ErrorKind build_error(std::vector<Vec3> pos, std::vector<std::vector<int>> faces) {
  try {
    PolyhedronMesh::build(std::move(pos), std::move(faces));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("mesh was accepted");
  return ErrorKind::InvalidInput;
}

std::vector<Vec3> cube_positions() {
  std::vector<Vec3> p;
  for (int i = 0; i < 8; ++i) p.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
  return p;
}

const std::vector<std::vector<int>> kCubeFaces{{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                                               {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};

// Sum of curvatures plus boundary turning, in degrees; 360 * chi by
// Gauss-Bonnet.
double gauss_bonnet_deg(const PolyhedronMesh& mesh) {
  double total = 0;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    double angles = 0;
    for (int f : mesh.vertex_faces(v)) angles += mesh.face_angle(f, v);
    total += (mesh.is_boundary_vertex(v) ? 180 : 360) - rad_to_deg(angles);
  }
  return total;
}

}  // namespace

TEST_CASE("cube built from raw faces") {
  const auto mesh = PolyhedronMesh::build(cube_positions(), kCubeFaces);
  CHECK(mesh.vertex_count() == 8);
  CHECK(mesh.edge_count() == 12);
  CHECK(mesh.face_count() == 6);
  CHECK(mesh.is_closed());
  CHECK(euler_characteristic(mesh) == 2);
  CHECK(genus(mesh) == 0);
  CHECK(is_topologically_convex(mesh).topologically_convex());
  CHECK(check_embedded(mesh).embedded());
  CHECK(mesh.surface_area() == doctest::Approx(6));
  for (int v = 0; v < 8; ++v) CHECK(rad_to_deg(curvature(mesh, v)) == doctest::Approx(90));
  for (const Edge& e : mesh.edges()) CHECK(e.face_count == 2);
}

TEST_CASE("a flipped face is re-oriented from the seed face") {
  auto faces = kCubeFaces;
  std::reverse(faces[2].begin(), faces[2].end());
  const auto mesh = PolyhedronMesh::build(cube_positions(), faces);
  CHECK(mesh.face(2).loop == std::vector<int>{0, 1, 5, 4});
  CHECK(mesh.face(2).normal.y == doctest::Approx(-1));
}

TEST_CASE("edge ids follow sorted endpoint pairs") {
  const auto mesh = PolyhedronMesh::build(cube_positions(), kCubeFaces);
  for (int e = 1; e < mesh.edge_count(); ++e) {
    const auto& a = mesh.edge(e - 1);
    const auto& b = mesh.edge(e);
    CHECK(std::pair(a.v0, a.v1) < std::pair(b.v0, b.v1));
  }
}

TEST_CASE("malformed meshes are rejected") {
  const auto cube = cube_positions();
  SUBCASE("face sharing three vertices with another quad") {
    auto faces = kCubeFaces;
    faces.push_back({0, 2, 3, 1});
    CHECK(build_error(cube, faces) == ErrorKind::NonManifoldEdge);
  }
  SUBCASE("non-planar quad") {
    auto pos = cube;
    pos[3].z = 0.2;
    CHECK(build_error(pos, kCubeFaces) == ErrorKind::NonPlanarFace);
  }
  SUBCASE("reflex quad") {
    std::vector<Vec3> pos{{0, 0, 0}, {2, 0, 0}, {0.5, 0.5, 0}, {0, 2, 0}};
    CHECK(build_error(pos, {{0, 1, 2, 3}}) == ErrorKind::NonConvexFace);
  }
  SUBCASE("two separate triangles") {
    std::vector<Vec3> pos{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 0, 0}, {6, 0, 0}, {5, 1, 0}};
    CHECK(build_error(pos, {{0, 1, 2}, {3, 4, 5}}) == ErrorKind::DisconnectedSurface);
  }
  SUBCASE("non-orientable strip") {
    // Moebius band: six segments, the cross direction turning half a turn
    std::vector<Vec3> pos;
    for (int i = 0; i < 6; ++i) {
      const double t = 2 * kPi * i / 6;
      const Vec3 c{3 * std::cos(t), 3 * std::sin(t), 0};
      const Vec3 d{std::cos(t / 2) * std::cos(t), std::cos(t / 2) * std::sin(t), std::sin(t / 2)};
      pos.push_back(c + d);
      pos.push_back(c - d);
    }
    std::vector<std::vector<int>> faces;
    for (int i = 0; i < 6; ++i) {
      const int a = 2 * i, b = 2 * i + 1;
      const int a1 = i < 5 ? 2 * i + 2 : 1, b1 = i < 5 ? 2 * i + 3 : 0;
      faces.push_back({a, b, b1});
      faces.push_back({a, b1, a1});
    }
    CHECK(build_error(pos, faces) == ErrorKind::InconsistentOrientation);
  }
  SUBCASE("two triangles touching at a vertex only") {
    std::vector<Vec3> pos{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
    CHECK(build_error(pos, {{0, 1, 2}, {0, 3, 4}}) == ErrorKind::NonManifoldVertex);
  }
  SUBCASE("repeated vertex in a loop") {
    CHECK(build_error(cube, {{0, 1, 1}}) == ErrorKind::InvalidInput);
  }
  SUBCASE("index out of range") {
    CHECK(build_error(cube, {{0, 1, 9}}) == ErrorKind::InvalidInput);
  }
}

TEST_CASE("Gauss-Bonnet holds on every construction") {
  const std::vector<PolyhedronMesh> closed{
      build_reference(ReferenceSolid::Tetrahedron),
      build_reference(ReferenceSolid::Cube),
      build_spiked_tetrahedron(BasicHatParams{}),
      build_spiked_tetrahedron(TriHatParams{}),
      build_spiked_octahedron(BasicHatParams{}),
      build_spiked_octahedron(TriHatParams{}),
      build_spiked_tetrahedron(BasicHatParams{81, 30, 2}, {.allow_flat_brim = true}),
  };
  for (const auto& mesh : closed) {
    CHECK(rad_to_deg(total_curvature(mesh)) == doctest::Approx(720).epsilon(1e-12));
    CHECK(gauss_bonnet_deg(mesh) == doctest::Approx(720).epsilon(1e-12));
    CHECK(euler_characteristic(mesh) == 2);
  }
  const std::vector<PolyhedronMesh> open{build_basic_hat({}), build_triangulated_hat({}), build_open_fan({})};
  for (const auto& mesh : open) {
    CHECK(euler_characteristic(mesh) == 1);
    CHECK(gauss_bonnet_deg(mesh) == doctest::Approx(360).epsilon(1e-12));
    CHECK_THROWS_AS(total_curvature(mesh), Error);
  }
}

TEST_CASE("symmetry groups agree with brute-force isometries") {
  // The library works from edge lengths and face angles; on these convex
  // or mirror-symmetric small meshes that equals the group of distance
  // preserving vertex permutations.
  const std::vector<PolyhedronMesh> meshes{build_reference(ReferenceSolid::Tetrahedron), build_basic_hat({}),
                                           build_triangulated_hat({})};
  const std::vector<std::size_t> orders{24, 6, 6};
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    const auto group = symmetry_group(meshes[i]);
    const auto brute = oracle::isometric_permutations(meshes[i]);
    CHECK(group.size() == orders[i]);
    CHECK(std::set(group.begin(), group.end()) == std::set(brute.begin(), brute.end()));
    CHECK(group.front() == brute.front());  // identity first
  }
  CHECK(symmetry_group(build_reference(ReferenceSolid::Cube)).size() == 48);
  CHECK(symmetry_group(build_spiked_tetrahedron(BasicHatParams{})).size() == 24);
}

TEST_CASE("edge permutations are bijections") {
  const auto mesh = build_reference(ReferenceSolid::Cube);
  for (const auto& perm : symmetry_group(mesh)) {
    auto image = edge_permutation(mesh, perm);
    std::sort(image.begin(), image.end());
    for (int e = 0; e < mesh.edge_count(); ++e) CHECK(image[e] == e);
  }
}

TEST_CASE("graphs") {
  const auto cube = build_reference(ReferenceSolid::Cube);
  const Graph g = skeleton_graph(cube);
  CHECK(g.vertex_count == 8);
  CHECK(g.edges.size() == 12);
  CHECK(is_connected(g));
  CHECK(is_three_connected(g));
  const DualGraph d = dual_graph(cube);
  CHECK(d.node_count == 6);
  CHECK(d.edges.size() == 12);
  Graph path{3, {{0, 1}, {1, 2}}};
  CHECK(is_connected(path));
  CHECK_FALSE(is_three_connected(path));
  CHECK_FALSE(is_connected(Graph{3, {{0, 1}}}));
}

TEST_CASE("constructions are embedded") {
  CHECK(check_embedded(build_spiked_tetrahedron(BasicHatParams{})).embedded());
  CHECK(check_embedded(build_spiked_tetrahedron(TriHatParams{})).embedded());
  CHECK(check_embedded(build_spiked_octahedron(BasicHatParams{})).embedded());
  CHECK(check_embedded(build_open_fan({})).embedded());
}
