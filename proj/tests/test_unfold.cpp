#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ununfold/constructions.hpp"
#include "ununfold/cutting.hpp"
#include "ununfold/errors.hpp"
#include "ununfold/hats.hpp"
#include "ununfold/spanning_trees.hpp"
#include "ununfold/unfold.hpp"

using namespace ununfold;

namespace {

ErrorKind layout_error(const PolyhedronMesh& mesh, const Cutting& cut) {
  try {
    layout(mesh, cut);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("layout succeeded");
  return ErrorKind::InvalidInput;
}

// The first tree of every `stride`-th task prefix, so that samples spread
// over the whole lexicographic range.
std::vector<Cutting> sample_trees(const PolyhedronMesh& mesh, std::size_t stride) {
  SpanningTreeEnumerator en(skeleton_graph(mesh));
  std::vector<Cutting> out;
  const auto tasks = en.prefixes(14);
  for (std::size_t i = 0; i < tasks.size(); i += stride)
    en.enumerate(tasks[i], [&](std::uint64_t mask) {
      out.push_back(Cutting::from_mask(mask));
      return false;
    });
  return out;
}

}  // namespace

TEST_CASE("cutting encode and decode") {
  const Cutting c({7, 3, 12, 3});
  CHECK(c.size() == 3);
  CHECK(c.encode() == "3,7,12");
  CHECK(Cutting::decode("3,7,12") == c);
  CHECK(Cutting::decode("") == Cutting{});
  CHECK(Cutting::from_mask(c.mask()) == c);
  CHECK_THROWS_AS(Cutting::decode("3,x"), Error);
}

TEST_CASE("cutting validity") {
  const auto cube = build_reference(ReferenceSolid::Cube);
  const auto trees = enumerate_spanning_trees(skeleton_graph(cube));
  CHECK(validate_cutting(cube, Cutting(trees.front())).admissible());
  // the four edges around one face: a cycle that also cuts the face off
  const auto& loop = cube.face(0).edges;
  const CutValidity ring = validate_cutting(cube, Cutting(loop));
  CHECK_FALSE(ring.is_forest);
  CHECK_FALSE(ring.surface_connected);
  CHECK(ring.surface_components == 2);
  CHECK_FALSE(validate_cutting(cube, Cutting({0})).spans_required);

  const auto hat = build_basic_hat({});
  CHECK_THROWS_AS(validate_cutting(hat, Cutting({hat.boundary_edges()[0]})), Error);
  CHECK_THROWS_AS(validate_cutting(hat, Cutting({99})), Error);
}

TEST_CASE("layout errors") {
  const auto cube = build_reference(ReferenceSolid::Cube);
  CHECK(layout_error(cube, Cutting(cube.face(0).edges)) == ErrorKind::InadmissibleCutting);
  const auto hat = build_basic_hat({});
  CHECK(layout_error(hat, Cutting({hat.boundary_edges()[0]})) == ErrorKind::BoundaryEdgeInCutting);
  // not spanning: the layout exists but does not close up
  const PlanarLayout partial = layout(cube, Cutting({0, 1}));
  CHECK_FALSE(partial.consistency_ok);
  CHECK_THROWS_AS(check_overlap(partial), Error);
}

TEST_CASE("every tetrahedron tree lays out as an isometric, overlap-free net") {
  const auto tet = build_reference(ReferenceSolid::Tetrahedron);
  const auto trees = enumerate_spanning_trees(skeleton_graph(tet));
  REQUIRE(trees.size() == 16);
  for (const auto& t : trees) {
    const EdgeUnfolding u = unfold_edges(tet, Cutting(t));
    CHECK(u.layout.consistency_ok);
    CHECK(audit_layout(tet, u.layout).ok(1e-12));
    CHECK_FALSE(u.overlap.is_overlapping);
    double area = 0;
    for (const auto& f : u.layout.faces) area += oracle::area(f.polygon);
    CHECK(area == doctest::Approx(tet.surface_area()).epsilon(1e-12));
  }
}

TEST_CASE("layouts of spiked solids are isometric and duplicate cut edges") {
  for (const auto& mesh : {build_spiked_tetrahedron(BasicHatParams{}), build_spiked_tetrahedron(TriHatParams{})}) {
    for (const Cutting& c : sample_trees(mesh, 37)) {
      const PlanarLayout l = layout(mesh, c);
      CHECK(l.consistency_ok);
      const LayoutAudit a = audit_layout(mesh, l);
      CHECK(a.max_isometry_error <= 1e-9);
      CHECK(a.area_error <= 1e-9);
      CHECK(a.cut_edges_duplicated);
      CHECK(a.uncut_edges_shared);
      // placed face edges against 3D edge lengths, computed here directly
      for (const PlacedFace& f : l.faces) {
        const auto& loop = mesh.face(f.face).loop;
        for (std::size_t i = 0; i < loop.size(); ++i) {
          const std::size_t j = (i + 1) % loop.size();
          const double d3 = norm(mesh.position(loop[i]) - mesh.position(loop[j]));
          CHECK(std::abs(norm(f.polygon[i] - f.polygon[j]) - d3) <= 1e-9 * d3);
        }
      }
    }
  }
}

TEST_CASE("overlap checker on hand-made pieces") {
  const std::vector<Polygon2> pieces{
      {{0, 0}, {1, 0}, {1, 1}, {0, 1}},
      {{1, 0}, {2, 0}, {2, 1}, {1, 1}},          // touches piece 0 along an edge
      {{0.5, 0.5}, {1.5, 0.5}, {1.5, 1.5}, {0.5, 1.5}},
      {{5, 5}, {6, 5}, {5, 6}},
  };
  const OverlapReport r = check_overlap(pieces, 4.5);
  REQUIRE(r.overlapping_pairs.size() == 2);
  CHECK(r.overlapping_pairs[0].a == 0);
  CHECK(r.overlapping_pairs[0].b == 2);
  CHECK(r.overlapping_pairs[0].area == doctest::Approx(0.25));
  CHECK(r.overlapping_pairs[1].a == 1);
  CHECK(r.overlapping_pairs[1].b == 2);
  CHECK(r.is_overlapping);
  CHECK(check_overlap(pieces, 4.5, {.area_rel = 1e-9, .stop_at_first = true}).overlapping_pairs.size() == 1);
  const std::vector<Polygon2> apart{pieces[0], pieces[1], pieces[3]};
  CHECK_FALSE(check_overlap(apart, 2.5).is_overlapping);
}

TEST_CASE("overlap checker agrees with brute force on random triangles") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0, 4);
  for (int round = 0; round < 50; ++round) {
    std::vector<Polygon2> tris;
    for (int i = 0; i < 12; ++i) {
      Polygon2 t{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
      if (oracle::area(t) < 0) std::swap(t[1], t[2]);
      if (oracle::area(t) > 1e-3) tris.push_back(t);
    }
    const OverlapReport r = check_overlap(tris, 10);
    std::size_t expect = 0;
    for (std::size_t i = 0; i < tris.size(); ++i)
      for (std::size_t j = i + 1; j < tris.size(); ++j)
        if (convex_intersection_area(tris[i], tris[j]) > 1e-8) ++expect;
    CHECK(r.overlapping_pairs.size() == expect);
  }
}

TEST_CASE("hat patches are recovered from combinatorics") {
  const auto solid = build_spiked_tetrahedron(BasicHatParams{});
  const auto hats = infer_hat_patches(solid);
  REQUIRE(hats.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(hats[k].tip == 7 + 4 * k);
    CHECK(hats[k].faces.size() == 6);
    CHECK(hats[k].internal_edges.size() == 9);
  }
  CHECK_THROWS_AS(infer_hat_patches(build_reference(ReferenceSolid::Cube)), Error);
  const HatSubmesh sub = extract_hat(solid, hats[0]);
  CHECK(sub.mesh.face_count() == 6);
  CHECK(sub.mesh.edge_count() == 12);
  CHECK(sub.mesh.boundary_edges().size() == 3);
}

TEST_CASE("corner-to-corner paths in spanning trees") {
  const auto solid = build_spiked_tetrahedron(BasicHatParams{});
  std::size_t with_path = 0, total = 0;
  for (const Cutting& c : sample_trees(solid, 7)) {
    const auto flags = check_corner_to_corner(solid, c);
    CHECK(flags.size() == 4);
    const auto n = std::count(flags.begin(), flags.end(), true);
    CHECK(n < 4);
    with_path += n;
    total += 4;
  }
  CHECK(with_path > 0);
  CHECK(with_path < total);
}
