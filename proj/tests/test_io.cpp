#include <doctest.h>

#include <filesystem>
#include <regex>
#include <sstream>

#include "oracles.hpp"
#include "ununfold/constructions.hpp"
#include "ununfold/errors.hpp"
#include "ununfold/io.hpp"
#include "ununfold/spanning_trees.hpp"

using namespace ununfold;
namespace fs = std::filesystem;

namespace {

PolyhedronMesh parse(const std::string& text) {
  std::istringstream in(text);
  return io::parse_obj(in);
}

std::string parse_message(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    return e.what();
  }
  FAIL("parsed");
  return "";
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "ununfold-io-test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("numbers use 12 significant digits") {
  CHECK(io::format_number(1.0 / 3) == "0.333333333333");
  CHECK(io::format_number(-0.0) == "0");
  CHECK(io::format_number(2) == "2");
  CHECK(io::format_number(1e-20) == "1e-20");
}

TEST_CASE("OBJ write, read, write is byte-identical") {
  for (const auto& mesh : {build_reference(ReferenceSolid::Cube), build_spiked_tetrahedron(BasicHatParams{}),
                           build_spiked_tetrahedron(TriHatParams{}), build_open_fan({}), build_basic_hat({})}) {
    const std::string first = io::format_obj(mesh);
    const PolyhedronMesh back = parse(first);
    CHECK(io::format_obj(back) == first);
    CHECK(back.vertex_count() == mesh.vertex_count());
    CHECK(back.edge_count() == mesh.edge_count());
    CHECK(back.face_count() == mesh.face_count());
    for (int e = 0; e < mesh.edge_count(); ++e) {
      const double a = norm(mesh.position(mesh.edge(e).v0) - mesh.position(mesh.edge(e).v1));
      const double b = norm(back.position(back.edge(e).v0) - back.position(back.edge(e).v1));
      CHECK(std::abs(a - b) <= 1e-11 * a);
    }
  }
}

TEST_CASE("OBJ files on disk") {
  const fs::path path = scratch_dir() / "tri.obj";
  io::write_obj(build_spiked_tetrahedron(TriHatParams{}), path);
  const PolyhedronMesh m = io::read_obj(path);
  CHECK(m.face_count() == 36);
  CHECK_THROWS_AS(io::read_obj(scratch_dir() / "missing.obj"), Error);
}

TEST_CASE("OBJ parsing") {
  const PolyhedronMesh tri = parse("# triangle\nv 0 0 0\nv 1 0 0\n\nv 0 1 0\nf 1/1 2/2/2 -1\n");
  CHECK(tri.face_count() == 1);
  CHECK(tri.face(0).loop == std::vector<int>{0, 1, 2});
  CHECK(parse_message("v 0 0 0\nv 1 0\n").find("line 2") != std::string::npos);
  CHECK(parse_message("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n").find("line 4") != std::string::npos);
  CHECK(parse_message("v 0 0 0\nvn 0 0 1\n").find("line 2") != std::string::npos);
  CHECK(parse_message("v 0 0 0\nv 1 0 0\nf 1 2\n").find("line 3") != std::string::npos);
  CHECK(parse_message("v 0 0 0\n").find("no faces") != std::string::npos);
  CHECK(parse_message("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 x\n").find("line 4") != std::string::npos);
}

TEST_CASE("OBJ with a quad sharing three vertices with another quad") {
  const std::string text = "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\nf 1 2 3 4\n";
  CHECK_THROWS_AS(parse(text), Error);
}

TEST_CASE("edge net SVG and JSON") {
  const auto solid = build_spiked_tetrahedron(BasicHatParams{});
  const auto trees = enumerate_spanning_trees(skeleton_graph(build_reference(ReferenceSolid::Cube)));
  const auto cube = build_reference(ReferenceSolid::Cube);
  for (const auto& [mesh, cut] : {std::pair{cube, Cutting(trees[0])}}) {
    const EdgeUnfolding u = unfold_edges(mesh, cut);
    const std::string svg = io::edge_net_svg(mesh, u.layout, u.overlap);
    const std::regex poly("<polygon");
    CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), poly), std::sregex_iterator()) ==
          mesh.face_count());
    const std::regex line("class=\"cut\"");
    CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), line), std::sregex_iterator()) ==
          2 * static_cast<long>(cut.size()));
    // polygon areas from the rounded coordinates
    const nlohmann::json j = io::edge_net_json(u.layout, u.overlap);
    double area = 0;
    for (const auto& f : j["faces"]) {
      Polygon2 p;
      for (const auto& v : f["vertices"]) p.push_back({v[0].get<double>(), v[1].get<double>()});
      area += oracle::area(p);
    }
    CHECK(std::abs(area - mesh.surface_area()) <= 1e-6 * mesh.surface_area());
    CHECK(j["cut_edges"].size() == cut.size());
    CHECK(j["overlaps"].empty());
  }
  // an overlapping spiked-tetrahedron net gets shaded faces
  SpanningTreeEnumerator en(skeleton_graph(solid));
  Cutting first;
  en.enumerate(TreePrefix{}, [&](std::uint64_t m) {
    first = Cutting::from_mask(m);
    return false;
  });
  const EdgeUnfolding u = unfold_edges(solid, first);
  REQUIRE(u.overlap.is_overlapping);
  const std::string svg = io::edge_net_svg(solid, u.layout, u.overlap);
  CHECK(svg.find("face overlap") != std::string::npos);
  CHECK(svg.find("viewBox") != std::string::npos);
}

TEST_CASE("general net SVG has one polygon per piece") {
  const GeneralNet net = general_unfold_spiked_tetrahedron(build_spiked_tetrahedron(BasicHatParams{}));
  const std::string svg = io::piece_net_svg(net.pieces, net.glues, net.overlap);
  const std::regex poly("<polygon");
  CHECK(static_cast<std::size_t>(std::distance(std::sregex_iterator(svg.begin(), svg.end(), poly),
                                               std::sregex_iterator())) == net.pieces.size());
  const nlohmann::json j = io::general_net_json(net);
  double area = 0;
  for (const auto& f : j["faces"]) {
    Polygon2 p;
    for (const auto& v : f["vertices"]) p.push_back({v[0].get<double>(), v[1].get<double>()});
    area += oracle::area(p);
  }
  CHECK(std::abs(area - net.mesh_area) <= 1e-6 * net.mesh_area);
}

TEST_CASE("report JSON") {
  SearchReport r;
  r.total_candidates = 1825050000;
  r.expected_total = "382205952000";
  r.seconds = 12.5;
  const nlohmann::json j = io::report_json(r);
  CHECK(j["counts"]["total_candidates"].get<std::uint64_t>() == 1825050000u);
  CHECK(j["expected_total"].get<std::uint64_t>() == 382205952000u);
  CHECK_FALSE(j.contains("timing"));
  CHECK(io::report_json(r, true)["timing"]["seconds"].get<double>() == 12.5);
  CHECK(j["verdict"] == "undecided");
  CHECK(io::dump(j).back() == '\n');
}

TEST_CASE("atomic writes replace the file and leave nothing behind") {
  const fs::path dir = scratch_dir() / "atomic";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path target = dir / "out.txt";
  io::write_file_atomic(target, "first");
  io::write_file_atomic(target, "second");
  CHECK(io::read_file(target) == "second");
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator()) == 1);
  CHECK_THROWS_AS(io::write_file_atomic(dir / "no" / "such" / "dir.txt", "x"), Error);
}
