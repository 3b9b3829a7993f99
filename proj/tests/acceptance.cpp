// End-to-end acceptance run: one PASS/FAIL line per criterion, with the
// measured numbers underneath. Exit status is non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ununfold/constructions.hpp"
#include "ununfold/errors.hpp"
#include "ununfold/general_unfold.hpp"
#include "ununfold/io.hpp"
#include "ununfold/search.hpp"
#include "ununfold/spanning_trees.hpp"
#include "ununfold/unfold.hpp"

using namespace ununfold;

namespace {

// Pinned tolerances.
constexpr double kAngleTolDeg = 1e-9;
constexpr double kRelTol = 1e-9;
constexpr double kHatSeconds = 10;
constexpr double kReferenceSeconds = 10;
constexpr int kFanSamples = 128;

struct Criterion {
  Criterion(int n, std::string t) : number(n), title(std::move(t)) {}

  int number;
  std::string title;
  bool ok = true;
  std::vector<std::string> lines;

  void check(bool cond, const std::string& what) {
    if (!cond) ok = false;
    lines.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { lines.push_back("     " + what); }
};

std::string num(double x) { return io::format_number(x); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidInput;
}

struct Options {
  int workers = 1;
  std::uint64_t tri_budget = 1'000'000'000;
  std::uint64_t basic_budget = 0;  // 0 = the full stream
  std::string report_dir = ".";
};

Criterion hat_ununfoldability() {
  Criterion c{1, "hats have no edge unfolding (all internal forests)"};
  const std::vector<std::pair<std::string, PolyhedronMesh>> hats{
      {"basic hat (81, 35, 2)", build_basic_hat({81, 35, 2})},
      {"triangulated hat (81, 30, 20)", build_triangulated_hat({81, 30, 20})}};
  const std::uint64_t expected[] = {512, 4096};
  for (std::size_t i = 0; i < hats.size(); ++i) {
    SearchOptions o;
    o.mode = EnumerationMode::AllInternalForests;
    const auto t0 = std::chrono::steady_clock::now();
    const SearchReport r = search_edge_unfolding(hats[i].second, o);
    const double s = seconds_since(t0);
    c.check(r.total_candidates == expected[i] && r.exhaustive,
            hats[i].first + ": " + std::to_string(r.total_candidates) + " subsets enumerated");
    c.check(r.non_overlapping == 0, hats[i].first + ": non_overlapping = " + std::to_string(r.non_overlapping) +
                                        " (admissible " + std::to_string(r.admissible) + ", consistent " +
                                        std::to_string(r.consistent) + ")");
    c.check(s < kHatSeconds, hats[i].first + ": " + num(s) + " s");
  }
  return c;
}

Criterion hat_census() {
  Criterion c{2, "hat path census"};
  const HatCensus basic = hat_path_census(build_basic_hat({81, 35, 2}));
  const HatCensus tri = hat_path_census(build_triangulated_hat({81, 30, 20}));
  c.check(basic.census_orbits == 1, "basic: " + std::to_string(basic.census.size()) + " census cuttings in " +
                                        std::to_string(basic.census_orbits) + " orbit(s)");
  c.check(tri.census_orbits == 2, "triangulated: " + std::to_string(tri.census.size()) + " census cuttings in " +
                                      std::to_string(tri.census_orbits) + " orbit(s)");
  c.check(basic.census_all_overlap && tri.census_all_overlap, "every census cutting has a non-empty overlap report");
  c.check(basic.census_equals_paths && tri.census_equals_paths,
          "census equals the corner-to-tip paths through all middles");
  c.note("census = consistent layouts with two or more cuts at every negatively curved vertex");
  c.note("all consistent layouts: basic " + std::to_string(basic.consistent.size()) + " in " +
         std::to_string(basic.consistent_orbits) + " orbits, triangulated " + std::to_string(tri.consistent.size()) +
         " in " + std::to_string(tri.consistent_orbits) + " orbits");
  return c;
}

void write_report(const Options& opt, const std::string& name, const SearchReport& r) {
  if (opt.report_dir.empty()) return;
  io::write_file_atomic(std::filesystem::path(opt.report_dir) / name, io::dump(io::report_json(r, true)));
}

Criterion closed_ununfoldability(const Options& opt) {
  Criterion c{3, "spiked tetrahedra have no edge unfolding (spanning trees)"};
  const PolyhedronMesh basic = build_spiked_tetrahedron(BasicHatParams{81, 35, 2});
  SearchOptions o;
  o.workers = opt.workers;
  o.budget = opt.basic_budget;
  o.progress = [t0 = std::chrono::steady_clock::now()](std::size_t done, std::size_t total) {
    if (done % 512 == 0 || done == total)
      std::cerr << "  basic spiked tetrahedron: task " << done << "/" << total << ", " << num(seconds_since(t0))
                << " s\n";
  };
  const SearchReport r = search_edge_unfolding(basic, o);
  write_report(opt, "spiked_tetrahedron_basic.json", r);
  const double rate = r.total_candidates / std::max(r.seconds, 1e-9);
  c.check(r.vertices == 20 && r.edges == 42 && r.faces == 24, "V=20 E=42 F=24");
  c.check(r.exhaustive, "full stream enumerated (" + std::to_string(r.tasks_done) + " of " +
                            std::to_string(r.tasks_total) + " tasks)");
  c.check(r.expected_total == "1825050000" && std::to_string(r.total_candidates) == r.expected_total,
          "stream length " + std::to_string(r.total_candidates) + " = Matrix-Tree count " + r.expected_total);
  c.check(r.task_counts_match, "every task matched its own Matrix-Tree count");
  c.check(r.non_overlapping == 0, "non_overlapping = " + std::to_string(r.non_overlapping));
  c.check(r.hats.lemma_violations == 0,
          "corner-to-corner lemma: every (tree, hat) pair has a corner-to-corner cut path or an overlap inside "
          "the hat; violations = " +
              std::to_string(r.hats.lemma_violations));
  c.check(r.hats.all_hats_corner_to_corner == 0, "no tree has corner-to-corner paths in all four hats");
  c.check(r.hats.audit_mismatches == 0, std::to_string(r.hats.audits) + " full-geometry audits of hat certificates, " +
                                            std::to_string(r.hats.audit_mismatches) + " mismatches");
  c.note("certified by hat memo: " + std::to_string(r.hats.certified) + ", laid out in full: " +
         std::to_string(r.hats.full_checks) + ", smallest certificate overlap area " +
         num(r.hats.min_certificate_area));
  c.note("throughput " + num(rate) + " trees/s, " + num(r.seconds) + " s, " + std::to_string(opt.workers) +
         " worker(s)");

  const PolyhedronMesh tri = build_spiked_tetrahedron(TriHatParams{81, 30, 20});
  SearchOptions t;
  t.workers = opt.workers;
  t.budget = opt.tri_budget;
  const SearchReport q = search_edge_unfolding(tri, t);
  write_report(opt, "spiked_tetrahedron_triangulated.json", q);
  c.check(q.expected_total == "382205952000", "triangulated: Matrix-Tree count " + q.expected_total);
  c.check(q.non_overlapping == 0 && q.task_counts_match && q.hats.lemma_violations == 0 &&
              q.hats.audit_mismatches == 0,
          "triangulated: non_overlapping = " + std::to_string(q.non_overlapping) + " on the enumerated prefix");
  if (q.exhaustive) {
    c.note("triangulated: full stream enumerated");
  } else {
    c.note("triangulated: budget " + std::to_string(opt.tri_budget) + " covers the exhaustive prefix of tasks [" +
           std::to_string(q.first_task) + ", " + std::to_string(q.first_task + q.tasks_done) + ") of " +
           std::to_string(q.tasks_total) + " = " + std::to_string(q.total_candidates) + " of " + q.expected_total +
           " trees; resume with --first-task " + std::to_string(q.first_task + q.tasks_done));
    c.note("triangulated: beyond the prefix the verdict rests on the triangulated hat exhaustion of criterion 1");
  }
  c.note("triangulated throughput " + num(q.total_candidates / std::max(q.seconds, 1e-9)) + " trees/s");
  return c;
}

Criterion reference_solids() {
  Criterion c{4, "tetrahedron and cube are edge-unfoldable in every tree"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto tet = build_reference(ReferenceSolid::Tetrahedron);
  const SearchReport t = search_edge_unfolding(tet);
  c.check(t.total_candidates == 16 && t.non_overlapping == 16,
          "tetrahedron " + std::to_string(t.non_overlapping) + "/" + std::to_string(t.total_candidates));
  const auto cube = build_reference(ReferenceSolid::Cube);
  const SearchReport r = search_edge_unfolding(cube);
  c.check(r.total_candidates == 384 && r.non_overlapping == 384,
          "cube " + std::to_string(r.non_overlapping) + "/" + std::to_string(r.total_candidates));
  std::set<std::string> nets;
  for (const Cutting& cut : r.non_overlapping_cuttings) nets.insert(net_signature(layout(cube, cut)));
  c.check(nets.size() == 11, "cube: " + std::to_string(nets.size()) + " congruence-distinct nets");
  const double s = seconds_since(t0);
  c.check(s < kReferenceSeconds, num(s) + " s");
  return c;
}

double without_spike_deg(const PolyhedronMesh& hat) {
  // middle 3, spike face through middles 3, 4 and tip 6
  double sum = rad_to_deg(angle_sum(hat, 3));
  for (int f : hat.vertex_faces(3)) {
    const auto& loop = hat.face(f).loop;
    if (std::count(loop.begin(), loop.end(), 6) && std::count(loop.begin(), loop.end(), 4))
      sum -= rad_to_deg(hat.face_angle(f, 3));
  }
  return sum;
}

Criterion curvature_sums() {
  Criterion c{5, "angle sums and total curvature"};
  const double basic = without_spike_deg(build_basic_hat({81, 30, 2}, {.allow_flat_brim = true}));
  const double tri = without_spike_deg(build_triangulated_hat({81, 30, 20}));
  c.check(std::abs(basic - 381) <= kAngleTolDeg, "basic (81, 30): middle angle without one spike triangle " +
                                                     num(basic) + " deg, expected 381");
  c.check(std::abs(tri - 361) <= kAngleTolDeg, "triangulated (81, 30, 20): " + num(tri) + " deg, expected 361");
  const std::vector<std::pair<std::string, PolyhedronMesh>> closed{
      {"tetrahedron", build_reference(ReferenceSolid::Tetrahedron)},
      {"cube", build_reference(ReferenceSolid::Cube)},
      {"basic spiked tetrahedron", build_spiked_tetrahedron(BasicHatParams{})},
      {"triangulated spiked tetrahedron", build_spiked_tetrahedron(TriHatParams{})},
      {"basic spiked octahedron", build_spiked_octahedron(BasicHatParams{})},
      {"triangulated spiked octahedron", build_spiked_octahedron(TriHatParams{})},
  };
  for (const auto& [name, mesh] : closed) {
    const double k = rad_to_deg(total_curvature(mesh));
    c.check(std::abs(k - 720) <= kAngleTolDeg, name + ": total curvature " + num(k) + " deg");
  }
  return c;
}

Criterion general_unfolding() {
  Criterion c{6, "general unfolding of the basic spiked tetrahedron"};
  const auto solid = build_spiked_tetrahedron(BasicHatParams{});
  const GeneralNet net = general_unfold_spiked_tetrahedron(solid, 0.05, 75);
  c.check(net.overlap.overlapping_pairs.empty(),
          "band width 0.05, skew 75: " + std::to_string(net.pieces.size()) + " pieces, " +
              std::to_string(net.overlap.overlapping_pairs.size()) + " overlapping pairs");
  const double rel = std::abs(net.area - solid.surface_area()) / solid.surface_area();
  c.check(rel <= kRelTol, "net area " + num(net.area) + " vs surface " + num(solid.surface_area()) +
                              " (relative error " + num(rel) + ")");
  c.check(net.pieces_connected, "pieces glue into one connected net");
  const ErrorKind k = error_kind([&] { general_unfold_spiked_tetrahedron(solid, 0.05, 90); });
  c.check(k == ErrorKind::BandCollision, "skew 90 rejected with " + std::string(to_string(k)));
  return c;
}

Criterion fan() {
  Criterion c{7, "open fan (n = 8, apex 50)"};
  const auto fan = build_open_fan({8, 50, 1});
  const int center = fan_center(fan);
  const auto cuts = enumerate_admissible_cuttings(fan, EnumerationMode::AllInternalForests);
  bool spokes = cuts.size() == 8;
  double worst = 0;
  for (const Cutting& cut : cuts) {
    if (cut.size() != 1) {
      spokes = false;
      continue;
    }
    const Edge& e = fan.edge(cut.edges()[0]);
    spokes = spokes && (e.v0 == center || e.v1 == center);
    const EdgeUnfolding u = unfold_edges(fan, cut);
    std::vector<Polygon2> polys;
    Vec2 apex;
    for (const PlacedFace& f : u.layout.faces) {
      polys.push_back(f.polygon);
      const auto& loop = fan.face(f.face).loop;
      apex = f.polygon[std::find(loop.begin(), loop.end(), center) - loop.begin()];
    }
    worst = std::max(worst, std::abs(overlap_wedge_angle(polys, apex, fan.surface_area()) - 40));
  }
  c.check(spokes, "admissible edge cuttings: " + std::to_string(cuts.size()) + ", all single spokes");
  c.check(worst <= kAngleTolDeg, "single-spoke overlap wedge 40 deg, worst deviation " + num(worst));

  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> dir(0, 400);
  double worst_general = 0;
  for (int i = 0; i < kFanSamples; ++i) {
    const FanCutUnfolding u = unfold_fan_single_general_cut(fan, dir(rng));
    worst_general = std::max(worst_general, std::abs(u.wedge_angle_deg - 40));
  }
  c.check(worst_general <= kAngleTolDeg, std::to_string(kFanSamples) +
                                             " sampled straight cuts: wedge 40 deg, worst deviation " +
                                             num(worst_general));
  int pairs = 0, split = 0;
  for (int a = 0; a < fan.edge_count(); ++a)
    for (int b = a + 1; b < fan.edge_count(); ++b) {
      if (fan.edge(a).is_boundary() || fan.edge(b).is_boundary()) continue;
      ++pairs;
      if (!validate_cutting(fan, Cutting({a, b})).surface_connected) ++split;
    }
  c.check(pairs == 28 && split == pairs, std::to_string(split) + " of " + std::to_string(pairs) +
                                             " two-spoke cuttings disconnect the surface");
  return c;
}

Criterion properties(const Options& opt) {
  Criterion c{8, "property suites"};
  // Gauss-Bonnet, open and closed
  const std::vector<PolyhedronMesh> meshes{
      build_basic_hat({}),           build_triangulated_hat({}),
      build_open_fan({}),            build_reference(ReferenceSolid::Tetrahedron),
      build_reference(ReferenceSolid::Cube), build_spiked_tetrahedron(BasicHatParams{}),
      build_spiked_tetrahedron(TriHatParams{}), build_spiked_octahedron(BasicHatParams{}),
  };
  double gb = 0;
  for (const auto& m : meshes) {
    double total = 0;
    for (int v = 0; v < m.vertex_count(); ++v)
      total += (m.is_boundary_vertex(v) ? kPi : 2 * kPi) - angle_sum(m, v);
    gb = std::max(gb, std::abs(total - 2 * kPi * euler_characteristic(m)));
  }
  c.check(rad_to_deg(gb) <= kAngleTolDeg, "Gauss-Bonnet on " + std::to_string(meshes.size()) +
                                              " constructions, worst error " + num(rad_to_deg(gb)) + " deg");

  // layouts checked during searches
  std::vector<SearchReport> reports;
  SearchOptions forests;
  forests.mode = EnumerationMode::AllInternalForests;
  reports.push_back(search_edge_unfolding(build_basic_hat({}), forests));
  reports.push_back(search_edge_unfolding(build_triangulated_hat({}), forests));
  forests.mode = EnumerationMode::BoundedForests;
  reports.push_back(search_edge_unfolding(build_triangulated_hat({}), forests));
  reports.push_back(search_edge_unfolding(build_reference(ReferenceSolid::Cube)));
  SearchOptions full;
  full.certify_with_hats = false;
  full.task_depth = 18;
  full.budget = 50'000;
  reports.push_back(search_edge_unfolding(build_spiked_tetrahedron(BasicHatParams{}), full));
  std::uint64_t layouts = 0, dup = 0, shared = 0, gb_bad = 0;
  double iso = 0, area = 0;
  bool funnel = true;
  for (const SearchReport& r : reports) {
    layouts += r.properties.layouts_checked;
    iso = std::max(iso, r.properties.max_isometry_error);
    area = std::max(area, r.properties.max_area_error);
    dup += r.properties.cut_duplication_failures;
    shared += r.properties.shared_edge_failures;
    gb_bad += r.properties.gauss_bonnet_violations;
    funnel = funnel && r.funnel_ok();
  }
  c.check(iso <= kRelTol, "isometry over " + std::to_string(layouts) + " layouts, worst " + num(iso));
  c.check(area <= kRelTol, "area preservation, worst " + num(area));
  c.check(dup == 0 && shared == 0, "cut edges placed twice, uncut edges shared once (" + std::to_string(dup) +
                                       " + " + std::to_string(shared) + " failures)");
  c.check(gb_bad == 0, "curvature condition never contradicted by a consistent layout");
  c.check(funnel, "candidates >= admissible >= consistent >= non-overlapping in every report");

  // determinism across worker counts
  const int many = std::max(4, opt.workers);
  bool same = true;
  auto compare = [&](const PolyhedronMesh& mesh, SearchOptions o) {
    o.workers = 1;
    const std::string a = io::dump(io::report_json(search_edge_unfolding(mesh, o)));
    o.workers = many;
    const std::string b = io::dump(io::report_json(search_edge_unfolding(mesh, o)));
    same = same && a == b;
  };
  SearchOptions cube_opts;
  cube_opts.task_depth = 5;
  compare(build_reference(ReferenceSolid::Cube), cube_opts);
  SearchOptions spiked;
  spiked.budget = 3'000'000;
  spiked.audit_stride = 10'000;
  compare(build_spiked_tetrahedron(BasicHatParams{}), spiked);
  SearchOptions hat_opts;
  hat_opts.mode = EnumerationMode::AllInternalForests;
  compare(build_triangulated_hat({}), hat_opts);
  c.check(same, "reports byte-identical for 1 and " + std::to_string(many) + " workers");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  opt.workers = std::max(1u, std::thread::hardware_concurrency());
  CLI::App app{"Acceptance run"};
  app.add_option("--workers", opt.workers, "Worker threads for the long searches")->check(CLI::PositiveNumber);
  app.add_option("--tri-budget", opt.tri_budget, "Tree budget for the triangulated spiked tetrahedron")
      ->envname("UNUNFOLD_TRI_BUDGET");
  app.add_option("--basic-budget", opt.basic_budget, "Tree budget for the basic spiked tetrahedron (0 = full)")
      ->envname("UNUNFOLD_BASIC_BUDGET");
  app.add_option("--report-dir", opt.report_dir, "Where to write the search reports (empty = nowhere)");
  CLI11_PARSE(app, argc, argv);

  std::vector<std::function<Criterion()>> runs{
      hat_ununfoldability,
      hat_census,
      [&] { return closed_ununfoldability(opt); },
      reference_solids,
      curvature_sums,
      general_unfolding,
      fan,
      [&] { return properties(opt); },
  };
  std::vector<Criterion> results;
  for (auto& run : runs) {
    Criterion c{0, ""};
    try {
      c = run();
    } catch (const std::exception& e) {
      c.number = static_cast<int>(results.size()) + 1;
      c.title = "threw";
      c.check(false, e.what());
    }
    std::cout << "criterion " << c.number << ": " << (c.ok ? "PASS" : "FAIL") << "  " << c.title << "\n";
    for (const std::string& line : c.lines) std::cout << "    " << line << "\n";
    std::cout.flush();
    results.push_back(std::move(c));
  }
  const auto passed = std::count_if(results.begin(), results.end(), [](const Criterion& c) { return c.ok; });
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return passed == static_cast<long>(results.size()) ? 0 : 1;
}
