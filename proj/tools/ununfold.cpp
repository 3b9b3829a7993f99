#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ununfold/constructions.hpp"
#include "ununfold/errors.hpp"
#include "ununfold/general_unfold.hpp"
#include "ununfold/hats.hpp"
#include "ununfold/io.hpp"
#include "ununfold/search.hpp"
#include "ununfold/spanning_trees.hpp"
#include "ununfold/unfold.hpp"

using namespace ununfold;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitParse = 3;
constexpr int kExitBudget = 4;
constexpr int kExitIo = 1;

double degrees(double rad) { return rad * 180 / std::numbers::pi; }

struct Source {
  std::string shape;
  std::string mesh_path;
  std::string kind = "basic";
  std::optional<double> alpha, beta, gamma, ell, apex, leg;
  int n = 8;
  bool allow_flat_brim = false;
  MeshTolerances tol;
};

void add_source(CLI::App* app, Source& s) {
  app->add_option("shape", s.shape, "hat, spiked-tetrahedron, spiked-octahedron, fan, tetrahedron or cube")
      ->check(CLI::IsMember({"hat", "spiked-tetrahedron", "spiked-octahedron", "fan", "tetrahedron", "cube"}));
  app->add_option("--mesh", s.mesh_path, "Read the mesh from an OBJ file instead");
  app->add_option("--kind", s.kind, "Hat kind")->check(CLI::IsMember({"basic", "triangulated"}));
  app->add_option("--alpha", s.alpha, "Spike base angle (degrees)");
  app->add_option("--beta", s.beta, "Brim base angle (degrees)");
  app->add_option("--gamma", s.gamma, "Corner triangle apex angle, triangulated hats (degrees)");
  app->add_option("--ell", s.ell, "Brim bottom length, basic hats");
  app->add_option("--n", s.n, "Fan triangle count");
  app->add_option("--apex", s.apex, "Fan apex angle (degrees)");
  app->add_option("--leg", s.leg, "Fan leg length");
  app->add_flag("--allow-flat-brim", s.allow_flat_brim, "Accept a basic hat with beta = 30");
  app->add_option("--plane-tol", s.tol.plane_rel, "Coplanarity tolerance (relative to diameter)")
      ->check(CLI::PositiveNumber);
  app->add_option("--angle-tol", s.tol.angle, "Convexity margin (radians)")->check(CLI::PositiveNumber);
}

HatParams hat_params(const Source& s) {
  if (s.kind == "triangulated") {
    TriHatParams p;
    if (s.alpha) p.alpha_deg = *s.alpha;
    if (s.beta) p.beta_deg = *s.beta;
    if (s.gamma) p.gamma_deg = *s.gamma;
    return p;
  }
  BasicHatParams p;
  if (s.alpha) p.alpha_deg = *s.alpha;
  if (s.beta) p.beta_deg = *s.beta;
  if (s.ell) p.ell = *s.ell;
  return p;
}

PolyhedronMesh load(const Source& s) {
  if (!s.mesh_path.empty()) {
    if (!s.shape.empty()) throw Error(ErrorKind::InvalidInput, "give either a shape or --mesh, not both");
    return io::read_obj(s.mesh_path, s.tol);
  }
  const HatBuildOptions options{s.allow_flat_brim};
  if (s.shape == "hat") return build_hat(hat_params(s), options);
  if (s.shape == "spiked-tetrahedron") return build_spiked_tetrahedron(hat_params(s), options);
  if (s.shape == "spiked-octahedron") return build_spiked_octahedron(hat_params(s), options);
  if (s.shape == "fan") {
    FanParams p;
    p.n = s.n;
    if (s.apex) p.apex_deg = *s.apex;
    if (s.leg) p.leg = *s.leg;
    return build_open_fan(p);
  }
  if (s.shape == "tetrahedron") return build_reference(ReferenceSolid::Tetrahedron);
  if (s.shape == "cube") return build_reference(ReferenceSolid::Cube);
  throw Error(ErrorKind::InvalidInput, "no shape given (or --mesh)");
}

// Vertices grouped by boundary flag and angle sum, in order of first vertex.
void print_vertex_classes(const PolyhedronMesh& mesh, std::ostream& out) {
  struct Class {
    bool boundary;
    double angle;
    int count = 0;
    int first = 0;
  };
  std::vector<Class> classes;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const bool boundary = mesh.is_boundary_vertex(v);
    const double a = degrees(angle_sum(mesh, v));
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const Class& c) { return c.boundary == boundary && std::abs(c.angle - a) < 1e-7; });
    if (it == classes.end()) classes.push_back({boundary, a, 1, v});
    else ++it->count;
  }
  out << "vertex classes:\n";
  for (const Class& c : classes) {
    out << "  " << c.count << (c.boundary ? " boundary" : " interior") << " vertices like " << c.first
        << ": angle sum " << io::format_number(c.angle) << " deg";
    if (!c.boundary) out << ", curvature " << io::format_number(360 - c.angle) << " deg";
    out << "\n";
  }
}

void print_summary(const PolyhedronMesh& mesh, std::ostream& out) {
  out << "V=" << mesh.vertex_count() << " E=" << mesh.edge_count() << " F=" << mesh.face_count()
      << " chi=" << euler_characteristic(mesh) << (mesh.is_closed() ? " closed" : " open") << "\n";
  out << "surface area " << io::format_number(mesh.surface_area()) << "\n";
  if (mesh.is_closed()) out << "total curvature " << io::format_number(degrees(total_curvature(mesh))) << " deg\n";
  print_vertex_classes(mesh, out);
}

std::string cutting_text(const std::optional<Cutting>& c) { return c ? "[" + c->encode() + "]" : "none"; }

int run_generate(const Source& s, const std::string& output) {
  const PolyhedronMesh mesh = load(s);
  if (!output.empty()) io::write_obj(mesh, output);
  else std::cout << io::format_obj(mesh);
  print_summary(mesh, output.empty() ? std::cerr : std::cout);
  return 0;
}

int run_inspect(const Source& s, bool as_json) {
  const PolyhedronMesh mesh = load(s);
  const bool convex = mesh.is_closed() && is_topologically_convex(mesh).topologically_convex();
  const auto embedding = check_embedded(mesh);
  const std::size_t symmetries = symmetry_group(mesh).size();
  int hats = 0;
  try {
    hats = static_cast<int>(infer_hat_patches(mesh).size());
  } catch (const Error&) {
  }
  if (as_json) {
    nlohmann::json out = {{"vertices", mesh.vertex_count()},
                          {"edges", mesh.edge_count()},
                          {"faces", mesh.face_count()},
                          {"euler_characteristic", euler_characteristic(mesh)},
                          {"genus", mesh.is_closed() ? nlohmann::json(genus(mesh)) : nlohmann::json(nullptr)},
                          {"closed", mesh.is_closed()},
                          {"embedded", embedding.embedded()},
                          {"topologically_convex", convex},
                          {"symmetries", symmetries},
                          {"hats", hats}};
    std::cout << io::dump(out);
    return 0;
  }
  print_summary(mesh, std::cout);
  if (mesh.is_closed()) std::cout << "genus " << genus(mesh) << "\n";
  std::cout << "embedded " << (embedding.embedded() ? "yes" : "no") << "\n"
            << "topologically convex " << (convex ? "yes" : "no") << "\n"
            << "symmetries " << symmetries << "\n"
            << "hats " << hats << "\n";
  return 0;
}

struct VerifyArgs {
  std::string mode;
  int workers = 0;
  std::uint64_t budget = 0;
  std::size_t first_task = 0;
  int task_depth = 14;
  int k_max = 2;
  std::uint64_t forest_budget = std::uint64_t{1} << 22;
  std::uint64_t audit_stride = 1'000'000;
  bool early_exit = false;
  bool no_hat_certificates = false;
  bool include_timing = false;
  bool progress = false;
  std::string output;
};

int default_workers() {
  if (const char* env = std::getenv("UNUNFOLD_WORKERS")) {
    const int n = std::atoi(env);
    if (n < 1) throw Error(ErrorKind::InvalidInput, "UNUNFOLD_WORKERS must be a positive integer");
    return n;
  }
  return 1;
}

int run_verify(const Source& s, const VerifyArgs& a) {
  const PolyhedronMesh mesh = load(s);
  SearchOptions o;
  o.mode = !a.mode.empty() ? parse_enumeration_mode(a.mode)
           : mesh.is_closed() ? EnumerationMode::SpanningTrees
                              : EnumerationMode::AllInternalForests;
  o.workers = a.workers > 0 ? a.workers : default_workers();
  o.budget = a.budget;
  o.first_task = a.first_task;
  o.task_depth = a.task_depth;
  o.k_max = a.k_max;
  o.forest_budget = a.forest_budget;
  o.audit_stride = a.audit_stride;
  o.early_exit = a.early_exit;
  o.certify_with_hats = !a.no_hat_certificates;
  const auto start = std::chrono::steady_clock::now();
  if (a.progress) {
    o.progress = [start](std::size_t done, std::size_t total) {
      const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::cerr << "\rtasks " << done << "/" << total << "  " << io::format_number(t) << " s" << std::flush;
    };
  }
  const SearchReport r = search_edge_unfolding(mesh, o);
  if (a.progress) std::cerr << "\n";
  const std::string text = io::dump(io::report_json(r, a.include_timing));
  if (!a.output.empty()) io::write_file_atomic(a.output, text);
  else std::cout << text;
  const double rate = r.seconds > 0 ? static_cast<double>(r.total_candidates) / r.seconds : 0;
  std::cerr << "verdict " << r.verdict() << ": " << r.non_overlapping << " non-overlapping of " << r.total_candidates
            << " candidates (" << io::format_number(r.seconds) << " s, " << io::format_number(rate) << " per s)\n";
  if (!r.exhaustive && !r.stopped_early) {
    std::cerr << "budget reached after tasks [" << r.first_task << ", " << r.first_task + r.tasks_done << ") of "
              << r.tasks_total << "; resume with --first-task " << r.first_task + r.tasks_done << "\n";
    return kExitBudget;
  }
  return 0;
}

struct NetArgs {
  std::string cut;
  bool first_found = false;
  std::optional<std::size_t> census;
  bool general = false;
  double band_width = 0.05;
  double band_skew = 75;
  std::optional<double> fan_cut;
  int fan_samples = 0;
  std::uint64_t seed = 1;
  std::string output;
  std::string json_output;
};

void write_or_print(const std::string& path, const std::string& text) {
  if (!path.empty()) io::write_file_atomic(path, text);
  else std::cout << text;
}

int run_fan_samples(const PolyhedronMesh& mesh, const NetArgs& a) {
  std::mt19937_64 rng(a.seed);
  const int center = fan_center(mesh);
  if (center < 0) throw Error(ErrorKind::InvalidInput, "mesh is not a fan");
  const double total = degrees(angle_sum(mesh, center));
  std::uniform_real_distribution<double> pick(0, total);
  nlohmann::json samples = nlohmann::json::array();
  double lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i < a.fan_samples; ++i) {
    const double dir = pick(rng);
    const FanCutUnfolding u = unfold_fan_single_general_cut(mesh, dir);
    lo = std::min(lo, u.wedge_angle_deg);
    hi = std::max(hi, u.wedge_angle_deg);
    samples.push_back({{"direction_deg", std::stod(io::format_number(dir))},
                       {"wedge_deg", std::stod(io::format_number(u.wedge_angle_deg))}});
  }
  const nlohmann::json out = {{"seed", a.seed},
                              {"total_angle_deg", std::stod(io::format_number(total))},
                              {"min_wedge_deg", std::stod(io::format_number(lo))},
                              {"max_wedge_deg", std::stod(io::format_number(hi))},
                              {"samples", samples}};
  write_or_print(a.json_output, io::dump(out));
  std::cerr << a.fan_samples << " cut directions, wedge " << io::format_number(lo) << " to " << io::format_number(hi)
            << " deg\n";
  return 0;
}

int run_net(const Source& s, const NetArgs& a) {
  const PolyhedronMesh mesh = load(s);
  const int choices = !a.cut.empty() + a.first_found + a.census.has_value() + a.general + a.fan_cut.has_value() +
                      (a.fan_samples > 0);
  if (choices != 1)
    throw Error(ErrorKind::InvalidInput,
                "pick exactly one of --cut, --first-found, --census, --general, --fan-cut, --fan-samples");
  if (a.fan_samples > 0) return run_fan_samples(mesh, a);
  if (a.general || a.fan_cut) {
    std::vector<NetPiece> pieces;
    std::vector<NetGlue> glues;
    OverlapReport overlap;
    nlohmann::json json;
    if (a.general) {
      GeneralNet net = general_unfold_spiked_tetrahedron(mesh, a.band_width, a.band_skew);
      json = io::general_net_json(net);
      std::cerr << net.pieces.size() << " pieces, area " << io::format_number(net.area) << " of "
                << io::format_number(net.mesh_area) << ", " << net.overlap.overlapping_pairs.size()
                << " overlapping pairs\n";
      pieces = std::move(net.pieces);
      glues = std::move(net.glues);
      overlap = std::move(net.overlap);
    } else {
      FanCutUnfolding u = unfold_fan_single_general_cut(mesh, *a.fan_cut);
      nlohmann::json faces = nlohmann::json::array();
      for (const NetPiece& p : u.pieces) {
        nlohmann::json vs = nlohmann::json::array();
        for (Vec2 v : p.polygon) vs.push_back({std::stod(io::format_number(v.x)), std::stod(io::format_number(v.y))});
        faces.push_back({{"face_id", p.face}, {"label", p.label}, {"vertices", vs}});
      }
      json = {{"faces", faces},
              {"overlaps", u.overlap.overlapping_pairs.size()},
              {"total_angle_deg", std::stod(io::format_number(u.total_angle_deg))},
              {"wedge_angle_deg", std::stod(io::format_number(u.wedge_angle_deg))}};
      std::cerr << "wedge " << io::format_number(u.wedge_angle_deg) << " deg\n";
      pieces = std::move(u.pieces);
      overlap = std::move(u.overlap);
    }
    write_or_print(a.output, io::piece_net_svg(pieces, glues, overlap));
    if (!a.json_output.empty()) io::write_file_atomic(a.json_output, io::dump(json));
    return 0;
  }

  Cutting cutting;
  if (!a.cut.empty()) {
    cutting = Cutting::decode(a.cut);
  } else if (a.census) {
    const HatCensus census = hat_path_census(mesh);
    if (*a.census >= census.census.size())
      throw Error(ErrorKind::OutOfRange, "census has " + std::to_string(census.census.size()) + " cuttings");
    cutting = census.census[*a.census];
  } else {
    SearchOptions o;
    o.mode = mesh.is_closed() ? EnumerationMode::SpanningTrees : EnumerationMode::AllInternalForests;
    o.early_exit = true;
    const SearchReport r = search_edge_unfolding(mesh, o);
    if (!r.exemplars.non_overlapping)
      throw Error(ErrorKind::InvalidInput, "no non-overlapping cutting exists (verdict " + r.verdict() + ")");
    cutting = *r.exemplars.non_overlapping;
  }
  const PlanarLayout layout = ununfold::layout(mesh, cutting);
  const OverlapReport overlap = check_overlap(layout);
  std::cerr << "cutting " << cutting_text(cutting) << ": " << overlap.overlapping_pairs.size()
            << " overlapping pairs\n";
  write_or_print(a.output, io::edge_net_svg(mesh, layout, overlap));
  if (!a.json_output.empty()) io::write_file_atomic(a.json_output, io::dump(io::edge_net_json(layout, overlap)));
  return 0;
}

int run_count_trees(const Source& s) {
  const PolyhedronMesh mesh = load(s);
  std::cout << count_spanning_trees(skeleton_graph(mesh)) << "\n";
  return 0;
}

// key=value lines fill in options that were not given on the command line.
void apply_config(CLI::App* sub, const std::string& path) {
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_file(path);
  } catch (const CLI::FileError& e) {
    throw Error(ErrorKind::IoError, e.what());
  }
  for (const CLI::ConfigItem& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    CLI::Option* opt = sub->get_option_no_throw("--" + item.name);
    if (opt == nullptr) opt = sub->get_option_no_throw(item.name);
    if (opt == nullptr || !item.parents.empty())
      throw Error(ErrorKind::ParseError, path + ": unknown key '" + item.fullname() + "'");
    if (opt->count() > 0) continue;
    for (const std::string& value : item.inputs) opt->add_result(value);
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw Error(ErrorKind::ParseError, path + ": " + item.name + ": " + e.what());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructions and unfolding searches for polyhedra that cannot be unfolded"};
  app.require_subcommand(1);

  Source source;
  std::string output;
  bool as_json = false;
  std::string config;
  VerifyArgs verify;
  NetArgs net;

  auto* generate = app.add_subcommand("generate", "Build a construction and write it as OBJ");
  auto* inspect = app.add_subcommand("inspect", "Print mesh facts");
  auto* verify_cmd = app.add_subcommand("verify", "Search edge unfoldings and report");
  auto* net_cmd = app.add_subcommand("net", "Lay out a net as SVG");
  auto* count = app.add_subcommand("count-trees", "Matrix-Tree count of the skeleton");
  for (auto* sub : {generate, inspect, verify_cmd, net_cmd, count}) {
    add_source(sub, source);
    sub->add_option("--config", config, "key=value file with option values");
  }
  generate->add_option("-o,--output", output, "OBJ path (stdout if omitted)");
  inspect->add_flag("--json", as_json, "JSON output");

  verify_cmd->add_option("--mode", verify.mode, "spanning-trees, all-internal-forests or bounded-forests");
  verify_cmd->add_option("--workers", verify.workers, "Worker threads (default UNUNFOLD_WORKERS or 1)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--budget", verify.budget, "Candidate cap, rounded down to whole tasks (0 = none)");
  verify_cmd->add_option("--first-task", verify.first_task, "Resume from this task index");
  verify_cmd->add_option("--task-depth", verify.task_depth, "Edges decided per task prefix");
  verify_cmd->add_option("--k-max", verify.k_max, "Largest cut component count, bounded forests");
  verify_cmd->add_option("--forest-budget", verify.forest_budget, "Largest edge-subset count for forest modes");
  verify_cmd->add_option("--audit-stride", verify.audit_stride, "Trees between full-geometry audits");
  verify_cmd->add_flag("--early-exit", verify.early_exit, "Stop at the first non-overlapping cutting");
  verify_cmd->add_flag("--no-hat-certificates", verify.no_hat_certificates, "Lay out every tree in full");
  verify_cmd->add_flag("--include-timing", verify.include_timing, "Add wall-clock fields to the report");
  verify_cmd->add_flag("--progress", verify.progress, "Task progress on stderr");
  verify_cmd->add_option("-o,--output", verify.output, "Report path (stdout if omitted)");

  net_cmd->add_option("--cut", net.cut, "Comma-separated cut edge ids");
  net_cmd->add_flag("--first-found", net.first_found, "Use the first non-overlapping cutting");
  net_cmd->add_option("--census", net.census, "Use the k-th cutting of the hat census");
  net_cmd->add_flag("--general", net.general, "Band unfolding of a spiked tetrahedron");
  net_cmd->add_option("--band-width", net.band_width, "Band extent along the edge, fraction of the edge");
  net_cmd->add_option("--band-skew", net.band_skew, "Angle between band and edge (degrees)");
  net_cmd->add_option("--fan-cut", net.fan_cut, "Cut a fan along one ray at this angle (degrees)");
  net_cmd->add_option("--fan-samples", net.fan_samples, "Report the wedge for this many random fan cuts");
  net_cmd->add_option("--seed", net.seed, "Seed for --fan-samples");
  net_cmd->add_option("-o,--output", net.output, "SVG path (stdout if omitted)");
  net_cmd->add_option("--json", net.json_output, "Also write the net as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (!config.empty()) apply_config(app.get_subcommands().front(), config);
    if (generate->parsed()) return run_generate(source, output);
    if (inspect->parsed()) return run_inspect(source, as_json);
    if (verify_cmd->parsed()) return run_verify(source, verify);
    if (net_cmd->parsed()) return run_net(source, net);
    if (count->parsed()) return run_count_trees(source);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ParseError:
        return kExitParse;
      case ErrorKind::ModeUnsupported:
        return kExitBudget;
      case ErrorKind::IoError:
        return kExitIo;
      default:
        return kExitValidation;
    }
  }
  return 0;
}
