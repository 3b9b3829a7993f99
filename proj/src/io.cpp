#include "ununfold/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "ununfold/errors.hpp"

namespace ununfold::io {

std::string format_number(double value) {
  if (value == 0) value = 0;  // folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

double rounded(double value) { return std::stod(format_number(value)); }

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

PolyhedronMesh parse_obj(std::istream& in, const MeshTolerances& tol) {
  std::vector<Vec3> positions;
  std::vector<std::vector<int>> faces;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::istringstream row(text);
    std::string key;
    if (!(row >> key) || key[0] == '#') continue;
    if (key == "v") {
      Vec3 p;
      if (!(row >> p.x >> p.y >> p.z)) parse_error(line, "vertex needs three coordinates");
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) parse_error(line, "non-finite coordinate");
      positions.push_back(p);
    } else if (key == "f") {
      std::vector<int> loop;
      std::string item;
      while (row >> item) {
        const std::string head = item.substr(0, item.find('/'));
        std::size_t used = 0;
        long index = 0;
        try {
          index = std::stol(head, &used);
        } catch (const std::exception&) {
          parse_error(line, "bad face index '" + item + "'");
        }
        if (used != head.size() || index == 0) parse_error(line, "bad face index '" + item + "'");
        const long resolved = index > 0 ? index - 1 : static_cast<long>(positions.size()) + index;
        if (resolved < 0 || resolved >= static_cast<long>(positions.size()))
          parse_error(line, "face index " + std::to_string(index) + " out of range");
        loop.push_back(static_cast<int>(resolved));
      }
      if (loop.size() < 3) parse_error(line, "face needs at least three vertices");
      faces.push_back(std::move(loop));
    } else {
      parse_error(line, "unsupported record '" + key + "'");
    }
  }
  if (faces.empty()) throw Error(ErrorKind::ParseError, "no faces");
  return PolyhedronMesh::build(std::move(positions), std::move(faces), tol);
}

PolyhedronMesh read_obj(const std::filesystem::path& path, const MeshTolerances& tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return parse_obj(in, tol);
}

std::string format_obj(const PolyhedronMesh& mesh) {
  std::string out;
  for (const Vec3& p : mesh.positions())
    out += "v " + format_number(p.x) + " " + format_number(p.y) + " " + format_number(p.z) + "\n";
  for (const Face& f : mesh.faces()) {
    out += "f";
    for (int v : f.loop) out += " " + std::to_string(v + 1);
    out += "\n";
  }
  return out;
}

void write_obj(const PolyhedronMesh& mesh, const std::filesystem::path& path) {
  write_file_atomic(path, format_obj(mesh));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  const std::filesystem::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::IoError, "cannot move file into place at " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

struct Bounds {
  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_x;
  void add(Vec2 p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
};

// SVG's y axis points down; coordinates are mirrored so the net reads the
// same way as in the plane.
std::string point(Vec2 p) { return format_number(p.x) + "," + format_number(-p.y); }

std::string svg_open(const Bounds& b) {
  const double w = b.max_x - b.min_x, h = b.max_y - b.min_y;
  const double pad = 0.05 * std::max(w, h);
  const double stroke = 0.004 * std::max(w, h);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(b.min_x - pad) << " "
      << format_number(-b.max_y - pad) << " " << format_number(w + 2 * pad) << " " << format_number(h + 2 * pad)
      << "\">\n";
  out << "<style>\n"
      << "  .face { fill: #dfe8f2; stroke: #334; stroke-width: " << format_number(stroke) << "; }\n"
      << "  .overlap { fill: #f2a7a0; fill-opacity: 0.7; }\n"
      << "  .cut { stroke: #c0392b; stroke-width: " << format_number(2 * stroke) << "; }\n"
      << "  .fold { stroke: #889; stroke-width: " << format_number(stroke) << "; stroke-dasharray: "
      << format_number(4 * stroke) << "; }\n"
      << "</style>\n";
  return out.str();
}

std::string polygon_element(const Polygon2& poly, bool overlapping, const std::string& id) {
  std::string out = "<polygon class=\"face" + std::string(overlapping ? " overlap" : "") + "\" data-id=\"" + id +
                    "\" points=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) out += (i ? " " : "") + point(poly[i]);
  return out + "\"/>\n";
}

std::string line_element(Vec2 p, Vec2 q, const char* cls) {
  return "<line class=\"" + std::string(cls) + "\" x1=\"" + format_number(p.x) + "\" y1=\"" + format_number(-p.y) +
         "\" x2=\"" + format_number(q.x) + "\" y2=\"" + format_number(-q.y) + "\"/>\n";
}

nlohmann::json vertices_json(const Polygon2& poly) {
  nlohmann::json out = nlohmann::json::array();
  for (Vec2 p : poly) out.push_back({rounded(p.x), rounded(p.y)});
  return out;
}

nlohmann::json overlaps_json(const OverlapReport& overlap) {
  nlohmann::json out = nlohmann::json::array();
  for (const OverlapPair& p : overlap.overlapping_pairs) out.push_back({{"a", p.a}, {"b", p.b}, {"area", rounded(p.area)}});
  return out;
}

}  // namespace

std::string edge_net_svg(const PolyhedronMesh& mesh, const PlanarLayout& layout, const OverlapReport& overlap) {
  Bounds b;
  for (const PlacedFace& f : layout.faces)
    for (Vec2 p : f.polygon) b.add(p);
  std::set<int> shaded;
  for (const OverlapPair& p : overlap.overlapping_pairs) shaded.insert({p.a, p.b});
  std::string out = svg_open(b);
  for (const PlacedFace& f : layout.faces) out += polygon_element(f.polygon, shaded.count(f.face), std::to_string(f.face));
  for (int e : layout.cutting.edges()) {
    const Edge& edge = mesh.edge(e);
    for (int f : edge.faces) {
      const auto& loop = mesh.face(f).loop;
      const auto& poly = layout.faces[f].polygon;
      const auto i0 = std::find(loop.begin(), loop.end(), edge.v0) - loop.begin();
      const auto i1 = std::find(loop.begin(), loop.end(), edge.v1) - loop.begin();
      out += line_element(poly[i0], poly[i1], "cut");
    }
  }
  return out + "</svg>\n";
}

std::string piece_net_svg(const std::vector<NetPiece>& pieces, const std::vector<NetGlue>& glues,
                          const OverlapReport& overlap) {
  Bounds b;
  for (const NetPiece& piece : pieces)
    for (Vec2 p : piece.polygon) b.add(p);
  std::set<int> shaded;
  for (const OverlapPair& p : overlap.overlapping_pairs) shaded.insert({p.a, p.b});
  std::string out = svg_open(b);
  for (std::size_t i = 0; i < pieces.size(); ++i)
    out += polygon_element(pieces[i].polygon, shaded.count(static_cast<int>(i)), std::to_string(i));
  for (const NetGlue& g : glues) out += line_element(g.p, g.q, "fold");
  return out + "</svg>\n";
}

nlohmann::json edge_net_json(const PlanarLayout& layout, const OverlapReport& overlap) {
  nlohmann::json faces = nlohmann::json::array();
  for (const PlacedFace& f : layout.faces) faces.push_back({{"face_id", f.face}, {"vertices", vertices_json(f.polygon)}});
  return {{"faces", faces},
          {"cut_edges", std::vector<int>(layout.cutting.edges().begin(), layout.cutting.edges().end())},
          {"overlaps", overlaps_json(overlap)}};
}

nlohmann::json general_net_json(const GeneralNet& net) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const NetPiece& p : net.pieces)
    pieces.push_back({{"face_id", p.face}, {"label", p.label}, {"vertices", vertices_json(p.polygon)}});
  nlohmann::json glues = nlohmann::json::array();
  for (const NetGlue& g : net.glues)
    glues.push_back({{"pieces", {g.piece_a, g.piece_b}}, {"segment", {{rounded(g.p.x), rounded(g.p.y)}, {rounded(g.q.x), rounded(g.q.y)}}}});
  return {{"faces", pieces},
          {"glues", glues},
          {"overlaps", overlaps_json(net.overlap)},
          {"band_width", rounded(net.band_width)},
          {"band_skew_deg", rounded(net.band_skew_deg)},
          {"cut_path", net.cut_path},
          {"band_edges", net.band_edges},
          {"cut_tip_edges", net.cut_tip_edges},
          {"area", rounded(net.area)},
          {"mesh_area", rounded(net.mesh_area)}};
}

nlohmann::json report_json(const SearchReport& r, bool include_timing) {
  auto cutting = [](const std::optional<Cutting>& c) -> nlohmann::json {
    if (!c) return nullptr;
    return std::vector<int>(c->edges().begin(), c->edges().end());
  };
  auto orbits = [](long n) -> nlohmann::json {
    if (n < 0) return nullptr;
    return n;
  };
  auto representatives = [](long n, const std::vector<Cutting>& reps) -> nlohmann::json {
    if (n < 0) return nullptr;
    nlohmann::json out = nlohmann::json::array();
    for (const Cutting& c : reps) out.push_back(std::vector<int>(c.edges().begin(), c.edges().end()));
    return out;
  };
  nlohmann::json expected = nullptr;
  if (!r.expected_total.empty()) {
    try {
      expected = std::stoull(r.expected_total);
    } catch (const std::exception&) {
      expected = r.expected_total;
    }
  }
  nlohmann::json out = {
      {"schema", "ununfold.search-report/1"},
      {"mesh", {{"vertices", r.vertices}, {"edges", r.edges}, {"faces", r.faces}, {"closed", r.closed}}},
      {"mode", std::string(to_string(r.mode))},
      {"verdict", r.verdict()},
      {"exhaustive", r.exhaustive},
      {"stopped_early", r.stopped_early},
      {"counts",
       {{"total_candidates", r.total_candidates},
        {"admissible", r.admissible},
        {"consistent", r.consistent},
        {"non_overlapping", r.non_overlapping}}},
      {"expected_total", expected},
      {"task_counts_match", r.task_counts_match},
      {"tasks", {{"total", r.tasks_total}, {"first", r.first_task}, {"done", r.tasks_done}, {"next", r.first_task + r.tasks_done}}},
      {"exemplars",
       {{"inadmissible", cutting(r.exemplars.inadmissible)},
        {"inconsistent", cutting(r.exemplars.inconsistent)},
        {"overlapping", cutting(r.exemplars.overlapping)},
        {"non_overlapping", cutting(r.exemplars.non_overlapping)}}},
      {"orbits",
       {{"consistent", orbits(r.consistent_orbits)},
        {"non_overlapping", orbits(r.non_overlapping_orbits)},
        {"consistent_representatives", representatives(r.consistent_orbits, r.consistent_representatives)},
        {"non_overlapping_representatives",
         representatives(r.non_overlapping_orbits, r.non_overlapping_representatives)}}},
      {"overlap_margin",
       {{"min_overlap_area", rounded(r.min_overlap_area)}, {"max_near_miss_area", rounded(r.max_near_miss_area)}}},
      {"hat_certification",
       {{"used", r.hats.used},
        {"hats", r.hats.hats},
        {"certified", r.hats.certified},
        {"full_checks", r.hats.full_checks},
        {"audits", r.hats.audits},
        {"audit_mismatches", r.hats.audit_mismatches},
        {"lemma_violations", r.hats.lemma_violations},
        {"all_hats_corner_to_corner", r.hats.all_hats_corner_to_corner},
        {"min_certificate_area", rounded(r.hats.min_certificate_area)}}},
      {"properties",
       {{"layouts_checked", r.properties.layouts_checked},
        {"max_isometry_error", rounded(r.properties.max_isometry_error)},
        {"max_area_error", rounded(r.properties.max_area_error)},
        {"cut_duplication_failures", r.properties.cut_duplication_failures},
        {"shared_edge_failures", r.properties.shared_edge_failures},
        {"gauss_bonnet_pruned", r.properties.gauss_bonnet_pruned},
        {"gauss_bonnet_violations", r.properties.gauss_bonnet_violations}}},
      {"funnel_ok", r.funnel_ok()},
  };
  if (include_timing) {
    const double rate = r.seconds > 0 ? static_cast<double>(r.total_candidates) / r.seconds : 0;
    out["timing"] = {{"seconds", rounded(r.seconds)}, {"candidates_per_second", rounded(rate)}};
  }
  return out;
}

std::string dump(const nlohmann::json& value) { return value.dump(2) + "\n"; }

}  // namespace ununfold::io
