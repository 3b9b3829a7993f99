#include "ununfold/general_unfold.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <set>

#include "ununfold/errors.hpp"
#include "ununfold/hats.hpp"

namespace ununfold {

namespace {

// Same frame as the layout charts: origin at loop[0], x towards loop[1].
struct FaceFrame {
  Vec3 origin, ex, ey;
  Vec2 to2d(Vec3 p) const {
    const Vec3 d = p - origin;
    return {dot(d, ex), dot(d, ey)};
  }
  Vec3 to3d(Vec2 p) const { return origin + p.x * ex + p.y * ey; }
};

FaceFrame frame_of(const PolyhedronMesh& mesh, int f) {
  const Face& face = mesh.face(f);
  const Vec3 o = mesh.position(face.loop[0]);
  const Vec3 ex = normalized(mesh.position(face.loop[1]) - o);
  return {o, ex, cross(face.normal, ex)};
}

Polygon2 face_chart(const PolyhedronMesh& mesh, const FaceFrame& frame, int f) {
  Polygon2 out;
  for (int v : mesh.face(f).loop) out.push_back(frame.to2d(mesh.position(v)));
  return out;
}

struct ChartPiece {
  int face;
  std::string label;
  Polygon2 chart;
};

struct Link {
  int a, b;
  Vec3 p, q;  // shared segment in space
};

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  double t = len2 > 0 ? dot(p - a, d) / len2 : 0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * d));
}

bool on_one_side(const Polygon2& poly, Vec2 p, Vec2 q, double tol) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % n];
    if (point_segment_distance(p, a, b) <= tol && point_segment_distance(q, a, b) <= tol) return true;
  }
  return false;
}

// Places pieces breadth-first along the links (first link wins when the
// links contain a cycle). Returns false if some piece stays unplaced.
bool assemble(const std::vector<FaceFrame>& frames, const std::vector<ChartPiece>& pieces,
              const std::vector<Link>& links, const Rigid2& root, std::vector<NetPiece>& out,
              std::vector<NetGlue>& glues) {
  const std::size_t n = pieces.size();
  std::vector<std::vector<int>> adjacency(n);
  for (std::size_t i = 0; i < links.size(); ++i) {
    adjacency[links[i].a].push_back(static_cast<int>(i));
    adjacency[links[i].b].push_back(static_cast<int>(i));
  }
  std::vector<std::optional<Rigid2>> placed(n);
  placed[0] = root;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int li : adjacency[a]) {
      const Link& link = links[li];
      const int b = link.a == a ? link.b : link.a;
      if (placed[b]) continue;
      const FaceFrame& fa = frames[pieces[a].face];
      const FaceFrame& fb = frames[pieces[b].face];
      const Rigid2 into_a = Rigid2::matching(fb.to2d(link.p), fb.to2d(link.q), fa.to2d(link.p), fa.to2d(link.q));
      placed[b] = placed[a]->compose(into_a);
      queue.push_back(b);
    }
  }
  out.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (!placed[i]) return false;
    NetPiece piece{pieces[i].face, pieces[i].label, {}};
    for (Vec2 p : pieces[i].chart) piece.polygon.push_back(placed[i]->apply(p));
    out.push_back(std::move(piece));
  }
  glues.clear();
  for (const Link& link : links) {
    const FaceFrame& fa = frames[pieces[link.a].face];
    glues.push_back({link.a, link.b, placed[link.a]->apply(fa.to2d(link.p)), placed[link.a]->apply(fa.to2d(link.q))});
  }
  return true;
}

// ---- spiked tetrahedron --------------------------------------------------

struct BrimFace {
  int face;
  int ca, cb, mb, ma;  // loop order: bottom ca->cb, top mb->ma
  int bottom_edge;
  int spike_face;      // spike triangle on the top edge
};

struct HatShape {
  int tip;
  std::vector<BrimFace> brims;
  std::vector<int> spikes;     // spike faces
  std::vector<int> tip_edges;  // ascending
};

std::vector<HatShape> basic_hat_shapes(const PolyhedronMesh& mesh, const std::vector<HatPatch>& patches) {
  std::vector<HatShape> shapes;
  for (const HatPatch& hat : patches) {
    HatShape shape;
    shape.tip = hat.tip;
    auto is_corner = [&](int v) { return std::count(hat.corners.begin(), hat.corners.end(), v) > 0; };
    for (int f : hat.faces) {
      const auto& loop = mesh.face(f).loop;
      if (std::count(loop.begin(), loop.end(), hat.tip)) {
        shape.spikes.push_back(f);
        continue;
      }
      if (loop.size() != 4) throw Error(ErrorKind::NotASpikedSolid, "general unfolding needs basic hats");
      BrimFace brim{f, -1, -1, -1, -1, -1, -1};
      for (int k = 0; k < 4; ++k)
        if (is_corner(loop[k]) && is_corner(loop[(k + 1) % 4])) {
          brim.ca = loop[k];
          brim.cb = loop[(k + 1) % 4];
          brim.mb = loop[(k + 2) % 4];
          brim.ma = loop[(k + 3) % 4];
        }
      if (brim.ca < 0 || is_corner(brim.ma) || is_corner(brim.mb))
        throw Error(ErrorKind::NotASpikedSolid, "brim face without a corner-corner bottom");
      brim.bottom_edge = *mesh.edge_between(brim.ca, brim.cb);
      brim.spike_face = mesh.edge(*mesh.edge_between(brim.ma, brim.mb)).other_face(f);
      shape.brims.push_back(brim);
    }
    if (shape.brims.size() != 3 || shape.spikes.size() != 3)
      throw Error(ErrorKind::NotASpikedSolid, "hat is not a basic hat");
    for (int e : mesh.vertex_edges(hat.tip)) shape.tip_edges.push_back(e);
    std::sort(shape.tip_edges.begin(), shape.tip_edges.end());
    shapes.push_back(std::move(shape));
  }
  return shapes;
}

struct Band {
  Vec2 tl, tr, bl, br;  // chart of the band face
  Polygon2 left, middle, right;
};

std::optional<Band> cut_band(const Polygon2& chart, const std::array<Vec2, 4>& quad, double width_rel, double skew) {
  const auto [ca, cb, mb, ma] = quad;
  const double bottom = norm(cb - ca);
  const Vec2 u = (1.0 / bottom) * (cb - ca);
  const Vec2 up{-u.y, u.x};
  const double height = dot(ma - ca, up);
  const double w = width_rel * bottom;
  const Vec2 mid = 0.5 * (ma + mb);
  Band band;
  band.tl = mid - (0.5 * w) * u;
  band.tr = mid + (0.5 * w) * u;
  const Vec2 drop = (height * std::cos(skew) / std::sin(skew)) * u - height * up;
  band.bl = band.tl + drop;
  band.br = band.tr + drop;
  const double eps = 1e-9 * bottom;
  auto along = [&](Vec2 p) { return dot(p - ca, u); };
  if (along(band.tl) <= along(ma) + eps || along(band.tr) >= along(mb) - eps) return std::nullopt;
  if (along(band.bl) <= eps || along(band.br) >= bottom - eps) return std::nullopt;
  band.left = clip_half_plane(chart, band.bl, band.tl);
  band.right = clip_half_plane(chart, band.tr, band.br);
  band.middle = clip_half_plane(clip_half_plane(chart, band.tl, band.bl), band.br, band.tr);
  return band;
}

struct Config {
  std::array<int, 4> path;
  std::vector<int> band_choice;  // index into hat brims
  std::vector<int> tip_cut;      // index into tip_edges
};

enum class Attempt { Collision, Overlap, Success };

}  // namespace

GeneralNet general_unfold_spiked_tetrahedron(const PolyhedronMesh& mesh, double band_width, double band_skew_deg) {
  if (!(band_width > 0 && band_width < 1)) throw Error(ErrorKind::OutOfRange, "band width must lie in (0, 1)");
  if (!(band_skew_deg > 0 && band_skew_deg < 180)) throw Error(ErrorKind::OutOfRange, "band skew must lie in (0, 180)");
  const auto patches = infer_hat_patches(mesh);
  if (patches.size() != 4 || !mesh.is_closed())
    throw Error(ErrorKind::NotASpikedSolid, "expected a spiked tetrahedron (four hats)");
  const std::vector<HatShape> hats = basic_hat_shapes(mesh, patches);
  std::set<int> corner_set;
  for (const HatPatch& p : patches) corner_set.insert(p.corners.begin(), p.corners.end());
  if (corner_set.size() != 4) throw Error(ErrorKind::NotASpikedSolid, "hats do not share four corners");
  const std::vector<int> corners(corner_set.begin(), corner_set.end());

  std::vector<FaceFrame> frames;
  for (int f = 0; f < mesh.face_count(); ++f) frames.push_back(frame_of(mesh, f));
  const double skew = deg_to_rad(band_skew_deg);
  const double mesh_area = mesh.surface_area();
  const double tol = 1e-9 * mesh.diameter();

  GeneralNet best;
  best.band_width = band_width;
  best.band_skew_deg = band_skew_deg;
  best.mesh_area = mesh_area;

  auto attempt = [&](const Config& config, GeneralNet& net) -> Attempt {
    std::set<int> cut_edges;
    for (int i = 0; i < 3; ++i) cut_edges.insert(*mesh.edge_between(config.path[i], config.path[i + 1]));

    std::vector<ChartPiece> pieces;
    std::vector<Link> links;
    std::map<int, std::vector<int>> pieces_of_face;
    auto add_piece = [&](int face, std::string label, Polygon2 chart) {
      pieces_of_face[face].push_back(static_cast<int>(pieces.size()));
      pieces.push_back({face, std::move(label), std::move(chart)});
      return static_cast<int>(pieces.size()) - 1;
    };
    auto piece_along = [&](int face, Vec3 p, Vec3 q) -> int {
      for (int id : pieces_of_face[face])
        if (on_one_side(pieces[id].chart, frames[face].to2d(p), frames[face].to2d(q), tol)) return id;
      return -1;
    };

    struct BandInfo {
      int piece;
      Vec3 tl, tr, bl, br;
      int face;
    };
    std::vector<BandInfo> bands;
    for (std::size_t h = 0; h < hats.size(); ++h) {
      const HatShape& hat = hats[h];
      const std::string tag = "hat" + std::to_string(h) + ":";
      for (std::size_t b = 0; b < hat.brims.size(); ++b) {
        const BrimFace& brim = hat.brims[b];
        const Polygon2 chart = face_chart(mesh, frames[brim.face], brim.face);
        if (static_cast<int>(b) != config.band_choice[h]) {
          add_piece(brim.face, tag + "brim", chart);
          continue;
        }
        const FaceFrame& fr = frames[brim.face];
        const std::array<Vec2, 4> quad{fr.to2d(mesh.position(brim.ca)), fr.to2d(mesh.position(brim.cb)),
                                       fr.to2d(mesh.position(brim.mb)), fr.to2d(mesh.position(brim.ma))};
        const auto band = cut_band(chart, quad, band_width, skew);
        if (!band) return Attempt::Collision;
        add_piece(brim.face, tag + "brim-left", band->left);
        add_piece(brim.face, tag + "brim-right", band->right);
        const int mid = add_piece(brim.face, tag + "band", band->middle);
        bands.push_back({mid, fr.to3d(band->tl), fr.to3d(band->tr), fr.to3d(band->bl), fr.to3d(band->br), brim.face});
      }
      for (int s : hat.spikes) add_piece(s, tag + "spike", face_chart(mesh, frames[s], s));
    }

    auto link_edge = [&](int e, Vec3 p, Vec3 q) -> bool {
      const Edge& edge = mesh.edge(e);
      const int a = piece_along(edge.faces[0], p, q), b = piece_along(edge.faces[1], p, q);
      if (a < 0 || b < 0) return false;
      links.push_back({a, b, p, q});
      return true;
    };
    for (std::size_t h = 0; h < hats.size(); ++h) {
      const HatShape& hat = hats[h];
      // Legs inside the brim.
      for (std::size_t i = 0; i < hat.brims.size(); ++i)
        for (std::size_t j = i + 1; j < hat.brims.size(); ++j)
          for (int e : mesh.face(hat.brims[i].face).edges) {
            const Edge& edge = mesh.edge(e);
            if (edge.other_face(hat.brims[i].face) != hat.brims[j].face) continue;
            if (!link_edge(e, mesh.position(edge.v0), mesh.position(edge.v1))) return Attempt::Collision;
          }
      // Spike triangles around the tip, minus the chosen cut.
      for (std::size_t t = 0; t < hat.tip_edges.size(); ++t) {
        if (static_cast<int>(t) == config.tip_cut[h]) continue;
        const Edge& edge = mesh.edge(hat.tip_edges[t]);
        link_edge(edge.id, mesh.position(edge.v0), mesh.position(edge.v1));
      }
    }
    // Uncut tetrahedron edges.
    for (std::size_t i = 0; i < corners.size(); ++i)
      for (std::size_t j = i + 1; j < corners.size(); ++j) {
        const int e = *mesh.edge_between(corners[i], corners[j]);
        if (cut_edges.count(e)) continue;
        if (!link_edge(e, mesh.position(corners[i]), mesh.position(corners[j]))) return Attempt::Collision;
      }
    // Bands: spike on the inner end, the far copy of the edge on the outer end.
    for (std::size_t h = 0; h < hats.size(); ++h) {
      const BandInfo& band = bands[h];
      const BrimFace& brim = hats[h].brims[config.band_choice[h]];
      const int spike = piece_along(brim.spike_face, band.tl, band.tr);
      if (spike < 0) return Attempt::Collision;
      links.push_back({band.piece, spike, band.tl, band.tr});
      const int across = mesh.edge(brim.bottom_edge).other_face(brim.face);
      const int host = piece_along(across, band.bl, band.br);
      if (host < 0) return Attempt::Collision;  // lands where another band was removed
      links.push_back({band.piece, host, band.bl, band.br});
    }

    net.pieces.clear();
    net.glues.clear();
    net.pieces_connected =
        links.size() + 1 == pieces.size() && assemble(frames, pieces, links, Rigid2{}, net.pieces, net.glues);
    if (!net.pieces_connected) return Attempt::Collision;
    std::vector<Polygon2> polys;
    net.area = 0;
    for (const NetPiece& p : net.pieces) {
      polys.push_back(p.polygon);
      net.area += signed_area(p.polygon);
    }
    net.overlap = check_overlap(polys, mesh_area);
    net.cut_path.assign(config.path.begin(), config.path.end());
    net.band_edges.clear();
    net.cut_tip_edges.clear();
    for (std::size_t h = 0; h < hats.size(); ++h) {
      net.band_edges.push_back(hats[h].brims[config.band_choice[h]].bottom_edge);
      net.cut_tip_edges.push_back(hats[h].tip_edges[config.tip_cut[h]]);
    }
    return net.overlap.is_overlapping ? Attempt::Overlap : Attempt::Success;
  };

  std::array<int, 4> perm{corners[0], corners[1], corners[2], corners[3]};
  std::size_t tried = 0, colliding = 0;
  do {
    if (perm[0] > perm[3]) continue;
    std::set<int> cut_edges;
    for (int i = 0; i < 3; ++i) cut_edges.insert(*mesh.edge_between(perm[i], perm[i + 1]));
    std::vector<std::vector<int>> band_options(hats.size());
    for (std::size_t h = 0; h < hats.size(); ++h)
      for (std::size_t b = 0; b < hats[h].brims.size(); ++b)
        if (cut_edges.count(hats[h].brims[b].bottom_edge)) band_options[h].push_back(static_cast<int>(b));

    Config config{perm, std::vector<int>(hats.size()), std::vector<int>(hats.size())};
    std::vector<std::size_t> band_index(hats.size(), 0);
    for (;;) {
      for (std::size_t h = 0; h < hats.size(); ++h) config.band_choice[h] = band_options[h][band_index[h]];
      const std::size_t tip_combos = 81;
      for (std::size_t tc = 0; tc < tip_combos; ++tc) {
        std::size_t rest = tc;
        for (std::size_t h = hats.size(); h-- > 0;) {
          config.tip_cut[h] = static_cast<int>(rest % 3);
          rest /= 3;
        }
        ++tried;
        GeneralNet net = best;
        const Attempt result = attempt(config, net);
        if (result == Attempt::Collision) {
          ++colliding;
          continue;
        }
        if (result == Attempt::Success) {
          net.configurations_tried = tried;
          net.configurations_colliding = colliding;
          return net;
        }
      }
      std::size_t h = hats.size();
      while (h-- > 0) {
        if (++band_index[h] < band_options[h].size()) break;
        band_index[h] = 0;
      }
      if (h == static_cast<std::size_t>(-1)) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (colliding == tried)
    throw Error(ErrorKind::BandCollision, "every band placement collides with another band or leaves its trapezoid (" +
                                              std::to_string(tried) + " configurations)");
  throw Error(ErrorKind::NetOverlap, "no overlap-free configuration among " + std::to_string(tried - colliding) +
                                         " collision-free ones");
}

// ---- fan -----------------------------------------------------------------

int fan_center(const PolyhedronMesh& mesh) {
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (!mesh.is_boundary_vertex(v) && static_cast<int>(mesh.vertex_faces(v).size()) == mesh.face_count()) return v;
  return -1;
}

double overlap_wedge_angle(std::span<const Polygon2> pieces, Vec2 apex, double total_area) {
  double scale = 0;
  for (const auto& poly : pieces)
    for (Vec2 p : poly) scale = std::max(scale, norm(p - apex));
  const double tol = 1e-9 * std::max(scale, 1.0);
  double sum = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      const Polygon2 common = clip_convex(pieces[i], pieces[j]);
      if (common.size() < 3 || signed_area(common) <= 1e-9 * total_area) continue;
      bool at_apex = false;
      std::vector<Vec2> rays;
      for (Vec2 p : common) {
        if (norm(p - apex) <= tol) {
          at_apex = true;
        } else {
          rays.push_back(p - apex);
        }
      }
      if (!at_apex || rays.empty()) continue;
      // The intersection is convex with a corner at the apex, so its other
      // vertices lie within a cone narrower than a half turn.
      const Vec2 ref = rays.front();
      double lo = 0, hi = 0;
      for (Vec2 r : rays) {
        const double a = std::atan2(cross(ref, r), dot(ref, r));
        lo = std::min(lo, a);
        hi = std::max(hi, a);
      }
      sum += hi - lo;
    }
  return rad_to_deg(sum);
}

FanCutUnfolding unfold_fan_single_general_cut(const PolyhedronMesh& fan, double cut_direction_deg) {
  const int v = fan_center(fan);
  if (v < 0) throw Error(ErrorKind::InvalidInput, "mesh is not a fan around one interior vertex");
  const auto order = fan.vertex_faces(v);
  const int n = static_cast<int>(order.size());

  // Spoke shared by consecutive faces, as the rim vertex on it.
  std::vector<int> start_rim(n), end_rim(n);
  for (int i = 0; i < n; ++i) {
    const int f = order[i], g = order[(i + 1) % n];
    for (int w : fan.face(f).loop) {
      if (w == v) continue;
      const auto& other = fan.face(g).loop;
      if (std::count(other.begin(), other.end(), w)) {
        end_rim[i] = w;
        start_rim[(i + 1) % n] = w;
      }
    }
  }
  std::vector<double> start_angle(n + 1, 0.0);
  for (int i = 0; i < n; ++i) start_angle[i + 1] = start_angle[i] + fan.face_angle(order[i], v);
  const double total = start_angle[n];
  double theta = std::fmod(deg_to_rad(cut_direction_deg), total);
  if (theta < 0) theta += total;

  int j = static_cast<int>(std::upper_bound(start_angle.begin(), start_angle.end(), theta) - start_angle.begin()) - 1;
  j = std::clamp(j, 0, n - 1);
  const double offset = theta - start_angle[j];
  const bool on_spoke = offset <= 1e-12;

  std::vector<FaceFrame> frames;
  for (int f = 0; f < fan.face_count(); ++f) frames.push_back(frame_of(fan, f));
  const Vec3 center = fan.position(v);

  std::vector<ChartPiece> pieces;
  std::vector<Link> links;
  Vec3 cut_end;
  auto chart_of = [&](int f) { return face_chart(fan, frames[f], f); };
  const int fj = order[j];
  std::optional<Polygon2> tail;
  if (on_spoke) {
    cut_end = fan.position(start_rim[j]);
    pieces.push_back({fj, "face", chart_of(fj)});
  } else {
    const FaceFrame& fr = frames[fj];
    const Vec2 c = fr.to2d(center), s = fr.to2d(fan.position(start_rim[j])), e = fr.to2d(fan.position(end_rim[j]));
    const Vec2 ds = s - c;
    const double turn = cross(ds, e - c) > 0 ? offset : -offset;
    const Vec2 dir{std::cos(turn) * ds.x - std::sin(turn) * ds.y, std::sin(turn) * ds.x + std::cos(turn) * ds.y};
    // Ray c + t*dir meets the rim segment s + u*(e - s).
    const Vec2 rim = e - s;
    const double u = cross(c - s, dir) / cross(rim, dir);
    const Vec2 x = s + u * rim;
    cut_end = fr.to3d(x);
    Polygon2 after{c, x, e}, before{c, s, x};
    if (signed_area(after) < 0) std::reverse(after.begin(), after.end());
    if (signed_area(before) < 0) std::reverse(before.begin(), before.end());
    pieces.push_back({fj, "fragment", after});
    tail = before;
  }
  for (int k = 1; k < n; ++k) {
    const int i = (j + k) % n;
    pieces.push_back({order[i], "face", chart_of(order[i])});
    links.push_back({static_cast<int>(pieces.size()) - 2, static_cast<int>(pieces.size()) - 1, center,
                     fan.position(start_rim[i])});
  }
  if (tail) {
    pieces.push_back({fj, "fragment", *tail});
    links.push_back({static_cast<int>(pieces.size()) - 2, static_cast<int>(pieces.size()) - 1, center,
                     fan.position(start_rim[j])});
  }

  // Centre at the origin with the cut leaving along +x.
  const FaceFrame& f0 = frames[fj];
  const Rigid2 root = Rigid2::matching(f0.to2d(center), f0.to2d(cut_end), {0, 0},
                                       {norm(cut_end - center), 0});
  FanCutUnfolding out;
  std::vector<NetGlue> glues;
  assemble(frames, pieces, links, root, out.pieces, glues);
  std::vector<Polygon2> polys;
  for (const NetPiece& p : out.pieces) polys.push_back(p.polygon);
  out.overlap = check_overlap(polys, fan.surface_area());
  out.total_angle_deg = rad_to_deg(total);
  out.wedge_angle_deg = overlap_wedge_angle(polys, {0, 0}, fan.surface_area());
  return out;
}

}  // namespace ununfold
