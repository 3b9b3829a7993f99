#include "ununfold/unfold.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "ununfold/errors.hpp"
#include "ununfold/kernels.hpp"

namespace ununfold {

Unfolder::Unfolder(const PolyhedronMesh& mesh) : mesh_(&mesh) {
  const int nf = mesh.face_count();
  charts_.resize(nf);
  chart_x_.resize(nf);
  chart_y_.resize(nf);
  for (const Face& face : mesh.faces()) {
    const Vec3 origin = mesh.position(face.loop[0]);
    const Vec3 ex = normalized(mesh.position(face.loop[1]) - origin);
    const Vec3 ey = cross(face.normal, ex);
    for (int v : face.loop) {
      const Vec3 d = mesh.position(v) - origin;
      const Vec2 p{dot(d, ex), dot(d, ey)};
      charts_[face.id].push_back(p);
      chart_x_[face.id].push_back(p.x);
      chart_y_[face.id].push_back(p.y);
    }
  }
  hinge_.resize(mesh.edge_count());
  neighbors_.resize(nf);
  for (const Edge& e : mesh.edges()) {
    if (e.is_boundary()) continue;
    const int f = e.faces[0], g = e.faces[1];
    auto corner = [&](int face, int v) {
      const auto& loop = mesh.face(face).loop;
      return charts_[face][std::find(loop.begin(), loop.end(), v) - loop.begin()];
    };
    hinge_[e.id] = Rigid2::matching(corner(g, e.v0), corner(g, e.v1), corner(f, e.v0), corner(f, e.v1));
    neighbors_[f].emplace_back(g, e.id);
    neighbors_[g].emplace_back(f, e.id);
  }
  for (auto& list : neighbors_) std::sort(list.begin(), list.end());
}

Rigid2 Unfolder::hinge(int edge, int from, int to) const {
  const Edge& e = mesh_->edge(edge);
  if (from == e.faces[1] && to == e.faces[0]) return hinge_[edge];
  return hinge_[edge].inverse();
}

PlanarLayout Unfolder::layout(const Cutting& cutting) const {
  const PolyhedronMesh& mesh = *mesh_;
  const int nf = mesh.face_count();
  std::vector<char> cut(mesh.edge_count(), 0);
  for (int e : cutting.edges()) {
    if (e < 0 || e >= mesh.edge_count()) throw Error(ErrorKind::InvalidInput, "edge id out of range");
    if (mesh.edge(e).is_boundary())
      throw Error(ErrorKind::BoundaryEdgeInCutting, "edge " + std::to_string(e) + " is on the boundary");
    cut[e] = 1;
  }

  PlanarLayout out;
  out.cutting = cutting;
  out.root = 0;
  out.faces.resize(nf);
  out.total_area = mesh.surface_area();
  out.tolerance = 1e-6 * mesh.diameter();

  const auto& k = kernels::active_kernels();
  std::vector<char> placed(nf, 0);
  std::vector<char> tree_edge(mesh.edge_count(), 0);
  auto place = [&](int f, int parent, int edge, const Rigid2& t) {
    PlacedFace& pf = out.faces[f];
    pf.face = f;
    pf.parent = parent;
    pf.via_edge = edge;
    pf.transform = t;
    const std::size_t n = charts_[f].size();
    std::vector<double> xs(n), ys(n);
    k.transform_points(t, chart_x_[f].data(), chart_y_[f].data(), n, xs.data(), ys.data());
    pf.polygon.resize(n);
    for (std::size_t i = 0; i < n; ++i) pf.polygon[i] = {xs[i], ys[i]};
    placed[f] = 1;
    out.order.push_back(f);
  };

  place(out.root, -1, -1, Rigid2{});
  for (std::size_t head = 0; head < out.order.size(); ++head) {
    const int f = out.order[head];
    for (const auto& [g, e] : neighbors_[f]) {
      if (cut[e] || placed[g]) continue;
      place(g, f, e, out.faces[f].transform.compose(hinge(e, g, f)));
      tree_edge[e] = 1;
      out.tree_edges.push_back(e);
    }
  }
  if (static_cast<int>(out.order.size()) != nf)
    throw Error(ErrorKind::InadmissibleCutting, "cutting disconnects the surface");

  auto corner = [&](int f, int v) {
    const auto& loop = mesh.face(f).loop;
    return out.faces[f].polygon[std::find(loop.begin(), loop.end(), v) - loop.begin()];
  };
  for (const Edge& e : mesh.edges()) {
    if (e.is_boundary() || cut[e.id] || tree_edge[e.id]) continue;
    const double d0 = norm(corner(e.faces[0], e.v0) - corner(e.faces[1], e.v0));
    const double d1 = norm(corner(e.faces[0], e.v1) - corner(e.faces[1], e.v1));
    const double d = std::max(d0, d1);
    out.closures.push_back({e.id, d});
    out.max_discrepancy = std::max(out.max_discrepancy, d);
  }
  out.consistency_ok = out.max_discrepancy <= out.tolerance;
  return out;
}

PlanarLayout layout(const PolyhedronMesh& mesh, const Cutting& cutting) { return Unfolder(mesh).layout(cutting); }

LayoutAudit audit_layout(const PolyhedronMesh& mesh, const PlanarLayout& layout) {
  LayoutAudit audit;
  double placed_area = 0;
  for (const PlacedFace& pf : layout.faces) {
    const Face& face = mesh.face(pf.face);
    const std::size_t n = face.loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double want = mesh.edge(face.edges[i]).length;
      const double got = norm(pf.polygon[(i + 1) % n] - pf.polygon[i]);
      audit.max_isometry_error = std::max(audit.max_isometry_error, std::abs(got - want) / want);
    }
    placed_area += signed_area(pf.polygon);
  }
  audit.area_error = std::abs(placed_area - layout.total_area) / layout.total_area;

  auto segment = [&](int f, const Edge& e) {
    const auto& loop = mesh.face(f).loop;
    const auto& poly = layout.faces[f].polygon;
    const auto i0 = std::find(loop.begin(), loop.end(), e.v0) - loop.begin();
    const auto i1 = std::find(loop.begin(), loop.end(), e.v1) - loop.begin();
    return std::pair{poly[i0], poly[i1]};
  };
  const double tol = layout.tolerance;
  for (const Edge& e : mesh.edges()) {
    if (e.is_boundary()) continue;
    const auto [a0, a1] = segment(e.faces[0], e);
    const auto [b0, b1] = segment(e.faces[1], e);
    if (layout.cutting.contains(e.id)) {
      const double la = norm(a1 - a0), lb = norm(b1 - b0);
      if (std::abs(la - lb) > 1e-9 * e.length) audit.cut_edges_duplicated = false;
    } else if (std::max(norm(a0 - b0), norm(a1 - b1)) > tol) {
      audit.uncut_edges_shared = false;
    }
  }
  return audit;
}

namespace {

struct PieceSoA {
  std::vector<double> xs, ys;
  kernels::Box box;
};

bool separated_on_axes(const kernels::KernelTable& k, const PieceSoA& a, const PieceSoA& b, const PieceSoA& axes_of) {
  const std::size_t n = axes_of.xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double ax = -(axes_of.ys[j] - axes_of.ys[i]);
    const double ay = axes_of.xs[j] - axes_of.xs[i];
    double alo, ahi, blo, bhi;
    k.project_extent(ax, ay, a.xs.data(), a.ys.data(), a.xs.size(), &alo, &ahi);
    k.project_extent(ax, ay, b.xs.data(), b.ys.data(), b.xs.size(), &blo, &bhi);
    if (ahi <= blo || bhi <= alo) return true;
  }
  return false;
}

}  // namespace

OverlapReport check_overlap(std::span<const Polygon2> pieces, double total_area, const OverlapOptions& options,
                            std::span<const std::pair<int, int>> priority) {
  const auto& k = kernels::active_kernels();
  const int n = static_cast<int>(pieces.size());
  OverlapReport report;
  report.threshold = options.area_rel * total_area;

  std::vector<PieceSoA> soa(n);
  std::vector<double> min_x(n), min_y(n), max_x(n), max_y(n);
  for (int i = 0; i < n; ++i) {
    PieceSoA& s = soa[i];
    for (const Vec2& p : pieces[i]) {
      s.xs.push_back(p.x);
      s.ys.push_back(p.y);
    }
    s.box = {*std::min_element(s.xs.begin(), s.xs.end()), *std::min_element(s.ys.begin(), s.ys.end()),
             *std::max_element(s.xs.begin(), s.xs.end()), *std::max_element(s.ys.begin(), s.ys.end())};
    min_x[i] = s.box.min_x;
    min_y[i] = s.box.min_y;
    max_x[i] = s.box.max_x;
    max_y[i] = s.box.max_y;
  }

  bool done = false;
  auto test_pair = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    if (separated_on_axes(k, soa[a], soa[b], soa[a]) || separated_on_axes(k, soa[a], soa[b], soa[b])) return;
    const double area = convex_intersection_area(pieces[a], pieces[b]);
    report.max_area = std::max(report.max_area, area);
    if (area > report.threshold) {
      report.overlapping_pairs.push_back({a, b, area});
      report.is_overlapping = true;
      if (options.stop_at_first) done = true;
    }
  };

  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : priority) {
    if (a > b) std::swap(a, b);
    if (a == b || !seen.insert({a, b}).second) continue;
    const kernels::Box& q = soa[a].box;
    std::uint8_t hit = 0;
    k.box_overlaps(q, &min_x[b], &min_y[b], &max_x[b], &max_y[b], 1, 0.0, &hit);
    if (hit) test_pair(a, b);
    if (done) break;
  }

  std::vector<std::uint8_t> hits(n);
  for (int a = 0; a < n && !done; ++a) {
    const int rest = n - a - 1;
    if (rest <= 0) break;
    k.box_overlaps(soa[a].box, &min_x[a + 1], &min_y[a + 1], &max_x[a + 1], &max_y[a + 1], rest, 0.0, hits.data());
    for (int j = 0; j < rest && !done; ++j) {
      if (!hits[j]) continue;
      const int b = a + 1 + j;
      if (!seen.empty() && seen.count({a, b})) continue;
      test_pair(a, b);
    }
  }
  std::sort(report.overlapping_pairs.begin(), report.overlapping_pairs.end(),
            [](const OverlapPair& x, const OverlapPair& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  return report;
}

OverlapReport check_overlap(const PlanarLayout& layout, const OverlapOptions& options) {
  if (!layout.consistency_ok)
    throw Error(ErrorKind::InconsistentLayout, "layout does not close up; cannot test overlap");
  std::vector<Polygon2> pieces;
  pieces.reserve(layout.faces.size());
  for (const PlacedFace& pf : layout.faces) pieces.push_back(pf.polygon);
  return check_overlap(pieces, layout.total_area, options);
}

EdgeUnfolding unfold_edges(const PolyhedronMesh& mesh, const Cutting& cutting) {
  EdgeUnfolding result;
  result.layout = layout(mesh, cutting);
  result.overlap = check_overlap(result.layout);
  return result;
}

std::vector<std::pair<int, int>> vertex_sharing_pairs(const PolyhedronMesh& mesh) {
  std::set<std::pair<int, int>> pairs;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const auto fs = mesh.vertex_faces(v);
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j) pairs.insert(std::minmax(fs[i], fs[j]));
  }
  return {pairs.begin(), pairs.end()};
}

}  // namespace ununfold
