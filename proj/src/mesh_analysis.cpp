#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ununfold/errors.hpp"
#include "ununfold/mesh.hpp"

namespace ununfold {

namespace {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool empty() const { return lo > hi; }
};

// Parameter range of the line p0 + t*dir inside a convex face, enlarged by tol.
Interval line_in_face(const PolyhedronMesh& mesh, const Face& face, Vec3 p0, Vec3 dir, double tol) {
  Interval iv;
  const std::size_t k = face.loop.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec3& a = mesh.position(face.loop[i]);
    const Vec3& b = mesh.position(face.loop[(i + 1) % k]);
    const Vec3 inward = cross(face.normal, b - a);
    const double scale = norm(inward);
    const double slope = dot(inward, dir);
    const double base = dot(inward, p0 - a) + tol * scale;
    if (std::abs(slope) < 1e-15 * scale) {
      if (base < 0) return {1, 0};
      continue;
    }
    const double t = -base / slope;
    if (slope > 0)
      iv.lo = std::max(iv.lo, t);
    else
      iv.hi = std::min(iv.hi, t);
  }
  return iv;
}

double point_segment_distance(Vec3 p, Vec3 a, Vec3 b) {
  const Vec3 ab = b - a;
  double t = dot(p - a, ab) / dot(ab, ab);
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

Polygon2 project_face(const PolyhedronMesh& mesh, const Face& face, Vec3 origin, Vec3 ex, Vec3 ey) {
  Polygon2 poly;
  for (int v : face.loop) {
    const Vec3 d = mesh.position(v) - origin;
    poly.push_back({dot(d, ex), dot(d, ey)});
  }
  if (signed_area(poly) < 0) std::reverse(poly.begin(), poly.end());
  return poly;
}

bool faces_violate(const PolyhedronMesh& mesh, const Face& f, const Face& g) {
  const double diam = mesh.diameter();
  const double tol = 1e-9 * diam;
  const double feature_tol = 1e-7 * diam;

  std::vector<int> shared;
  for (int v : f.loop)
    if (std::find(g.loop.begin(), g.loop.end(), v) != g.loop.end()) shared.push_back(v);

  const Vec3 dir_raw = cross(f.normal, g.normal);
  const double sin_angle = norm(dir_raw);
  if (sin_angle < 1e-10) {
    if (std::abs(dot(f.normal, mesh.position(g.loop[0])) - f.offset) > tol) return false;
    const Vec3 origin = mesh.position(f.loop[0]);
    const Vec3 ex = normalized(mesh.position(f.loop[1]) - origin);
    const Vec3 ey = cross(f.normal, ex);
    const Polygon2 pf = project_face(mesh, f, origin, ex, ey);
    const Polygon2 pg = project_face(mesh, g, origin, ex, ey);
    return convex_intersection_area(pf, pg) > tol * diam;
  }

  const Vec3 dir = dir_raw * (1.0 / sin_angle);
  const double s2 = sin_angle * sin_angle;
  const Vec3 p0 = (f.offset * cross(g.normal, dir_raw) + g.offset * cross(dir_raw, f.normal)) * (1.0 / s2);

  const Interval a = line_in_face(mesh, f, p0, dir, tol);
  const Interval b = line_in_face(mesh, g, p0, dir, tol);
  const Interval both{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (a.empty() || b.empty() || both.empty()) return false;

  const Vec3 q0 = p0 + both.lo * dir;
  const Vec3 q1 = p0 + both.hi * dir;
  for (int v : shared) {
    const Vec3& pv = mesh.position(v);
    if (norm(q0 - pv) <= feature_tol && norm(q1 - pv) <= feature_tol) return false;
  }
  for (std::size_t i = 0; i < shared.size(); ++i)
    for (std::size_t j = i + 1; j < shared.size(); ++j) {
      if (!mesh.edge_between(shared[i], shared[j])) continue;
      const Vec3& pa = mesh.position(shared[i]);
      const Vec3& pb = mesh.position(shared[j]);
      if (point_segment_distance(q0, pa, pb) <= feature_tol &&
          point_segment_distance(q1, pa, pb) <= feature_tol)
        return false;
    }
  return true;
}

}  // namespace

EmbeddingReport check_embedded(const PolyhedronMesh& mesh) {
  EmbeddingReport report;
  const int nf = mesh.face_count();
  const double slack = 1e-9 * mesh.diameter();
  std::vector<std::pair<Vec3, Vec3>> boxes;
  for (const Face& face : mesh.faces()) {
    Vec3 lo = mesh.position(face.loop[0]), hi = lo;
    for (int v : face.loop) {
      const Vec3& p = mesh.position(v);
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    boxes.emplace_back(lo, hi);
  }
  for (int f = 0; f < nf; ++f)
    for (int g = f + 1; g < nf; ++g) {
      const auto& [alo, ahi] = boxes[f];
      const auto& [blo, bhi] = boxes[g];
      if (alo.x > bhi.x + slack || blo.x > ahi.x + slack || alo.y > bhi.y + slack ||
          blo.y > ahi.y + slack || alo.z > bhi.z + slack || blo.z > ahi.z + slack)
        continue;
      if (faces_violate(mesh, mesh.face(f), mesh.face(g))) report.violations.push_back({f, g});
    }
  return report;
}

namespace {

class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const PolyhedronMesh& mesh) : mesh_(mesh), n_(mesh.vertex_count()) {
    len_tol_ = 1e-9 * std::max(1.0, mesh.diameter());
    adjacency_.assign(static_cast<std::size_t>(n_) * n_, -1.0);
    for (const Edge& e : mesh.edges()) {
      adjacency_[e.v0 * n_ + e.v1] = e.length;
      adjacency_[e.v1 * n_ + e.v0] = e.length;
    }
    for (int v = 0; v < n_; ++v) {
      std::vector<double> lens;
      for (int e : mesh.vertex_edges(v)) lens.push_back(mesh.edge(e).length);
      std::sort(lens.begin(), lens.end());
      signature_.push_back(std::move(lens));
    }
    // Visit vertices so that each one after the first touches an earlier one.
    std::vector<char> seen(n_, 0);
    for (int root = 0; root < n_; ++root) {
      if (seen[root]) continue;
      seen[root] = 1;
      order_.push_back(root);
      for (std::size_t i = order_.size() - 1; i < order_.size(); ++i)
        for (int e : mesh.vertex_edges(order_[i])) {
          const int w = mesh.edge(e).other(order_[i]);
          if (!seen[w]) {
            seen[w] = 1;
            order_.push_back(w);
          }
        }
    }
  }

  std::vector<VertexPermutation> run() {
    perm_.assign(n_, -1);
    used_.assign(n_, 0);
    extend(0);
    std::sort(found_.begin(), found_.end());
    return found_;
  }

 private:
  bool same_signature(int a, int b) const {
    if (mesh_.is_boundary_vertex(a) != mesh_.is_boundary_vertex(b)) return false;
    if (std::abs(mesh_.vertex_angle_sum(a) - mesh_.vertex_angle_sum(b)) > 1e-8) return false;
    const auto& sa = signature_[a];
    const auto& sb = signature_[b];
    if (sa.size() != sb.size()) return false;
    for (std::size_t i = 0; i < sa.size(); ++i)
      if (std::abs(sa[i] - sb[i]) > len_tol_) return false;
    return true;
  }

  bool compatible(int v, int image, std::size_t depth) const {
    for (std::size_t i = 0; i < depth; ++i) {
      const int u = order_[i];
      const double l1 = adjacency_[u * n_ + v];
      const double l2 = adjacency_[perm_[u] * n_ + image];
      if ((l1 < 0) != (l2 < 0)) return false;
      if (l1 >= 0 && std::abs(l1 - l2) > len_tol_) return false;
    }
    return true;
  }

  bool faces_match() const {
    for (const Face& face : mesh_.faces()) {
      const std::size_t k = face.loop.size();
      bool matched = false;
      for (int g : mesh_.vertex_faces(perm_[face.loop[0]])) {
        const Face& other = mesh_.face(g);
        if (other.loop.size() != k) continue;
        const auto start = std::find(other.loop.begin(), other.loop.end(), perm_[face.loop[0]]) - other.loop.begin();
        for (int dir : {1, -1}) {
          bool ok = true;
          for (std::size_t i = 0; i < k && ok; ++i) {
            const std::size_t j = (start + dir * static_cast<long>(i) + static_cast<long>(k) * 2) % k;
            ok = other.loop[j] == perm_[face.loop[i]] &&
                 std::abs(other.angles[j] - face.angles[i]) <= 1e-8;
          }
          if (ok) matched = true;
        }
        if (matched) break;
      }
      if (!matched) return false;
    }
    return true;
  }

  void extend(std::size_t depth) {
    if (depth == order_.size()) {
      if (faces_match()) found_.push_back(perm_);
      return;
    }
    const int v = order_[depth];
    for (int image = 0; image < n_; ++image) {
      if (used_[image] || !same_signature(v, image) || !compatible(v, image, depth)) continue;
      perm_[v] = image;
      used_[image] = 1;
      extend(depth + 1);
      used_[image] = 0;
      perm_[v] = -1;
    }
  }

  const PolyhedronMesh& mesh_;
  int n_;
  double len_tol_ = 0;
  std::vector<double> adjacency_;
  std::vector<std::vector<double>> signature_;
  std::vector<int> order_;
  VertexPermutation perm_;
  std::vector<char> used_;
  std::vector<VertexPermutation> found_;
};

}  // namespace

std::vector<VertexPermutation> symmetry_group(const PolyhedronMesh& mesh) {
  return AutomorphismSearch(mesh).run();
}

}  // namespace ununfold
