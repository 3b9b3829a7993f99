#include "ununfold/geometry.hpp"

namespace ununfold {

Rigid2 Rigid2::matching(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  const Vec2 da = a1 - a0;
  const Vec2 db = b1 - b0;
  const double la = norm(da);
  const double lb = norm(db);
  const double ux = da.x / la, uy = da.y / la;
  const double wx = db.x / lb, wy = db.y / lb;
  Rigid2 r;
  r.c = ux * wx + uy * wy;
  r.s = ux * wy - uy * wx;
  const Vec2 moved = r.apply(a0);
  r.tx = b0.x - moved.x;
  r.ty = b0.y - moved.y;
  return r;
}

double signed_area(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  double twice = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % n];
    twice += a.x * b.y - a.y * b.x;
  }
  return 0.5 * twice;
}

Polygon2 clip_half_plane(std::span<const Vec2> poly, Vec2 p, Vec2 q) {
  Polygon2 out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  const Vec2 d = q - p;
  auto side = [&](Vec2 v) { return cross(d, v - p); };
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 cur = poly[i];
    const Vec2 nxt = poly[(i + 1) % n];
    const double sc = side(cur);
    const double sn = side(nxt);
    if (sc >= 0) out.push_back(cur);
    if ((sc >= 0) != (sn >= 0)) {
      const double t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

Polygon2 clip_convex(std::span<const Vec2> subject, std::span<const Vec2> clip) {
  Polygon2 result(subject.begin(), subject.end());
  const std::size_t m = clip.size();
  for (std::size_t i = 0; i < m && !result.empty(); ++i) {
    result = clip_half_plane(result, clip[i], clip[(i + 1) % m]);
  }
  return result;
}

double convex_intersection_area(std::span<const Vec2> a, std::span<const Vec2> b) {
  const Polygon2 poly = clip_convex(a, b);
  if (poly.size() < 3) return 0.0;
  const double area = signed_area(poly);
  return area > 0 ? area : 0.0;
}

}  // namespace ununfold
