#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace ununfold {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Vec3 {
  double x = 0, y = 0, z = 0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend Vec3 operator*(Vec3 a, double s) { return s * a; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) { return a * (1.0 / norm(a)); }

struct Vec2 {
  double x = 0, y = 0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return s * a; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Orientation-preserving planar isometry p -> R p + t, R = [[c, -s], [s, c]].
struct Rigid2 {
  double c = 1, s = 0, tx = 0, ty = 0;

  Vec2 apply(Vec2 p) const { return {c * p.x - s * p.y + tx, s * p.x + c * p.y + ty}; }

  /// (*this) after `inner`: p -> this(inner(p)).
  Rigid2 compose(const Rigid2& inner) const {
    const Vec2 t = apply({inner.tx, inner.ty});
    return {c * inner.c - s * inner.s, s * inner.c + c * inner.s, t.x, t.y};
  }

  Rigid2 inverse() const {
    return {c, -s, -(c * tx + s * ty), s * tx - c * ty};
  }

  /// The unique rigid motion sending segment (a0,a1) onto (b0,b1) when the
  /// segments have equal length; for unequal lengths it matches b0 and the
  /// direction of b1 - b0.
  static Rigid2 matching(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);
};

using Polygon2 = std::vector<Vec2>;

/// Signed shoelace area (positive for counterclockwise loops).
double signed_area(std::span<const Vec2> poly);

/// Intersection of two convex counterclockwise polygons (Sutherland-Hodgman).
Polygon2 clip_convex(std::span<const Vec2> subject, std::span<const Vec2> clip);

double convex_intersection_area(std::span<const Vec2> a, std::span<const Vec2> b);

/// Keeps the part of a convex polygon on the left of the directed line p->q.
Polygon2 clip_half_plane(std::span<const Vec2> poly, Vec2 p, Vec2 q);

}  // namespace ununfold
