#include "ununfold/constructions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <type_traits>

#include "ununfold/errors.hpp"

namespace ununfold {

namespace {

struct HatTemplate {
  std::vector<Vec3> positions;  // corners 0..2, middles 3..5, tip 6
  std::vector<std::vector<int>> faces;
  double side = 0;
};

void orient_away_from(std::vector<int>& loop, const std::vector<Vec3>& pos, Vec3 reference) {
  Vec3 n, centroid;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vec3& a = pos[loop[i]];
    const Vec3& b = pos[loop[(i + 1) % loop.size()]];
    n = n + cross(a, b);
    centroid = centroid + a;
  }
  centroid = centroid * (1.0 / static_cast<double>(loop.size()));
  if (dot(n, centroid - reference) < 0) std::reverse(loop.begin(), loop.end());
}

Vec3 on_circle(double radius, double angle_deg, double z) {
  const double a = deg_to_rad(angle_deg);
  return {radius * std::cos(a), radius * std::sin(a), z};
}

double corner_angle_deg(int i) { return 90.0 + 120.0 * i; }

void check_range(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::OutOfRange, what);
}

HatTemplate basic_template(const BasicHatParams& p, const HatBuildOptions& options) {
  const ConstraintReport report = validate_hat(p);
  const double brim = basic_hat_brim_height(p);
  const bool flat_ok = options.allow_flat_brim && std::abs(p.beta_deg - 30.0) < 1e-12;
  if (!report.realizable && !flat_ok)
    throw Error(ErrorKind::DegenerateRealization, "basic hat has a non-positive brim or spike height");
  HatTemplate t;
  t.side = p.ell;
  const double top = flat_ok ? 0.0 : brim;
  for (int i = 0; i < 3; ++i) t.positions.push_back(on_circle(p.ell / std::sqrt(3.0), corner_angle_deg(i), 0));
  for (int i = 0; i < 3; ++i) t.positions.push_back(on_circle(1 / std::sqrt(3.0), corner_angle_deg(i), top));
  t.positions.push_back({0, 0, top + hat_spike_height(p.alpha_deg)});
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    t.faces.push_back({i, j, 3 + j, 3 + i});
  }
  for (int i = 0; i < 3; ++i) t.faces.push_back({3 + i, 3 + (i + 1) % 3, 6});
  return t;
}

HatTemplate triangulated_template(const TriHatParams& p) {
  const ConstraintReport report = validate_hat(p);
  if (!report.realizable)
    throw Error(ErrorKind::DegenerateRealization, "triangulated hat has a non-positive brim or spike height");
  HatTemplate t;
  const double b = p.boundary_side();
  t.side = b;
  const double brim = triangulated_hat_brim_height(p);
  for (int i = 0; i < 3; ++i) t.positions.push_back(on_circle(b / std::sqrt(3.0), corner_angle_deg(i), 0));
  // Spike base rotated 60 degrees: middle i faces boundary edge (c_i, c_{i+1}).
  for (int i = 0; i < 3; ++i)
    t.positions.push_back(on_circle(1 / std::sqrt(3.0), corner_angle_deg(i) + 60.0, brim));
  t.positions.push_back({0, 0, brim + hat_spike_height(p.alpha_deg)});
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    t.faces.push_back({i, j, 3 + i});
    t.faces.push_back({3 + i, j, 3 + j});
  }
  for (int i = 0; i < 3; ++i) t.faces.push_back({3 + i, 3 + (i + 1) % 3, 6});
  return t;
}

HatTemplate make_template(const HatParams& params, const HatBuildOptions& options) {
  HatTemplate t = std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BasicHatParams>)
          return basic_template(p, options);
        else
          return triangulated_template(p);
      },
      params);
  const Vec3 below{0, 0, -10 * t.side};
  for (auto& loop : t.faces) orient_away_from(loop, t.positions, below);
  return t;
}

// Glues one hat per face of a convex solid whose faces are equilateral
// triangles of side template.side; corner identification is by index.
PolyhedronMesh glue_hats(const HatTemplate& hat, const std::vector<Vec3>& corners,
                         std::vector<std::vector<int>> solid_faces) {
  std::vector<Vec3> positions = corners;
  std::vector<std::vector<int>> faces;
  const Vec3 center{0, 0, 0};
  for (auto& tri : solid_faces) {
    orient_away_from(tri, corners, center);
    const Vec3 a = corners[tri[0]], b = corners[tri[1]], c = corners[tri[2]];
    const Vec3 centroid = (a + b + c) * (1.0 / 3.0);
    const Vec3 ez = normalized(cross(b - a, c - a));
    const Vec3 ey = normalized(a - centroid);
    const Vec3 ex = cross(ey, ez);
    auto place = [&](const Vec3& p) { return centroid + p.x * ex + p.y * ey + p.z * ez; };

    std::array<int, 7> ids{};
    for (int i = 0; i < 3; ++i) {
      ids[i] = tri[i];
      if (norm(place(hat.positions[i]) - corners[tri[i]]) > 1e-9 * hat.side)
        throw Error(ErrorKind::InvalidInput, "hat corners do not match the guide solid");
    }
    for (int i = 3; i < 7; ++i) {
      ids[i] = static_cast<int>(positions.size());
      positions.push_back(place(hat.positions[i]));
    }
    for (const auto& loop : hat.faces) {
      std::vector<int> mapped;
      for (int v : loop) mapped.push_back(ids[v]);
      faces.push_back(std::move(mapped));
    }
  }
  return PolyhedronMesh::build(std::move(positions), std::move(faces));
}

}  // namespace

double TriHatParams::boundary_side() const {
  return std::cos(deg_to_rad(beta_deg)) / std::sin(deg_to_rad(gamma_deg / 2));
}

double hat_spike_height(double alpha_deg) {
  const double leg = 1.0 / (2 * std::cos(deg_to_rad(alpha_deg)));
  const double sq = leg * leg - 1.0 / 3.0;
  return sq > 0 ? std::sqrt(sq) : 0.0;
}

double basic_hat_brim_height(const BasicHatParams& p) {
  const double leg = (p.ell - 1) / (2 * std::cos(deg_to_rad(p.beta_deg)));
  const double sq = leg * leg - (p.ell - 1) * (p.ell - 1) / 3.0;
  return sq > 0 ? std::sqrt(sq) : 0.0;
}

double triangulated_hat_brim_height(const TriHatParams& p) {
  const double leg = 1.0 / (2 * std::sin(deg_to_rad(p.gamma_deg / 2)));
  const double b = p.boundary_side();
  const double d2 = (b * b + 1 - b) / 3.0;
  const double sq = leg * leg - d2;
  return sq > 0 ? std::sqrt(sq) : 0.0;
}

ConstraintReport validate_hat(const BasicHatParams& p) {
  check_range(std::isfinite(p.alpha_deg) && p.alpha_deg >= 30 && p.alpha_deg < 90, "alpha must lie in [30, 90)");
  check_range(std::isfinite(p.beta_deg) && p.beta_deg >= 30 && p.beta_deg < 90, "beta must lie in [30, 90)");
  check_range(std::isfinite(p.ell) && p.ell > 1, "ell must exceed 1");
  ConstraintReport r;
  r.middles_negative = p.alpha_deg > p.beta_deg;
  r.middles_negative_without_spike = p.alpha_deg > 2 * p.beta_deg;
  r.realizable = basic_hat_brim_height(p) > 1e-12 && hat_spike_height(p.alpha_deg) > 1e-12;
  return r;
}

ConstraintReport validate_hat(const TriHatParams& p) {
  check_range(std::isfinite(p.alpha_deg) && p.alpha_deg >= 30 && p.alpha_deg < 90, "alpha must lie in [30, 90)");
  check_range(std::isfinite(p.gamma_deg) && p.gamma_deg > 0 && p.gamma_deg < 60, "gamma must lie in (0, 60)");
  const double mix = p.beta_deg + p.gamma_deg / 2;
  check_range(std::isfinite(p.beta_deg) && p.beta_deg > 0 && mix >= 30 && mix < 90,
              "beta + gamma/2 must lie in [30, 90)");
  ConstraintReport r;
  r.middles_negative = p.alpha_deg > mix;
  r.middles_negative_without_spike = p.alpha_deg > 2 * p.beta_deg + p.gamma_deg;
  r.realizable = triangulated_hat_brim_height(p) > 1e-12 && hat_spike_height(p.alpha_deg) > 1e-12;
  return r;
}

ConstraintReport validate_hat(const HatParams& params) {
  return std::visit([](const auto& p) { return validate_hat(p); }, params);
}

PolyhedronMesh build_basic_hat(const BasicHatParams& params, const HatBuildOptions& options) {
  return build_hat(params, options);
}

PolyhedronMesh build_triangulated_hat(const TriHatParams& params) { return build_hat(params); }

PolyhedronMesh build_hat(const HatParams& params, const HatBuildOptions& options) {
  HatTemplate t = make_template(params, options);
  return PolyhedronMesh::build(std::move(t.positions), std::move(t.faces));
}

PolyhedronMesh build_spiked_tetrahedron(const HatParams& params, const HatBuildOptions& options) {
  const HatTemplate hat = make_template(params, options);
  const double s = hat.side / (2 * std::sqrt(2.0));
  const std::vector<Vec3> corners{{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  return glue_hats(hat, corners, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

PolyhedronMesh build_spiked_octahedron(const HatParams& params, const HatBuildOptions& options) {
  const HatTemplate hat = make_template(params, options);
  const double s = hat.side / std::sqrt(2.0);
  const std::vector<Vec3> corners{{s, 0, 0}, {-s, 0, 0}, {0, s, 0}, {0, -s, 0}, {0, 0, s}, {0, 0, -s}};
  std::vector<std::vector<int>> faces;
  for (int x : {0, 1})
    for (int y : {2, 3})
      for (int z : {4, 5}) faces.push_back({x, y, z});
  return glue_hats(hat, corners, std::move(faces));
}

PolyhedronMesh build_open_fan(const FanParams& p) {
  check_range(p.n >= 3, "fan needs at least 3 triangles");
  check_range(std::isfinite(p.apex_deg) && p.apex_deg > 0 && p.apex_deg < 180, "apex angle must lie in (0, 180)");
  check_range(std::isfinite(p.leg) && p.leg > 0, "leg must be positive");
  if (p.n * p.apex_deg <= 360.0)
    throw Error(ErrorKind::InsufficientAngle, "n * apex must exceed 360 degrees");
  if (p.n % 2 != 0)
    throw Error(ErrorKind::DegenerateRealization, "pleated realization needs an even number of triangles");
  // Rim on a sphere of radius leg, heights alternating +-h, so that
  // consecutive spokes meet at the apex angle.
  const double step = 2 * kPi / p.n;
  const double r2 = (1 + std::cos(deg_to_rad(p.apex_deg))) / (1 + std::cos(step));
  const double radius = std::sqrt(r2) * p.leg;
  const double height = std::sqrt(std::max(0.0, 1 - r2)) * p.leg;
  std::vector<Vec3> positions{{0, 0, 0}};
  for (int i = 0; i < p.n; ++i)
    positions.push_back({radius * std::cos(step * i), radius * std::sin(step * i), (i % 2 == 0) ? height : -height});
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < p.n; ++i) faces.push_back({0, 1 + i, 1 + (i + 1) % p.n});
  return PolyhedronMesh::build(std::move(positions), std::move(faces));
}

PolyhedronMesh build_reference(ReferenceSolid solid) {
  if (solid == ReferenceSolid::Tetrahedron) {
    const double s = 1 / (2 * std::sqrt(2.0));
    std::vector<Vec3> pos{{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    std::vector<std::vector<int>> faces{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (auto& f : faces) orient_away_from(f, pos, {0, 0, 0});
    return PolyhedronMesh::build(std::move(pos), std::move(faces));
  }
  std::vector<Vec3> pos;
  for (int i = 0; i < 8; ++i) pos.push_back({(i & 1) - 0.5, ((i >> 1) & 1) - 0.5, ((i >> 2) & 1) - 0.5});
  std::vector<std::vector<int>> faces{{0, 1, 3, 2}, {4, 5, 7, 6}, {0, 1, 5, 4},
                                      {2, 3, 7, 6}, {0, 2, 6, 4}, {1, 3, 7, 5}};
  for (auto& f : faces) orient_away_from(f, pos, {0, 0, 0});
  return PolyhedronMesh::build(std::move(pos), std::move(faces));
}

}  // namespace ununfold
