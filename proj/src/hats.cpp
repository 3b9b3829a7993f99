#include "ununfold/hats.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ununfold/errors.hpp"
#include "ununfold/unfold.hpp"

namespace ununfold {

namespace {

[[noreturn]] void not_spiked(const std::string& why) { throw Error(ErrorKind::NotASpikedSolid, why); }

bool corners_joined(const PolyhedronMesh& mesh, const HatPatch& hat, const std::vector<int>& cut_edges) {
  std::map<int, int> parent;
  auto find = [&](int v) {
    if (!parent.count(v)) parent[v] = v;
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int e : cut_edges) parent[find(mesh.edge(e).v0)] = find(mesh.edge(e).v1);
  std::set<int> roots;
  for (int c : hat.corners) {
    if (!roots.insert(find(c)).second) return true;
  }
  return false;
}

}  // namespace

std::vector<HatPatch> infer_hat_patches(const PolyhedronMesh& mesh) {
  std::vector<HatPatch> hats;
  std::vector<int> face_owner(mesh.face_count(), -1);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mesh.is_boundary_vertex(v) || mesh.vertex_edges(v).size() != 3) continue;
    HatPatch hat;
    hat.tip = v;
    std::vector<int> mids;
    for (int e : mesh.vertex_edges(v)) mids.push_back(mesh.edge(e).other(v));
    std::sort(mids.begin(), mids.end());
    std::copy(mids.begin(), mids.end(), hat.middles.begin());

    std::set<int> faces;
    for (int x : mids)
      for (int f : mesh.vertex_faces(x)) faces.insert(f);
    for (int f : mesh.vertex_faces(v)) faces.insert(f);
    hat.faces.assign(faces.begin(), faces.end());

    std::set<int> corners;
    for (int f : hat.faces)
      for (int x : mesh.face(f).loop)
        if (x != v && !std::binary_search(mids.begin(), mids.end(), x)) corners.insert(x);
    if (corners.size() != 3) not_spiked("hat at vertex " + std::to_string(v) + " does not have three corners");
    std::copy(corners.begin(), corners.end(), hat.corners.begin());

    std::set<int> edges;
    for (int f : hat.faces)
      for (int e : mesh.face(f).edges) {
        const Edge& edge = mesh.edge(e);
        if (corners.count(edge.v0) && corners.count(edge.v1)) continue;
        edges.insert(e);
      }
    hat.internal_edges.assign(edges.begin(), edges.end());

    const int id = static_cast<int>(hats.size());
    for (int f : hat.faces) {
      if (face_owner[f] >= 0) not_spiked("face " + std::to_string(f) + " belongs to two hats");
      face_owner[f] = id;
    }
    hats.push_back(std::move(hat));
  }
  if (hats.empty()) not_spiked("no hat tips found");
  for (int f = 0; f < mesh.face_count(); ++f)
    if (face_owner[f] < 0) not_spiked("face " + std::to_string(f) + " is not part of any hat");
  // Each hat edge must stay inside its hat unless it joins two corners.
  for (const Edge& e : mesh.edges()) {
    if (e.is_boundary()) continue;
    const int a = face_owner[e.faces[0]], b = face_owner[e.faces[1]];
    if (a == b) continue;
    const auto& ca = hats[a].corners;
    const bool corner_edge = std::count(ca.begin(), ca.end(), e.v0) && std::count(ca.begin(), ca.end(), e.v1);
    if (!corner_edge) not_spiked("edge " + std::to_string(e.id) + " joins two hats away from their corners");
  }
  return hats;
}

std::vector<bool> check_corner_to_corner(const PolyhedronMesh& mesh, const Cutting& cutting) {
  const auto hats = infer_hat_patches(mesh);
  std::vector<bool> out;
  for (const HatPatch& hat : hats) {
    std::vector<int> cut;
    for (int e : hat.internal_edges)
      if (cutting.contains(e)) cut.push_back(e);
    out.push_back(corners_joined(mesh, hat, cut));
  }
  return out;
}

HatSubmesh extract_hat(const PolyhedronMesh& mesh, const HatPatch& hat) {
  std::map<int, int> local;
  std::vector<int> global_vertex;
  std::vector<std::vector<int>> loops;
  for (int f : hat.faces) {
    std::vector<int> loop;
    for (int v : mesh.face(f).loop) {
      auto [it, fresh] = local.try_emplace(v, static_cast<int>(global_vertex.size()));
      if (fresh) global_vertex.push_back(v);
      loop.push_back(it->second);
    }
    loops.push_back(std::move(loop));
  }
  std::vector<Vec3> positions;
  for (int v : global_vertex) positions.push_back(mesh.position(v));
  HatSubmesh out{PolyhedronMesh::build(std::move(positions), std::move(loops), mesh.tolerances()),
                 std::move(global_vertex), {}};
  for (const Edge& e : out.mesh.edges())
    out.global_edge.push_back(*mesh.edge_between(out.global_vertex[e.v0], out.global_vertex[e.v1]));
  return out;
}

HatMemo::HatMemo(const PolyhedronMesh& mesh) : hats_(infer_hat_patches(mesh)) {
  for (const HatPatch& hat : hats_) {
    const int m = static_cast<int>(hat.internal_edges.size());
    if (m > 24) not_spiked("hat has too many internal edges for a memo");
    std::array<std::array<std::uint32_t, 256>, 8> table{};
    for (int i = 0; i < m; ++i) {
      const int e = hat.internal_edges[i];
      if (e >= 64) throw Error(ErrorKind::ModeUnsupported, "hat memo needs edge ids below 64");
      for (int byte = 0; byte < 256; ++byte)
        if (byte >> (e % 8) & 1) table[e / 8][byte] |= std::uint32_t{1} << i;
    }
    byte_tables_.push_back(table);

    const HatSubmesh sub = extract_hat(mesh, hat);
    std::vector<int> local_edge(m);
    for (int i = 0; i < m; ++i)
      local_edge[i] = static_cast<int>(std::find(sub.global_edge.begin(), sub.global_edge.end(), hat.internal_edges[i]) -
                                       sub.global_edge.begin());
    const Unfolder unfolder(sub.mesh);

    std::vector<std::uint8_t> flags(std::size_t{1} << m, 0);
    std::vector<double> areas(std::size_t{1} << m, 0.0);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
      std::vector<int> cut_global, cut_local;
      for (int i = 0; i < m; ++i)
        if (mask >> i & 1) {
          cut_global.push_back(hat.internal_edges[i]);
          cut_local.push_back(local_edge[i]);
        }
      if (corners_joined(mesh, hat, cut_global)) {
        flags[mask] = kCornerToCorner;
        continue;
      }
      PlanarLayout layout;
      try {
        layout = unfolder.layout(Cutting(cut_local));
      } catch (const Error&) {
        continue;
      }
      if (!layout.consistency_ok) continue;
      flags[mask] = kLayoutOk;
      const OverlapReport report = check_overlap(layout);
      areas[mask] = report.max_area;
      if (report.is_overlapping) flags[mask] |= kOverlapping;
    }
    flags_.push_back(std::move(flags));
    areas_.push_back(std::move(areas));
  }
}

}  // namespace ununfold
