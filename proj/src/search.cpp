#include "ununfold/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "ununfold/errors.hpp"
#include "ununfold/hats.hpp"
#include "ununfold/spanning_trees.hpp"

namespace ununfold {

std::string_view to_string(EnumerationMode mode) {
  switch (mode) {
    case EnumerationMode::SpanningTrees: return "spanning-trees";
    case EnumerationMode::AllInternalForests: return "all-internal-forests";
    case EnumerationMode::BoundedForests: return "bounded-forests";
  }
  return "?";
}

EnumerationMode parse_enumeration_mode(std::string_view text) {
  for (auto mode : {EnumerationMode::SpanningTrees, EnumerationMode::AllInternalForests,
                    EnumerationMode::BoundedForests})
    if (text == to_string(mode)) return mode;
  throw Error(ErrorKind::ParseError, "unknown enumeration mode '" + std::string(text) + "'");
}

std::string SearchReport::verdict() const {
  if (non_overlapping > 0) return "edge-unfoldable";
  if (exhaustive) return "edge-ununfoldable";
  return "undecided";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Outcome { Inadmissible, Inconsistent, Overlapping, NonOverlapping };

struct TaskResult {
  std::uint64_t total = 0, admissible = 0, consistent = 0, non_overlapping = 0;
  OutcomeExemplars exemplars;
  std::vector<Cutting> consistent_list, non_overlapping_list;
  double min_overlap_area = kInf;
  double max_near_miss = 0;
  HatCertificationStats hats;
  PropertyStats props;
  bool stopped_early = false;
  bool count_mismatch = false;
};

void keep_min(std::optional<Cutting>& slot, const Cutting& c) {
  if (!slot || c < *slot) slot = c;
}

struct Context {
  Context(const PolyhedronMesh& m, const SearchOptions& o)
      : mesh(m), options(o), unfolder(m), overlap_threshold(1e-9 * m.surface_area()) {}

  const PolyhedronMesh& mesh;
  const SearchOptions& options;
  Unfolder unfolder;
  double overlap_threshold;
  bool collect = false;
};

Outcome full_check(const Context& ctx, const Cutting& c, TaskResult& r, PlanarLayout* keep = nullptr) {
  if (!validate_cutting(ctx.mesh, c).admissible()) return Outcome::Inadmissible;
  PlanarLayout layout = ctx.unfolder.layout(c);
  const LayoutAudit audit = audit_layout(ctx.mesh, layout);
  ++r.props.layouts_checked;
  r.props.max_isometry_error = std::max(r.props.max_isometry_error, audit.max_isometry_error);
  r.props.max_area_error = std::max(r.props.max_area_error, audit.area_error);
  if (!audit.cut_edges_duplicated) ++r.props.cut_duplication_failures;
  if (layout.consistency_ok && !audit.uncut_edges_shared) ++r.props.shared_edge_failures;
  Outcome outcome = Outcome::Inconsistent;
  if (layout.consistency_ok) {
    const OverlapReport overlap = check_overlap(layout);
    if (overlap.is_overlapping) {
      r.min_overlap_area = std::min(r.min_overlap_area, overlap.max_area);
      outcome = Outcome::Overlapping;
    } else {
      r.max_near_miss = std::max(r.max_near_miss, overlap.max_area);
      outcome = Outcome::NonOverlapping;
    }
  }
  if (keep) *keep = std::move(layout);
  return outcome;
}

void record(const Context& ctx, TaskResult& r, const Cutting& c, Outcome outcome) {
  ++r.total;
  if (outcome == Outcome::Inadmissible) {
    keep_min(r.exemplars.inadmissible, c);
    return;
  }
  ++r.admissible;
  if (outcome == Outcome::Inconsistent) {
    keep_min(r.exemplars.inconsistent, c);
    return;
  }
  ++r.consistent;
  if (ctx.collect) r.consistent_list.push_back(c);
  if (outcome == Outcome::Overlapping) {
    keep_min(r.exemplars.overlapping, c);
    return;
  }
  ++r.non_overlapping;
  keep_min(r.exemplars.non_overlapping, c);
  if (ctx.collect) r.non_overlapping_list.push_back(c);
}

// ---- spanning trees -------------------------------------------------------

TaskResult run_tree_task(const Context& ctx, const SpanningTreeEnumerator& en, const TreePrefix& prefix,
                         std::uint64_t expected, const HatMemo* memo) {
  TaskResult r;
  r.hats.min_certificate_area = kInf;
  const std::uint64_t stride = std::max<std::uint64_t>(ctx.options.audit_stride, 1);
  std::uint64_t index = 0;
  const std::uint64_t emitted = en.enumerate(prefix, [&](std::uint64_t mask) {
    const bool audit = index++ % stride == 0;
    bool certified = false;
    double witness = 0;
    if (memo) {
      bool all_joined = true;
      for (int h = 0; h < memo->hat_count(); ++h) {
        const std::uint32_t local = memo->local_mask(h, mask);
        const std::uint8_t f = memo->flags(h, local);
        if (f & HatMemo::kCornerToCorner) continue;
        all_joined = false;
        const double area = memo->overlap_area(h, local);
        if ((f & HatMemo::kOverlapping) && area > ctx.overlap_threshold) {
          certified = true;
          witness = std::max(witness, area);
        } else {
          ++r.hats.lemma_violations;
        }
      }
      if (all_joined) ++r.hats.all_hats_corner_to_corner;
      if (certified) {
        ++r.hats.certified;
        r.hats.min_certificate_area = std::min(r.hats.min_certificate_area, witness);
      }
    }
    if (certified && !audit) {
      // Spanning trees of a closed genus-0 surface always lay out consistently.
      ++r.total;
      ++r.admissible;
      ++r.consistent;
      if (!r.exemplars.overlapping) r.exemplars.overlapping = Cutting::from_mask(mask);
      if (ctx.collect) r.consistent_list.push_back(Cutting::from_mask(mask));
      return true;
    }
    const Cutting c = Cutting::from_mask(mask);
    PlanarLayout layout;
    const Outcome outcome = full_check(ctx, c, r, &layout);
    if (certified) {
      ++r.hats.audits;
      if (outcome != Outcome::Overlapping) ++r.hats.audit_mismatches;
      for (int h = 0; h < memo->hat_count() && outcome != Outcome::Inadmissible; ++h) {
        const std::uint32_t local = memo->local_mask(h, mask);
        const std::uint8_t f = memo->flags(h, local);
        if (f & HatMemo::kCornerToCorner) continue;
        std::vector<Polygon2> pieces;
        for (int face : memo->hat(h).faces) pieces.push_back(layout.faces[face].polygon);
        const bool inside = check_overlap(pieces, ctx.mesh.surface_area()).is_overlapping;
        const bool memo_says = (f & HatMemo::kOverlapping) && memo->overlap_area(h, local) > ctx.overlap_threshold;
        if (inside != memo_says) ++r.hats.audit_mismatches;
      }
    } else if (memo) {
      ++r.hats.full_checks;
    }
    record(ctx, r, c, outcome);
    if (ctx.options.early_exit && outcome == Outcome::NonOverlapping) {
      r.stopped_early = true;
      return false;
    }
    return true;
  });
  if (!r.stopped_early && emitted != expected) r.count_mismatch = true;
  return r;
}

// ---- forests -------------------------------------------------------------

std::vector<int> internal_edges(const PolyhedronMesh& mesh) {
  std::vector<int> out;
  for (const Edge& e : mesh.edges())
    if (!e.is_boundary()) out.push_back(e.id);
  return out;
}

TaskResult run_subset_task(const Context& ctx, const std::vector<int>& edges, std::uint64_t lo, std::uint64_t hi) {
  TaskResult r;
  for (std::uint64_t mask = lo; mask < hi; ++mask) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (mask >> i & 1) ids.push_back(edges[i]);
    const Cutting c(std::move(ids));
    const Outcome outcome = full_check(ctx, c, r);
    record(ctx, r, c, outcome);
    if (ctx.options.early_exit && outcome == Outcome::NonOverlapping) {
      r.stopped_early = true;
      break;
    }
  }
  return r;
}

// Forests on the internal edges with at most k_max components; the
// curvature condition predicts which of them can lay out consistently.
TaskResult run_bounded_forests(const Context& ctx, const std::vector<int>& edges) {
  TaskResult r;
  const PolyhedronMesh& mesh = ctx.mesh;
  const int nv = mesh.vertex_count();
  std::vector<double> kappa(nv, 0.0);
  for (int v = 0; v < nv; ++v)
    if (!mesh.is_boundary_vertex(v)) kappa[v] = curvature(mesh, v);

  std::vector<int> parent(nv);
  std::vector<int> touched(nv, 0);
  for (int v = 0; v < nv; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v];
    return v;
  };
  std::vector<int> chosen;
  int touched_count = 0;
  bool stop = false;

  auto leaf = [&] {
    const int components = touched_count - static_cast<int>(chosen.size());
    if (components > ctx.options.k_max) return;
    const Cutting c(chosen);
    // A cut tree reaching the boundary opens freely; one that does not must
    // enclose a whole number of turns of curvature.
    std::map<int, double> sums;
    std::set<int> open;
    for (int v = 0; v < nv; ++v) {
      if (!touched[v]) continue;
      sums[find(v)] += kappa[v];
      if (mesh.is_boundary_vertex(v)) open.insert(find(v));
    }
    bool holonomy_free = true;
    for (auto [root, sum] : sums) {
      const double turns = sum / (2 * kPi);
      if (!open.count(root) && std::abs(turns - std::round(turns)) > 1e-9) holonomy_free = false;
    }
    const Outcome outcome = full_check(ctx, c, r);
    if (outcome != Outcome::Inadmissible && !holonomy_free) {
      ++r.props.gauss_bonnet_pruned;
      if (outcome != Outcome::Inconsistent) ++r.props.gauss_bonnet_violations;
    }
    record(ctx, r, c, outcome);
    if (ctx.options.early_exit && outcome == Outcome::NonOverlapping) {
      r.stopped_early = true;
      stop = true;
    }
  };

  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (stop) return;
    if (k == edges.size()) {
      leaf();
      return;
    }
    const Edge& e = mesh.edge(edges[k]);
    const int a = find(e.v0), b = find(e.v1);
    if (a != b && static_cast<int>(chosen.size()) < nv - 1) {
      parent[a] = b;
      chosen.push_back(e.id);
      touched_count += (touched[e.v0]++ == 0) + (touched[e.v1]++ == 0);
      self(self, k + 1);
      touched_count -= (--touched[e.v0] == 0) + (--touched[e.v1] == 0);
      chosen.pop_back();
      parent[a] = a;
    }
    self(self, k + 1);
  };
  rec(rec, 0);
  return r;
}

void merge(SearchReport& report, TaskResult& t, double& min_overlap, double& min_cert) {
  report.total_candidates += t.total;
  report.admissible += t.admissible;
  report.consistent += t.consistent;
  report.non_overlapping += t.non_overlapping;
  auto fold = [](std::optional<Cutting>& into, const std::optional<Cutting>& from) {
    if (from) keep_min(into, *from);
  };
  fold(report.exemplars.inadmissible, t.exemplars.inadmissible);
  fold(report.exemplars.inconsistent, t.exemplars.inconsistent);
  fold(report.exemplars.overlapping, t.exemplars.overlapping);
  fold(report.exemplars.non_overlapping, t.exemplars.non_overlapping);
  for (auto& c : t.consistent_list) report.consistent_cuttings.push_back(std::move(c));
  for (auto& c : t.non_overlapping_list) report.non_overlapping_cuttings.push_back(std::move(c));
  min_overlap = std::min(min_overlap, t.min_overlap_area);
  report.max_near_miss_area = std::max(report.max_near_miss_area, t.max_near_miss);

  HatCertificationStats& h = report.hats;
  h.certified += t.hats.certified;
  h.full_checks += t.hats.full_checks;
  h.audits += t.hats.audits;
  h.audit_mismatches += t.hats.audit_mismatches;
  h.lemma_violations += t.hats.lemma_violations;
  h.all_hats_corner_to_corner += t.hats.all_hats_corner_to_corner;
  min_cert = std::min(min_cert, t.hats.min_certificate_area);

  PropertyStats& p = report.properties;
  p.layouts_checked += t.props.layouts_checked;
  p.max_isometry_error = std::max(p.max_isometry_error, t.props.max_isometry_error);
  p.max_area_error = std::max(p.max_area_error, t.props.max_area_error);
  p.cut_duplication_failures += t.props.cut_duplication_failures;
  p.shared_edge_failures += t.props.shared_edge_failures;
  p.gauss_bonnet_pruned += t.props.gauss_bonnet_pruned;
  p.gauss_bonnet_violations += t.props.gauss_bonnet_violations;
  if (t.count_mismatch) report.task_counts_match = false;
}

// Runs tasks on a pool; the result list is cut right after the first task
// that stopped early, which keeps the report independent of the schedule.
template <class Run>
std::vector<TaskResult> run_tasks(std::size_t count, int workers, const Run& run,
                                  const std::function<void(std::size_t, std::size_t)>& progress) {
  std::vector<TaskResult> results(count);
  std::vector<char> finished(count, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> stop_at{count};
  std::atomic<std::size_t> done{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= count) return;
      if (i > stop_at.load()) continue;
      try {
        results[i] = run(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        stop_at = 0;
        return;
      }
      finished[i] = 1;
      if (results[i].stopped_early) {
        std::size_t cur = stop_at.load();
        while (i < cur && !stop_at.compare_exchange_weak(cur, i)) {
        }
      }
      const std::size_t d = ++done;
      if (progress) {
        std::lock_guard lock(failure_mutex);
        progress(d, count);
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(count, 1))));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  const std::size_t keep = std::min(count, stop_at.load() == count ? count : stop_at.load() + 1);
  results.resize(keep);
  return results;
}

}  // namespace

SearchReport search_edge_unfolding(const PolyhedronMesh& mesh, const SearchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (options.workers < 1) throw Error(ErrorKind::InvalidInput, "worker count must be at least 1");
  SearchReport report;
  report.vertices = mesh.vertex_count();
  report.edges = mesh.edge_count();
  report.faces = mesh.face_count();
  report.closed = mesh.is_closed();
  report.mode = options.mode;

  Context ctx(mesh, options);
  std::vector<TaskResult> results;

  if (options.mode == EnumerationMode::SpanningTrees) {
    if (!mesh.is_closed())
      throw Error(ErrorKind::ModeUnsupported, "spanning-tree mode needs a closed mesh; use all-internal-forests");
    const Graph graph = skeleton_graph(mesh);
    const SpanningTreeEnumerator en(graph);
    const BigInt expected = count_spanning_trees(graph);
    report.expected_total = expected.str();
    ctx.collect = expected <= BigInt(options.collect_limit);

    const std::vector<TreePrefix> prefixes = en.prefixes(options.task_depth);
    std::vector<std::uint64_t> counts;
    BigInt sum = 0;
    for (const TreePrefix& p : prefixes) {
      const BigInt c = en.count(p);
      sum += c;
      counts.push_back(c.convert_to<std::uint64_t>());
    }
    if (sum != expected) report.task_counts_match = false;
    report.tasks_total = prefixes.size();
    report.first_task = std::min(options.first_task, prefixes.size());

    std::size_t last = report.first_task;
    std::uint64_t planned = 0;
    while (last < prefixes.size() && (options.budget == 0 || planned + counts[last] <= options.budget))
      planned += counts[last++];

    std::optional<HatMemo> memo;
    if (options.certify_with_hats && genus(mesh) == 0 && mesh.edge_count() <= 64) {
      try {
        memo.emplace(mesh);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotASpikedSolid) throw;
      }
    }
    report.hats.used = memo.has_value();
    report.hats.hats = memo ? memo->hat_count() : 0;

    const std::size_t first = report.first_task;
    results = run_tasks(
        last - first, options.workers,
        [&](std::size_t i) {
          return run_tree_task(ctx, en, prefixes[first + i], counts[first + i], memo ? &*memo : nullptr);
        },
        options.progress);
    report.tasks_done = results.size();
    report.exhaustive = first == 0 && last == prefixes.size();
  } else {
    const std::vector<int> edges = internal_edges(mesh);
    if (edges.size() >= 63 || (std::uint64_t{1} << edges.size()) > options.forest_budget)
      throw Error(ErrorKind::ModeUnsupported, std::to_string(edges.size()) +
                                                  " internal edges exceed the forest budget of " +
                                                  std::to_string(options.forest_budget) + " subsets");
    const std::uint64_t space = std::uint64_t{1} << edges.size();
    if (options.mode == EnumerationMode::AllInternalForests) {
      report.expected_total = std::to_string(space);
      ctx.collect = space <= options.collect_limit;
      const std::uint64_t chunk = std::min<std::uint64_t>(space, 1024);
      const std::size_t tasks = static_cast<std::size_t>((space + chunk - 1) / chunk);
      results = run_tasks(
          tasks, options.workers,
          [&](std::size_t i) { return run_subset_task(ctx, edges, i * chunk, std::min(space, (i + 1) * chunk)); },
          options.progress);
      report.tasks_total = tasks;
    } else {
      ctx.collect = space <= options.collect_limit;
      results = run_tasks(1, 1, [&](std::size_t) { return run_bounded_forests(ctx, edges); }, options.progress);
      report.tasks_total = 1;
    }
    report.tasks_done = results.size();
    report.exhaustive = true;
  }

  double min_overlap = kInf, min_cert = kInf;
  for (TaskResult& t : results) {
    merge(report, t, min_overlap, min_cert);
    if (t.stopped_early) report.stopped_early = true;
  }
  if (report.stopped_early) report.exhaustive = false;
  report.min_overlap_area = std::isfinite(min_overlap) ? min_overlap : 0;
  report.hats.min_certificate_area = std::isfinite(min_cert) ? min_cert : 0;
  if (ctx.collect) {
    std::sort(report.consistent_cuttings.begin(), report.consistent_cuttings.end());
    std::sort(report.non_overlapping_cuttings.begin(), report.non_overlapping_cuttings.end());
    for (const Orbit& o : orbit_classes(mesh, report.consistent_cuttings))
      report.consistent_representatives.push_back(o.representative);
    for (const Orbit& o : orbit_classes(mesh, report.non_overlapping_cuttings))
      report.non_overlapping_representatives.push_back(o.representative);
    report.consistent_orbits = static_cast<long>(report.consistent_representatives.size());
    report.non_overlapping_orbits = static_cast<long>(report.non_overlapping_representatives.size());
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<Cutting> enumerate_admissible_cuttings(const PolyhedronMesh& mesh, EnumerationMode mode,
                                                   const SearchOptions& options) {
  std::vector<Cutting> out;
  if (mode == EnumerationMode::SpanningTrees) {
    if (!mesh.is_closed()) throw Error(ErrorKind::ModeUnsupported, "spanning-tree mode needs a closed mesh");
    const Graph graph = skeleton_graph(mesh);
    if (count_spanning_trees(graph) > BigInt(options.collect_limit))
      throw Error(ErrorKind::ModeUnsupported, "too many spanning trees to materialize");
    for (auto& ids : enumerate_spanning_trees(graph)) out.emplace_back(std::move(ids));
    return out;
  }
  const std::vector<int> edges = internal_edges(mesh);
  if (edges.size() >= 63 || (std::uint64_t{1} << edges.size()) > options.forest_budget)
    throw Error(ErrorKind::ModeUnsupported, "internal edges exceed the forest budget");
  const int nv = mesh.vertex_count();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (mask >> i & 1) ids.push_back(edges[i]);
    const Cutting c(std::move(ids));
    const CutValidity v = validate_cutting(mesh, c);
    if (!v.admissible()) continue;
    if (mode == EnumerationMode::BoundedForests &&
        (v.component_count > options.k_max || static_cast<int>(c.size()) > nv - 1))
      continue;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Orbit> orbit_classes(const PolyhedronMesh& mesh, std::span<const Cutting> cuttings) {
  std::vector<std::vector<int>> perms;
  for (const auto& p : symmetry_group(mesh)) perms.push_back(edge_permutation(mesh, p));
  std::map<Cutting, int> index;
  for (const Cutting& c : cuttings) index.emplace(c, -1);

  std::vector<Orbit> orbits;
  for (auto& [cutting, orbit] : index) {
    if (orbit >= 0) continue;
    const int id = static_cast<int>(orbits.size());
    Orbit o;
    for (const auto& perm : perms) {
      std::vector<int> image;
      for (int e : cutting.edges()) image.push_back(perm[e]);
      auto it = index.find(Cutting(std::move(image)));
      if (it == index.end() || it->second >= 0) continue;
      it->second = id;
      o.members.push_back(it->first);
    }
    std::sort(o.members.begin(), o.members.end());
    o.representative = o.members.front();
    orbits.push_back(std::move(o));
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const Orbit& a, const Orbit& b) { return a.representative < b.representative; });
  return orbits;
}

HatCensus hat_path_census(const PolyhedronMesh& hat) {
  const auto patches = infer_hat_patches(hat);
  if (patches.size() != 1 || hat.is_closed()) throw Error(ErrorKind::NotASpikedSolid, "expected a single open hat");
  const HatPatch& patch = patches.front();
  HatCensus census;

  std::vector<int> negative;
  for (int v = 0; v < hat.vertex_count(); ++v)
    if (!hat.is_boundary_vertex(v) && curvature(hat, v) < -hat.tolerances().angle) negative.push_back(v);

  const Unfolder unfolder(hat);
  const std::vector<int> edges = internal_edges(hat);
  census.census_all_overlap = true;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (mask >> i & 1) ids.push_back(edges[i]);
    const Cutting c(std::move(ids));
    if (!validate_cutting(hat, c).admissible()) continue;
    const PlanarLayout layout = unfolder.layout(c);
    if (!layout.consistency_ok) continue;
    census.consistent.push_back(c);
    bool branching = true;
    for (int v : negative) {
      int cuts = 0;
      for (int e : hat.vertex_edges(v)) cuts += c.contains(e);
      if (cuts < 2) branching = false;
    }
    if (!branching) continue;
    census.census.push_back(c);
    if (!check_overlap(layout).is_overlapping) census.census_all_overlap = false;
  }

  // Oracle: walk corner -> middles (all of them, any order) -> tip.
  const std::set<int> middles(patch.middles.begin(), patch.middles.end());
  std::vector<int> path_edges;
  std::set<int> visited;
  auto walk = [&](auto&& self, int v) -> void {
    if (visited.size() == middles.size() + 1) {
      const auto e = hat.edge_between(v, patch.tip);
      if (!e) return;
      path_edges.push_back(*e);
      census.corner_to_tip_paths.emplace_back(path_edges);
      path_edges.pop_back();
      return;
    }
    for (int m : middles) {
      if (visited.count(m)) continue;
      const auto e = hat.edge_between(v, m);
      if (!e || hat.edge(*e).is_boundary()) continue;
      visited.insert(m);
      path_edges.push_back(*e);
      self(self, m);
      path_edges.pop_back();
      visited.erase(m);
    }
  };
  for (int corner : patch.corners) {
    visited = {corner};
    walk(walk, corner);
  }
  std::sort(census.corner_to_tip_paths.begin(), census.corner_to_tip_paths.end());
  std::sort(census.consistent.begin(), census.consistent.end());
  std::sort(census.census.begin(), census.census.end());
  if (census.census.empty()) census.census_all_overlap = false;

  census.consistent_orbits = orbit_classes(hat, census.consistent).size();
  census.census_orbits = orbit_classes(hat, census.census).size();
  census.path_orbits = orbit_classes(hat, census.corner_to_tip_paths).size();
  census.census_equals_paths = census.census == census.corner_to_tip_paths;
  return census;
}

std::string net_signature(const PlanarLayout& layout, double quantum) {
  using Key = std::vector<std::vector<std::pair<long long, long long>>>;
  std::optional<Key> best;
  for (const PlacedFace& anchor : layout.faces) {
    const std::size_t n = anchor.polygon.size();
    for (std::size_t k = 0; k < 2 * n; ++k) {
      // Both directions of every edge, so that mirror images share frames.
      const std::size_t i = k % n, j = (i + 1) % n;
      const Vec2 p = k < n ? anchor.polygon[i] : anchor.polygon[j];
      const Vec2 d = (k < n ? anchor.polygon[j] : anchor.polygon[i]) - p;
      const double len = norm(d);
      const double c = d.x / len, s = d.y / len;
      for (int mirror : {1, -1}) {
        Key key;
        for (const PlacedFace& pf : layout.faces) {
          std::vector<std::pair<long long, long long>> pts;
          for (const Vec2& q : pf.polygon) {
            const Vec2 r = q - p;
            const double x = c * r.x + s * r.y;
            const double y = mirror * (-s * r.x + c * r.y);
            pts.emplace_back(std::llround(x / quantum), std::llround(y / quantum));
          }
          std::sort(pts.begin(), pts.end());
          key.push_back(std::move(pts));
        }
        std::sort(key.begin(), key.end());
        if (!best || key < *best) best = std::move(key);
      }
    }
  }
  std::ostringstream out;
  if (best)
    for (const auto& poly : *best) {
      out << '[';
      for (const auto& [x, y] : poly) out << x << ',' << y << ';';
      out << ']';
    }
  return out.str();
}

}  // namespace ununfold
