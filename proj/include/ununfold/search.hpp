#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ununfold/cutting.hpp"
#include "ununfold/mesh.hpp"
#include "ununfold/unfold.hpp"

namespace ununfold {

enum class EnumerationMode { SpanningTrees, AllInternalForests, BoundedForests };

std::string_view to_string(EnumerationMode mode);
/// Accepts "spanning-trees", "all-internal-forests", "bounded-forests".
EnumerationMode parse_enumeration_mode(std::string_view text);

struct SearchOptions {
  EnumerationMode mode = EnumerationMode::SpanningTrees;
  int workers = 1;
  /// Stop at the first non-overlapping cutting.
  bool early_exit = false;
  /// Spanning trees: cap on candidates, rounded down to whole tasks; 0 = none.
  std::uint64_t budget = 0;
  /// Spanning trees: edges decided per task prefix.
  int task_depth = 14;
  /// Spanning trees: resume point (index into the task list).
  std::size_t first_task = 0;
  /// Spanning trees on spiked solids: certify overlap from per-hat memos.
  bool certify_with_hats = true;
  /// Trees between full-geometry audits of the memo verdict (plus the first
  /// tree of every task).
  std::uint64_t audit_stride = 1'000'000;
  /// Bounded forests: largest number of cut components.
  int k_max = 2;
  /// Forest modes: refuse meshes with more than this many edge subsets.
  std::uint64_t forest_budget = std::uint64_t{1} << 22;
  /// Keep consistent / non-overlapping cuttings (for orbit counts) while
  /// there are at most this many.
  std::size_t collect_limit = 100'000;
  /// Called after each finished task with (tasks done, tasks scheduled).
  std::function<void(std::size_t, std::size_t)> progress;
};

/// Lexicographically smallest cutting seen in each outcome class.
struct OutcomeExemplars {
  std::optional<Cutting> inadmissible, inconsistent, overlapping, non_overlapping;
};

struct HatCertificationStats {
  bool used = false;
  int hats = 0;
  std::uint64_t certified = 0;       // trees whose overlap came from a hat memo
  std::uint64_t full_checks = 0;     // trees laid out in full because no hat certified them
  std::uint64_t audits = 0;          // certified trees re-checked in full geometry
  std::uint64_t audit_mismatches = 0;
  /// (tree, hat) pairs with neither a corner-to-corner path nor an overlap
  /// inside the hat; the corner-to-corner lemma says this never happens.
  std::uint64_t lemma_violations = 0;
  /// Trees with a corner-to-corner path in every hat (these would close a
  /// cycle through the corners, so a tree cannot have one).
  std::uint64_t all_hats_corner_to_corner = 0;
  double min_certificate_area = 0;   // smallest hat overlap used as a certificate
};

struct PropertyStats {
  std::uint64_t layouts_checked = 0;
  double max_isometry_error = 0;
  double max_area_error = 0;
  std::uint64_t cut_duplication_failures = 0;
  std::uint64_t shared_edge_failures = 0;
  /// Bounded forests: forests whose cut components fail the curvature
  /// condition and still lay out consistently (must stay 0).
  std::uint64_t gauss_bonnet_pruned = 0;
  std::uint64_t gauss_bonnet_violations = 0;
};

struct SearchReport {
  int vertices = 0, edges = 0, faces = 0;
  bool closed = false;
  EnumerationMode mode = EnumerationMode::SpanningTrees;

  std::uint64_t total_candidates = 0;
  std::uint64_t admissible = 0;
  std::uint64_t consistent = 0;
  std::uint64_t non_overlapping = 0;

  /// Size of the whole candidate space as a decimal string (Matrix-Tree
  /// count, or 2^m for internal forests); empty when unknown.
  std::string expected_total;
  /// Every emitted task matched its own Matrix-Tree count.
  bool task_counts_match = true;
  bool exhaustive = false;
  bool stopped_early = false;

  std::size_t tasks_total = 0;
  std::size_t first_task = 0;
  std::size_t tasks_done = 0;

  OutcomeExemplars exemplars;
  /// Orbits under symmetry_group; -1 when the class was too large to keep.
  long consistent_orbits = -1;
  long non_overlapping_orbits = -1;
  std::vector<Cutting> consistent_cuttings;
  std::vector<Cutting> non_overlapping_cuttings;
  /// Smallest member of each orbit, ascending.
  std::vector<Cutting> consistent_representatives;
  std::vector<Cutting> non_overlapping_representatives;

  /// Overlap margins from full geometric checks.
  double min_overlap_area = 0;      // smallest max-pair area among overlapping candidates
  double max_near_miss_area = 0;    // largest max-pair area among non-overlapping candidates

  HatCertificationStats hats;
  PropertyStats properties;

  double seconds = 0;

  bool funnel_ok() const {
    return non_overlapping <= consistent && consistent <= admissible && admissible <= total_candidates;
  }
  /// "edge-unfoldable", "edge-ununfoldable" or "undecided".
  std::string verdict() const;
};

SearchReport search_edge_unfolding(const PolyhedronMesh& mesh, const SearchOptions& options = {});

/// Admissible cuttings in candidate order; spanning trees are materialized
/// only up to options.collect_limit (ModeUnsupported beyond that).
std::vector<Cutting> enumerate_admissible_cuttings(const PolyhedronMesh& mesh, EnumerationMode mode,
                                                   const SearchOptions& options = {});

struct Orbit {
  Cutting representative;  // smallest member
  std::vector<Cutting> members;
};

/// Partition under the mesh symmetry group acting on edge sets; orbits are
/// sorted by representative. Images outside the input set are ignored.
std::vector<Orbit> orbit_classes(const PolyhedronMesh& mesh, std::span<const Cutting> cuttings);

/// Cuttings of a lone hat split the way the open-hat argument does.
struct HatCensus {
  std::vector<Cutting> consistent;  // admissible with a consistent layout
  /// Consistent cuttings with at least two cuts at every negatively curved
  /// vertex (fewer always overlaps around that vertex).
  std::vector<Cutting> census;
  /// Independent oracle: corner-to-tip paths through all middles.
  std::vector<Cutting> corner_to_tip_paths;
  std::size_t consistent_orbits = 0;
  std::size_t census_orbits = 0;
  std::size_t path_orbits = 0;
  bool census_all_overlap = false;
  bool census_equals_paths = false;
};
HatCensus hat_path_census(const PolyhedronMesh& hat);

/// Canonical form of a net up to rotation, translation and reflection:
/// the smallest sorted list of rounded polygons over all frames anchored on
/// a directed polygon edge.
std::string net_signature(const PlanarLayout& layout, double quantum = 1e-6);

}  // namespace ununfold
