#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxitop/cycles.hpp"
#include "proxitop/geometry.hpp"
#include "proxitop/nerves.hpp"

namespace proxitop {

/** The drawn curve: segments in traversal order where one exists. */
struct PlanarCurve {
  std::vector<Segment> segments;
  BBox bounds;
};

// Segments of a cycle in traversal order when each consecutive vertex pair
// carries exactly one edge, otherwise in edge-listed order (a multi cycle
// has no single traversal). Structural garbage throws InvalidCycle.
PlanarCurve realize_curve(const PathCycle& cycle);

// All constituent chains concatenated.
PlanarCurve realize_curve(const CycleSystem& system);

struct SimpleClosedReport {
  bool simple_closed = true;
  std::string violation;  // "", "open_chain", "self_intersection"
  int seg_a = -1, seg_b = -1;
};

/**
 * Whether the segments form one closed chain that never touches itself:
 * consecutive segments share exactly their joint, non-adjacent segments are
 * disjoint. Violations are reported, never thrown.
 */
SimpleClosedReport is_simple_closed(const PlanarCurve& curve);

/**
 * For a cycle with parallel edge bundles: the outermost chain, picking from
 * each bundle the edge whose drawn arc pushes the enclosed area furthest
 * out. The result has exactly one edge per consecutive pair.
 */
PathCycle outer_chain(const PathCycle& cycle);

/**
 * Raster labeling of the plane around the curve. Cells crossed by the curve
 * are labeled -1; the remaining cells carry region indices assigned in scan
 * order, so region 0 is always the unbounded outside (the grid is padded).
 * The grid origin sits at an irrational fraction of a cell below the
 * bounding box, which keeps straight input segments off the grid lines.
 */
struct RegionLabeling {
  int resolution = 0;  // cells per unit length
  double cell = 0.0;
  Vec2 origin;
  int nx = 0, ny = 0;
  std::vector<int> labels;  // row-major, y * nx + x; -1 = curve
  int region_count = 0;

  int label_at(int x, int y) const { return labels[static_cast<std::size_t>(y) * nx + x]; }
};

/**
 * Rasterizes and flood-fills at the given resolution, or, when none is
 * given, starts at 8 cells per shortest segment and doubles until the
 * region count is stable under one further doubling (the returned labeling
 * is the finer of the stable pair). Throws ResolutionTooCoarse when no
 * bounded region shows up or the cap (4096 cells per axis) is hit first.
 */
RegionLabeling region_count(const PlanarCurve& curve,
                            std::optional<int> resolution = std::nullopt);

struct CommonBoundaryReport {
  bool ok = true;
  int cell_x = -1, cell_y = -1;  // first curve cell missing a region contact
};

/**
 * With exactly two regions: every curve cell must reach both regions along
 * the curve, where a curve cell 8-adjacent to a region cell has contact and
 * contact propagates between 8-adjacent curve cells. A curve cell islanded
 * inside a single region fails. Throws RegionCountNotTwo otherwise.
 */
CommonBoundaryReport common_boundary_check(const RegionLabeling& labeling);

enum class PointSide { inside, outside, on };

/**
 * Even-odd ray casting against the curve's segments, the independent
 * counterpart of the raster labeling. Points within tolerance of the curve
 * report `on`.
 */
PointSide point_in_polygon(const Vec2& p, const PlanarCurve& curve);

// One character per cell: '#' curve, '.' outside, 'a'+k-1 for region k.
std::string grid_dump(const RegionLabeling& labeling);

struct JordanConfig {
  std::optional<int> resolution;  // unset: auto-stabilized
  bool parallel = true;
};

struct JordanClause {
  std::string name;
  bool applicable = false;
  bool passed = false;
  std::string detail;
};

struct ConstituentResult {
  bool simple_closed = false;
  int region_count = 0;
  bool common_boundary = false;
  int resolution = 0;
  std::string violation;
};

struct JordanReport {
  std::string kind;  // "cycle", "multi", "system", "cover"
  std::vector<JordanClause> clauses;
  std::vector<ConstituentResult> constituents;
  int union_region_count = 0;  // systems only
  bool all_passed() const {
    for (const JordanClause& c : clauses)
      if (c.applicable && !c.passed) return false;
    return true;
  }
};

/**
 * Region-splitting verification for one cycle. Simple kind: the chain must
 * be simple closed, split the plane into two regions, and be their common
 * boundary. Multi kind: the same checks run on the extracted outer chain.
 */
JordanReport jordan_check(const PathCycle& cycle, CycleKind kind,
                          const JordanConfig& cfg = {});

/**
 * Per-constituent region splitting for a system sharing one vertex; the
 * union's region count is reported alongside (the union itself is not a
 * simple curve at the shared vertex, and the report says so rather than
 * pretending otherwise).
 */
JordanReport jordan_check(const CycleSystem& system, const JordanConfig& cfg = {});

/**
 * System checks plus cover goodness: the cover (over the system's welded
 * graph) must pass is_good_cover under the given configuration for its
 * clause to hold.
 */
JordanReport jordan_check(const CycleSystem& system, const Cover& cover,
                          const GoodCoverConfig& cover_cfg, const JordanConfig& cfg = {});

struct AgreementReport {
  std::uint64_t samples = 0;
  std::uint64_t used = 0;  // off-curve samples actually compared
  std::uint64_t disagreements = 0;
  std::optional<Vec2> first_disagreement;
};

/**
 * Samples seeded-random points over the labeled grid and compares the ray
 * cast verdict with the flood-fill label; points on or next to the curve
 * are skipped. The two methods share no code path, so agreement is a real
 * cross-check.
 */
AgreementReport pip_flood_agreement(const PlanarCurve& curve,
                                    const RegionLabeling& labeling,
                                    std::uint64_t samples, std::uint64_t seed,
                                    bool parallel = true);

}  // namespace proxitop
