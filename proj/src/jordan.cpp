#include "proxitop/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "proxitop/axioms.hpp"
#include "proxitop/errors.hpp"

namespace proxitop {

namespace {

// Fractional part of the grid offset: irrational, so grid lines never land
// on the rational coordinates fixtures are built from, at any resolution.
constexpr double kGridShift = 2.0 + 0.35355339059327373;  // 2 + sqrt(2)/4

std::map<int, int> cycle_index(const PathCycle& cycle) {
  if (cycle.vertices.empty()) throw InvalidCycle("cycle has no vertices");
  std::map<int, int> index;
  for (int i = 0; i < static_cast<int>(cycle.vertices.size()); ++i)
    if (!index.emplace(cycle.vertices[i].id, i).second)
      throw InvalidCycle("duplicate vertex id " + std::to_string(cycle.vertices[i].id));
  for (int e = 0; e < static_cast<int>(cycle.edges.size()); ++e) {
    const PathEdge& edge = cycle.edges[e];
    if (!index.count(edge.from_v) || !index.count(edge.to_v))
      throw InvalidCycle("edge " + std::to_string(e) + " references an unknown vertex");
    if (edge.polyline.size() < 2)
      throw InvalidCycle("edge " + std::to_string(e) + " has fewer than two polyline points");
  }
  return index;
}

std::pair<int, int> unordered_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

void append_polyline(PlanarCurve& curve, const std::vector<Vec2>& pts) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i] != pts[i + 1]) curve.segments.push_back({pts[i], pts[i + 1]});
}

void expand_bounds(PlanarCurve& curve) {
  if (curve.segments.empty()) return;
  curve.bounds = BBox::of_point(curve.segments.front().a);
  for (const Segment& s : curve.segments) {
    curve.bounds.expand(s.a);
    curve.bounds.expand(s.b);
  }
}

}  // namespace

PlanarCurve realize_curve(const PathCycle& cycle) {
  const std::map<int, int> index = cycle_index(cycle);
  const int n = static_cast<int>(cycle.vertices.size());

  std::map<std::pair<int, int>, std::vector<int>> edges_on_pair;
  for (int e = 0; e < static_cast<int>(cycle.edges.size()); ++e)
    edges_on_pair[unordered_pair(cycle.edges[e].from_v, cycle.edges[e].to_v)].push_back(e);

  bool traversable = static_cast<int>(cycle.edges.size()) == n;
  for (int i = 0; traversable && i < n; ++i) {
    const auto pair =
        unordered_pair(cycle.vertices[static_cast<std::size_t>(i)].id,
                       cycle.vertices[static_cast<std::size_t>((i + 1) % n)].id);
    const auto it = edges_on_pair.find(pair);
    if (it == edges_on_pair.end() || it->second.size() != 1) traversable = false;
  }

  PlanarCurve curve;
  if (traversable) {
    for (int i = 0; i < n; ++i) {
      const int a = cycle.vertices[static_cast<std::size_t>(i)].id;
      const int b = cycle.vertices[static_cast<std::size_t>((i + 1) % n)].id;
      const int e = edges_on_pair.at(unordered_pair(a, b)).front();
      std::vector<Vec2> pts = cycle.edges[static_cast<std::size_t>(e)].polyline;
      if (cycle.edges[static_cast<std::size_t>(e)].from_v != a)
        std::reverse(pts.begin(), pts.end());
      append_polyline(curve, pts);
    }
  } else {
    for (const PathEdge& edge : cycle.edges) append_polyline(curve, edge.polyline);
  }
  expand_bounds(curve);
  return curve;
}

PlanarCurve realize_curve(const CycleSystem& system) {
  if (system.cycles.empty()) throw InvalidCycle("system has no cycles");
  PlanarCurve curve;
  for (const PathCycle& c : system.cycles) {
    const PlanarCurve part = realize_curve(c);
    curve.segments.insert(curve.segments.end(), part.segments.begin(),
                          part.segments.end());
  }
  expand_bounds(curve);
  return curve;
}

SimpleClosedReport is_simple_closed(const PlanarCurve& curve) {
  SimpleClosedReport report;
  const int m = static_cast<int>(curve.segments.size());
  if (m == 0) {
    report.simple_closed = false;
    report.violation = "open_chain";
    return report;
  }
  for (int i = 0; i < m; ++i) {
    const int j = (i + 1) % m;
    if (curve.segments[static_cast<std::size_t>(i)].b !=
        curve.segments[static_cast<std::size_t>(j)].a) {
      report.simple_closed = false;
      report.violation = "open_chain";
      report.seg_a = i;
      report.seg_b = j;
      return report;
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Segment& s = curve.segments[static_cast<std::size_t>(i)];
      const Segment& t = curve.segments[static_cast<std::size_t>(j)];
      const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
      bool bad;
      if (adjacent) {
        const Vec2 shared = (j == i + 1) ? t.a : s.a;
        bad = segments_conflict_beyond_point(s, t, shared);
      } else {
        bad = segments_intersect(s, t);
      }
      if (bad) {
        report.simple_closed = false;
        report.violation = "self_intersection";
        report.seg_a = i;
        report.seg_b = j;
        return report;
      }
    }
  }
  return report;
}

PathCycle outer_chain(const PathCycle& cycle) {
  const std::map<int, int> index = cycle_index(cycle);
  const int n = static_cast<int>(cycle.vertices.size());

  std::map<std::pair<int, int>, std::vector<int>> edges_on_pair;
  for (int e = 0; e < static_cast<int>(cycle.edges.size()); ++e)
    edges_on_pair[unordered_pair(cycle.edges[e].from_v, cycle.edges[e].to_v)].push_back(e);

  // Slot candidates, oriented along the traversal; a bundle shared by two
  // slots (digon) offers each slot the same edges with opposite orientation,
  // so their area contributions differ in sign and the picks separate.
  struct Candidate {
    int edge;
    double contribution;
    std::vector<Vec2> oriented;
  };
  std::vector<std::vector<Candidate>> slots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int a = cycle.vertices[static_cast<std::size_t>(i)].id;
    const int b = cycle.vertices[static_cast<std::size_t>((i + 1) % n)].id;
    const auto it = edges_on_pair.find(unordered_pair(a, b));
    if (it == edges_on_pair.end())
      throw InvalidCycle("cycle is not structurally closed between vertices " +
                         std::to_string(a) + " and " + std::to_string(b));
    for (const int e : it->second) {
      std::vector<Vec2> pts = cycle.edges[static_cast<std::size_t>(e)].polyline;
      if (cycle.edges[static_cast<std::size_t>(e)].from_v != a)
        std::reverse(pts.begin(), pts.end());
      const double c = polyline_area_contribution(pts);
      slots[static_cast<std::size_t>(i)].push_back({e, c, std::move(pts)});
    }
  }

  // Traversal orientation: whichever extreme choice encloses more area.
  auto extreme_total = [&](bool take_max) {
    double total = 0.0;
    for (const auto& slot : slots) {
      double best = slot.front().contribution;
      for (const Candidate& c : slot)
        best = take_max ? std::max(best, c.contribution) : std::min(best, c.contribution);
      total += best;
    }
    return total;
  };
  const bool take_max =
      std::abs(extreme_total(true)) >= std::abs(extreme_total(false));

  PathCycle out;
  out.vertices = cycle.vertices;
  std::vector<char> edge_used(cycle.edges.size(), 0);
  for (int i = 0; i < n; ++i) {
    auto& slot = slots[static_cast<std::size_t>(i)];
    std::stable_sort(slot.begin(), slot.end(), [take_max](const Candidate& x, const Candidate& y) {
      return take_max ? x.contribution > y.contribution : x.contribution < y.contribution;
    });
    const Candidate* pick = nullptr;
    for (const Candidate& c : slot) {
      if (!edge_used[static_cast<std::size_t>(c.edge)]) {
        pick = &c;
        break;
      }
    }
    if (!pick)
      throw InvalidCycle("not enough distinct edges to close the outer chain at slot " +
                         std::to_string(i));
    edge_used[static_cast<std::size_t>(pick->edge)] = 1;
    PathEdge edge;
    edge.from_v = cycle.vertices[static_cast<std::size_t>(i)].id;
    edge.to_v = cycle.vertices[static_cast<std::size_t>((i + 1) % n)].id;
    edge.polyline = pick->oriented;
    out.edges.push_back(std::move(edge));
  }
  return out;
}

namespace {

RegionLabeling rasterize(const PlanarCurve& curve, int resolution, int max_axis) {
  RegionLabeling lab;
  lab.resolution = resolution;
  lab.cell = 1.0 / resolution;
  lab.origin = {curve.bounds.lo.x - kGridShift * lab.cell,
                curve.bounds.lo.y - kGridShift * lab.cell};
  lab.nx = static_cast<int>(std::floor((curve.bounds.hi.x - lab.origin.x) / lab.cell)) + 3;
  lab.ny = static_cast<int>(std::floor((curve.bounds.hi.y - lab.origin.y) / lab.cell)) + 3;
  if (lab.nx > max_axis || lab.ny > max_axis)
    throw ResolutionTooCoarse("grid would exceed " + std::to_string(max_axis) +
                              " cells per axis before stabilizing");
  lab.labels.assign(static_cast<std::size_t>(lab.nx) * lab.ny, -2);

  // Mark every cell whose open interior the curve passes through: cut each
  // segment at its grid-line crossings and drop the midpoints into cells.
  std::vector<double> cuts;
  for (const Segment& s : curve.segments) {
    cuts.clear();
    cuts.push_back(0.0);
    cuts.push_back(1.0);
    const double dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
    if (std::abs(dx) > 0) {
      const int i0 = static_cast<int>(std::ceil((std::min(s.a.x, s.b.x) - lab.origin.x) / lab.cell));
      const int i1 = static_cast<int>(std::floor((std::max(s.a.x, s.b.x) - lab.origin.x) / lab.cell));
      for (int i = i0; i <= i1; ++i) {
        const double t = (lab.origin.x + i * lab.cell - s.a.x) / dx;
        if (t > 0.0 && t < 1.0) cuts.push_back(t);
      }
    }
    if (std::abs(dy) > 0) {
      const int j0 = static_cast<int>(std::ceil((std::min(s.a.y, s.b.y) - lab.origin.y) / lab.cell));
      const int j1 = static_cast<int>(std::floor((std::max(s.a.y, s.b.y) - lab.origin.y) / lab.cell));
      for (int j = j0; j <= j1; ++j) {
        const double t = (lab.origin.y + j * lab.cell - s.a.y) / dy;
        if (t > 0.0 && t < 1.0) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (cuts[k + 1] - cuts[k] <= 1e-12) continue;
      const double tm = 0.5 * (cuts[k] + cuts[k + 1]);
      const Vec2 p{s.a.x + tm * dx, s.a.y + tm * dy};
      const int cx = static_cast<int>(std::floor((p.x - lab.origin.x) / lab.cell));
      const int cy = static_cast<int>(std::floor((p.y - lab.origin.y) / lab.cell));
      if (cx >= 0 && cx < lab.nx && cy >= 0 && cy < lab.ny)
        lab.labels[static_cast<std::size_t>(cy) * lab.nx + cx] = -1;
    }
  }

  // Flood fill 4-connected free cells in scan order; the padded corner cell
  // comes first, so region 0 is the unbounded outside.
  int next_region = 0;
  std::queue<std::pair<int, int>> queue;
  for (int y = 0; y < lab.ny; ++y) {
    for (int x = 0; x < lab.nx; ++x) {
      if (lab.labels[static_cast<std::size_t>(y) * lab.nx + x] != -2) continue;
      const int region = next_region++;
      lab.labels[static_cast<std::size_t>(y) * lab.nx + x] = region;
      queue.emplace(x, y);
      while (!queue.empty()) {
        const auto [cx, cy] = queue.front();
        queue.pop();
        constexpr int delta[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : delta) {
          const int nx2 = cx + d[0], ny2 = cy + d[1];
          if (nx2 < 0 || nx2 >= lab.nx || ny2 < 0 || ny2 >= lab.ny) continue;
          int& cell = lab.labels[static_cast<std::size_t>(ny2) * lab.nx + nx2];
          if (cell != -2) continue;
          cell = region;
          queue.emplace(nx2, ny2);
        }
      }
    }
  }
  lab.region_count = next_region;
  return lab;
}

constexpr int kMaxAxisCells = 4096;

}  // namespace

RegionLabeling region_count(const PlanarCurve& curve, std::optional<int> resolution) {
  if (curve.segments.empty()) throw InvalidCycle("curve has no segments");
  if (resolution) {
    if (*resolution < 1) throw ResolutionTooCoarse("resolution must be at least 1");
    RegionLabeling lab = rasterize(curve, *resolution, kMaxAxisCells);
    if (lab.region_count < 2)
      throw ResolutionTooCoarse("no bounded region resolved at resolution " +
                                std::to_string(*resolution));
    return lab;
  }

  double min_len = std::numeric_limits<double>::infinity();
  for (const Segment& s : curve.segments) min_len = std::min(min_len, s.length());
  int res = std::max(1, static_cast<int>(std::ceil(8.0 / min_len)));

  RegionLabeling coarse = rasterize(curve, res, kMaxAxisCells);
  while (true) {
    RegionLabeling fine = rasterize(curve, res * 2, kMaxAxisCells);
    if (coarse.region_count == fine.region_count && fine.region_count >= 2)
      return fine;
    res *= 2;
    coarse = std::move(fine);
  }
}

CommonBoundaryReport common_boundary_check(const RegionLabeling& labeling) {
  if (labeling.region_count != 2)
    throw RegionCountNotTwo("labeling has " + std::to_string(labeling.region_count) +
                            " regions");
  // Every curve cell must reach both regions along the curve itself: a cell
  // 8-adjacent to a region cell has direct contact, and contact propagates
  // between 8-adjacent curve cells.  Direct adjacency alone is too brittle: a
  // polygon corner whose vertex lands near a cell edge leaves an apex cell
  // whose entire 8-neighborhood is the other region plus the two converging
  // strokes, at any resolution.  A stray curve cell islanded inside one
  // region still fails, because no curve path connects it to the other.
  const int total = labeling.nx * labeling.ny;
  std::vector<unsigned char> reached[2] = {std::vector<unsigned char>(total, 0),
                                           std::vector<unsigned char>(total, 0)};
  for (int region = 0; region < 2; ++region) {
    std::queue<int> frontier;
    for (int y = 0; y < labeling.ny; ++y) {
      for (int x = 0; x < labeling.nx; ++x) {
        if (labeling.label_at(x, y) != -1) continue;
        bool contact = false;
        for (int dy = -1; dy <= 1 && !contact; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx2 = x + dx, ny2 = y + dy;
            if (nx2 < 0 || nx2 >= labeling.nx || ny2 < 0 || ny2 >= labeling.ny) continue;
            if (labeling.label_at(nx2, ny2) == region) {
              contact = true;
              break;
            }
          }
        }
        if (contact) {
          reached[region][y * labeling.nx + x] = 1;
          frontier.push(y * labeling.nx + x);
        }
      }
    }
    while (!frontier.empty()) {
      const int cell = frontier.front();
      frontier.pop();
      const int cx = cell % labeling.nx, cy = cell / labeling.nx;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx2 = cx + dx, ny2 = cy + dy;
          if (nx2 < 0 || nx2 >= labeling.nx || ny2 < 0 || ny2 >= labeling.ny) continue;
          const int idx = ny2 * labeling.nx + nx2;
          if (labeling.labels[idx] != -1 || reached[region][idx]) continue;
          reached[region][idx] = 1;
          frontier.push(idx);
        }
      }
    }
  }
  CommonBoundaryReport report;
  for (int y = 0; y < labeling.ny; ++y) {
    for (int x = 0; x < labeling.nx; ++x) {
      if (labeling.label_at(x, y) != -1) continue;
      const int idx = y * labeling.nx + x;
      if (!reached[0][idx] || !reached[1][idx]) {
        report.ok = false;
        report.cell_x = x;
        report.cell_y = y;
        return report;
      }
    }
  }
  return report;
}

PointSide point_in_polygon(const Vec2& p, const PlanarCurve& curve) {
  for (const Segment& s : curve.segments)
    if (segment_point_distance(s.a, s.b, p) <= kTol) return PointSide::on;
  bool inside = false;
  for (const Segment& s : curve.segments) {
    // Half-open in y, so a ray through a joint counts its segments once.
    if ((s.a.y > p.y) == (s.b.y > p.y)) continue;
    const double x_hit = s.a.x + (p.y - s.a.y) * (s.b.x - s.a.x) / (s.b.y - s.a.y);
    if (x_hit > p.x) inside = !inside;
  }
  return inside ? PointSide::inside : PointSide::outside;
}

std::string grid_dump(const RegionLabeling& labeling) {
  std::string out;
  out.reserve(static_cast<std::size_t>(labeling.ny) * (labeling.nx + 1));
  for (int y = labeling.ny - 1; y >= 0; --y) {
    for (int x = 0; x < labeling.nx; ++x) {
      const int lbl = labeling.label_at(x, y);
      if (lbl == -1)
        out += '#';
      else if (lbl == 0)
        out += '.';
      else if (lbl <= 26)
        out += static_cast<char>('a' + lbl - 1);
      else
        out += '?';
    }
    out += '\n';
  }
  return out;
}

namespace {

ConstituentResult check_chain(const PlanarCurve& curve, const JordanConfig& cfg) {
  ConstituentResult r;
  const SimpleClosedReport simple = is_simple_closed(curve);
  r.simple_closed = simple.simple_closed;
  r.violation = simple.violation;
  if (!simple.simple_closed) return r;
  const RegionLabeling lab = region_count(curve, cfg.resolution);
  r.region_count = lab.region_count;
  r.resolution = lab.resolution;
  if (lab.region_count == 2) r.common_boundary = common_boundary_check(lab).ok;
  return r;
}

std::string constituent_detail(const ConstituentResult& r) {
  if (!r.simple_closed) return "not a simple closed chain (" + r.violation + ")";
  return "regions: " + std::to_string(r.region_count) +
         ", common boundary: " + (r.common_boundary ? "yes" : "no") +
         " (resolution " + std::to_string(r.resolution) + ")";
}

}  // namespace

JordanReport jordan_check(const PathCycle& cycle, CycleKind kind, const JordanConfig& cfg) {
  JordanReport report;
  report.kind = kind == CycleKind::simple ? "cycle" : "multi";

  const PathCycle chain = kind == CycleKind::simple ? cycle : outer_chain(cycle);
  const ConstituentResult r = check_chain(realize_curve(chain), cfg);
  report.constituents.push_back(r);

  JordanClause clause;
  clause.name = kind == CycleKind::simple ? "simple_cycle_separation"
                                          : "outer_boundary_separation";
  clause.applicable = true;
  clause.passed = r.simple_closed && r.region_count == 2 && r.common_boundary;
  clause.detail = constituent_detail(r);
  report.clauses.push_back(std::move(clause));
  return report;
}

JordanReport jordan_check(const CycleSystem& system, const JordanConfig& cfg) {
  if (system.cycles.empty()) throw InvalidCycle("system has no cycles");
  JordanReport report;
  report.kind = "system";

  JordanClause clasp;
  clasp.name = "shared_vertex";
  clasp.applicable = true;
  try {
    const CommonVertex v = system_common_vertex(system);
    clasp.passed = true;
    clasp.detail = "all cycles meet at one vertex, graph index " +
                   std::to_string(v.graph_index);
  } catch (const ToolkitError& e) {
    clasp.passed = false;
    clasp.detail = e.what();
  }
  report.clauses.push_back(std::move(clasp));

  const int count = static_cast<int>(system.cycles.size());
  report.constituents.resize(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));

  int nthreads = 1;
#ifdef _OPENMP
  if (cfg.parallel) nthreads = omp_get_max_threads();
#endif
#pragma omp parallel for schedule(dynamic) num_threads(nthreads) \
    if (cfg.parallel && nthreads > 1)
  for (int i = 0; i < count; ++i) {
    try {
      const PathCycle& c = system.cycles[static_cast<std::size_t>(i)];
      const PathCycle chain =
          validate_cycle(c, CycleKind::simple).valid ? c : outer_chain(c);
      report.constituents[static_cast<std::size_t>(i)] =
          check_chain(realize_curve(chain), cfg);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  JordanClause per;
  per.name = "per_constituent_separation";
  per.applicable = true;
  per.passed = true;
  for (int i = 0; i < count; ++i) {
    const ConstituentResult& r = report.constituents[static_cast<std::size_t>(i)];
    if (!(r.simple_closed && r.region_count == 2 && r.common_boundary)) per.passed = false;
    if (!per.detail.empty()) per.detail += "; ";
    per.detail += "cycle " + std::to_string(i) + ": " + constituent_detail(r);
  }
  report.clauses.push_back(std::move(per));

  const RegionLabeling union_lab = region_count(realize_curve(system), cfg.resolution);
  report.union_region_count = union_lab.region_count;
  JordanClause uni;
  uni.name = "union_regions";
  uni.applicable = true;
  uni.passed = true;
  uni.detail = "the union splits the plane into " +
               std::to_string(union_lab.region_count) +
               " regions; it is not itself a simple curve at the shared vertex, so "
               "separation is verified per constituent";
  report.clauses.push_back(std::move(uni));
  return report;
}

JordanReport jordan_check(const CycleSystem& system, const Cover& cover,
                          const GoodCoverConfig& cover_cfg, const JordanConfig& cfg) {
  JordanReport report = jordan_check(system, cfg);
  report.kind = "cover";

  const GoodCoverReport goodness = is_good_cover(cover, cover_cfg);
  JordanClause clause;
  clause.name = goodness.mode + "_good_cover";
  clause.applicable = true;
  clause.passed = goodness.good;
  clause.detail = goodness.good
                      ? "all " + std::to_string(goodness.subfamilies_checked) +
                            " examined subfamily intersections are contractible"
                      : std::to_string(goodness.failure_count) +
                            " subfamily intersection(s) fail to contract";
  report.clauses.push_back(std::move(clause));
  return report;
}

AgreementReport pip_flood_agreement(const PlanarCurve& curve,
                                    const RegionLabeling& labeling,
                                    std::uint64_t samples, std::uint64_t seed,
                                    bool parallel) {
  AgreementReport report;
  report.samples = samples;

  const double width = labeling.nx * labeling.cell;
  const double height = labeling.ny * labeling.cell;

  int nthreads = 1;
#ifdef _OPENMP
  if (parallel) nthreads = omp_get_max_threads();
#endif
  struct FirstHit {
    std::uint64_t index = ~std::uint64_t{0};
    Vec2 p;
  };
  std::vector<FirstHit> first(static_cast<std::size_t>(nthreads));
  std::uint64_t used = 0, disagreements = 0;
  const std::int64_t total = static_cast<std::int64_t>(samples);

#pragma omp parallel for schedule(static) num_threads(nthreads) \
    reduction(+ : used, disagreements) if (parallel && nthreads > 1)
  for (std::int64_t i = 0; i < total; ++i) {
    int tid = 0;
#ifdef _OPENMP
    tid = omp_get_thread_num();
#endif
    const std::uint64_t s =
        splitmix64(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1));
    const double ux = static_cast<double>(splitmix64(s)) / 18446744073709551616.0;
    const double uy =
        static_cast<double>(splitmix64(s ^ 0x2545f4914f6cdd1dULL)) / 18446744073709551616.0;
    const Vec2 p{labeling.origin.x + ux * width, labeling.origin.y + uy * height};

    // Off-curve means clear of the drawn segments by a full cell.
    double dmin = std::numeric_limits<double>::infinity();
    for (const Segment& seg : curve.segments)
      dmin = std::min(dmin, segment_point_distance(seg.a, seg.b, p));
    if (dmin <= labeling.cell) continue;

    const int cx = static_cast<int>(std::floor((p.x - labeling.origin.x) / labeling.cell));
    const int cy = static_cast<int>(std::floor((p.y - labeling.origin.y) / labeling.cell));
    if (cx < 0 || cx >= labeling.nx || cy < 0 || cy >= labeling.ny) continue;
    const int lbl = labeling.label_at(cx, cy);
    if (lbl < 0) continue;
    ++used;

    const PointSide side = point_in_polygon(p, curve);
    const bool flood_inside = lbl != 0;
    const bool pip_inside = side == PointSide::inside;
    if (side == PointSide::on || flood_inside != pip_inside) {
      ++disagreements;
      FirstHit& mine = first[static_cast<std::size_t>(tid)];
      if (static_cast<std::uint64_t>(i) < mine.index) {
        mine.index = static_cast<std::uint64_t>(i);
        mine.p = p;
      }
    }
  }

  report.used = used;
  report.disagreements = disagreements;
  FirstHit best;
  for (const FirstHit& f : first)
    if (f.index < best.index) best = f;
  if (best.index != ~std::uint64_t{0}) report.first_disagreement = best.p;
  return report;
}

}  // namespace proxitop
