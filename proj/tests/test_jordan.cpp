#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "proxitop/errors.hpp"
#include "proxitop/jordan.hpp"
#include "support/fixtures.hpp"
#include "support/reference.hpp"

using namespace proxitop;

namespace {

const PathCycle kSquare = fx::polygon({{0, 0}, {4, 0}, {4, 4}, {0, 4}});

PathCycle bowtie() { return fx::polygon({{0, 0}, {2, 2}, {2, 0}, {0, 2}}); }

PathCycle open_square() {
  PathCycle c = kSquare;
  c.edges.pop_back();
  return c;
}

// Two parallel arcs between the same endpoints: a flat chord and a rounded
// bulge; the outer chain must pick the bulge. The bulge is rounded so the
// enclosed lens has no spike the raster checks would balk at.
PathCycle digon() {
  PathCycle c;
  c.vertices = {{0, {0, 0}}, {1, {4, 0}}};
  c.edges = {{0, 1, {{0, 0}, {4, 0}}},
             {1, 0, {{4, 0}, {3.8, 1.2}, {3, 2.2}, {2, 2.6}, {1, 2.2}, {0.2, 1.2}, {0, 0}}}};
  return c;
}

}  // namespace

TEST_CASE("realized curves keep traversal order") {
  const PlanarCurve sq = realize_curve(kSquare);
  CHECK(sq.segments.size() == 4);
  CHECK(sq.segments.front().a.x == 0.0);
  CHECK(sq.bounds.lo.x == 0.0);
  CHECK(sq.bounds.hi.y == 4.0);
  CHECK_THROWS_AS(realize_curve(PathCycle{}), InvalidCycle);
}

TEST_CASE("simplicity scan separates honest loops from crossings and gaps") {
  CHECK(is_simple_closed(realize_curve(kSquare)).simple_closed);

  const SimpleClosedReport crossed = is_simple_closed(realize_curve(bowtie()));
  CHECK_FALSE(crossed.simple_closed);
  CHECK(crossed.violation == "self_intersection");
  CHECK(crossed.seg_a >= 0);
  CHECK(crossed.seg_b > crossed.seg_a);

  const SimpleClosedReport open = is_simple_closed(realize_curve(open_square()));
  CHECK_FALSE(open.simple_closed);
  CHECK(open.violation == "open_chain");

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PathCycle poly = fx::random_simple_polygon(
        5 + static_cast<int>(seed % 12), seed);
    CHECK(is_simple_closed(realize_curve(poly)).simple_closed);
  }
}

TEST_CASE("the outer chain picks the bulged edge of each bundle") {
  const PathCycle outer = outer_chain(digon());
  REQUIRE(outer.edges.size() == 2);
  // One edge per consecutive pair, and the rounded arc survived.
  bool has_arc = false;
  for (const PathEdge& e : outer.edges)
    if (e.polyline.size() > 2) has_arc = true;
  CHECK(has_arc);
  CHECK(validate_cycle(outer, CycleKind::multi).valid);
}

TEST_CASE("a square splits the plane into exactly two regions") {
  const PlanarCurve sq = realize_curve(kSquare);
  const RegionLabeling coarse = region_count(sq, 4);
  CHECK(coarse.region_count == 2);
  CHECK(coarse.resolution == 4);

  const RegionLabeling autores = region_count(sq);
  CHECK(autores.region_count == 2);
  CHECK(common_boundary_check(autores).ok);

  // Region 0 is the unbounded outside: the corner cell must carry it.
  CHECK(autores.label_at(0, 0) == 0);

  const std::string dump = grid_dump(coarse);
  CHECK(dump.find('#') != std::string::npos);
  CHECK(dump.find('a') != std::string::npos);
  CHECK(dump.find('.') != std::string::npos);
}

TEST_CASE("degenerate drawings cannot stabilize a bounded region") {
  // A spike with no interior: out along a line and straight back.
  PathCycle spike;
  spike.vertices = {{0, {0, 0}}, {1, {1, 0}}};
  spike.edges = {{0, 1, {{0, 0}, {1, 0}}}, {1, 0, {{1, 0}, {0, 0}}}};
  CHECK_THROWS_AS(region_count(realize_curve(spike)), ResolutionTooCoarse);

  const RegionLabeling one = region_count(realize_curve(kSquare), 4);
  RegionLabeling hacked = one;
  hacked.region_count = 3;
  CHECK_THROWS_AS(common_boundary_check(hacked), RegionCountNotTwo);
}

TEST_CASE("a stray curve cell stranded in the outside breaks the common boundary") {
  RegionLabeling lab = region_count(realize_curve(kSquare), 4);
  REQUIRE(common_boundary_check(lab).ok);

  // Find an outside cell whose whole 8-neighborhood is also outside, then
  // flip it to a curve cell: no curve path can hand it interior contact.
  int sx = -1, sy = -1;
  for (int y = 0; y < lab.ny && sx < 0; ++y) {
    for (int x = 0; x < lab.nx; ++x) {
      bool clear = true;
      for (int dy = -1; dy <= 1 && clear; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx2 = x + dx, ny2 = y + dy;
          if (nx2 < 0 || nx2 >= lab.nx || ny2 < 0 || ny2 >= lab.ny) continue;
          if (lab.label_at(nx2, ny2) != 0) {
            clear = false;
            break;
          }
        }
      if (clear) {
        sx = x;
        sy = y;
        break;
      }
    }
  }
  REQUIRE(sx >= 0);
  lab.labels[sy * lab.nx + sx] = -1;
  const CommonBoundaryReport spur = common_boundary_check(lab);
  CHECK_FALSE(spur.ok);
  CHECK(spur.cell_x == sx);
  CHECK(spur.cell_y == sy);
}

TEST_CASE("ray casting agrees with the winding oracle and the raster") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const PathCycle poly = fx::random_simple_polygon(
        5 + static_cast<int>(seed % 16), seed * 7);
    const PlanarCurve curve = realize_curve(poly);
    std::uint64_t state = seed;
    for (int i = 0; i < 400; ++i) {
      const Vec2 p{-5.0 + 10.0 * fx::unit(state), -5.0 + 10.0 * fx::unit(state)};
      const PointSide side = point_in_polygon(p, curve);
      if (side == PointSide::on) continue;
      CHECK((side == PointSide::inside) == ref::inside_winding(curve, p));
    }
  }
}

TEST_CASE("flood fill and ray casting never disagree off the curve") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const PathCycle poly = fx::random_simple_polygon(
        6 + static_cast<int>(seed % 10), seed * 13);
    const PlanarCurve curve = realize_curve(poly);
    const RegionLabeling labeling = region_count(curve);
    const AgreementReport rep = pip_flood_agreement(curve, labeling, 4000, seed);
    CHECK(rep.samples == 4000);
    CHECK(rep.used > 0);
    CHECK(rep.disagreements == 0);
    CHECK_FALSE(rep.first_disagreement.has_value());
  }
}

TEST_CASE("the cycle-level verdict bundles all three clauses") {
  const JordanReport good = jordan_check(kSquare, CycleKind::simple);
  CHECK(good.kind == "cycle");
  CHECK(good.all_passed());
  REQUIRE(good.constituents.size() == 1);
  CHECK(good.constituents.front().simple_closed);
  CHECK(good.constituents.front().region_count == 2);
  CHECK(good.constituents.front().common_boundary);

  const JordanReport crossed = jordan_check(bowtie(), CycleKind::simple);
  CHECK_FALSE(crossed.all_passed());
  CHECK(crossed.constituents.front().violation == "self_intersection");

  // The digon fails as a simple cycle but its outer chain splits the plane.
  const JordanReport multi = jordan_check(digon(), CycleKind::multi);
  CHECK(multi.kind == "multi");
  CHECK(multi.all_passed());
}

TEST_CASE("system reports cover every constituent plus the union") {
  CycleSystem two;
  two.cycles.push_back(fx::polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
  two.cycles.push_back(fx::polygon({{2, 2}, {4, 2}, {4, 4}, {2, 4}}));

  const JordanReport rep = jordan_check(two);
  CHECK(rep.kind == "system");
  REQUIRE(rep.constituents.size() == 2);
  for (const ConstituentResult& c : rep.constituents) {
    CHECK(c.simple_closed);
    CHECK(c.region_count == 2);
    CHECK(c.common_boundary);
  }
  CHECK(rep.union_region_count == 3);
  CHECK(rep.all_passed());
}

TEST_CASE("the cover overload folds goodness into the verdict") {
  CycleSystem corner;  // two squares clasped at (2,2)
  corner.cycles.push_back(fx::polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
  corner.cycles.push_back(fx::polygon({{2, 2}, {4, 2}, {4, 4}, {2, 4}}));
  const Graph g = to_graph(corner);
  std::vector<Subset> elements;
  for (const PathCycle& c : corner.cycles) {
    std::vector<int> ids;
    for (const CycleVertex& v : c.vertices)
      for (int i = 0; i < g.vertex_count(); ++i)
        if (g.positions[static_cast<std::size_t>(i)].x == v.xy.x &&
            g.positions[static_cast<std::size_t>(i)].y == v.xy.y)
          ids.push_back(i);
    elements.push_back(Subset(std::move(ids)));
  }
  const Cover loops(g, elements);

  GoodCoverConfig no_singles;
  no_singles.include_singletons = false;
  const JordanReport ok = jordan_check(corner, loops, no_singles);
  CHECK(ok.kind == "cover");
  CHECK(ok.all_passed());

  GoodCoverConfig with_singles;  // each loop element fails to contract
  const JordanReport bad = jordan_check(corner, loops, with_singles);
  CHECK_FALSE(bad.all_passed());
}
