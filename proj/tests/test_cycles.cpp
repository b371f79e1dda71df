#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "proxitop/cycles.hpp"
#include "proxitop/errors.hpp"
#include "proxitop/gf2.hpp"
#include "support/fixtures.hpp"
#include "support/reference.hpp"

using namespace proxitop;

namespace {

bool has_kind(const CycleValidationReport& r, const std::string& kind) {
  for (const auto& v : r.violations)
    if (v.kind == kind) return true;
  return false;
}

// Three triangles clasped at the origin.
CycleSystem butterfly() {
  auto tri = [](Vec2 a, Vec2 b) {
    PathCycle c;
    c.vertices = {{0, {0, 0}}, {1, a}, {2, b}};
    c.edges = {{0, 1, {{0, 0}, a}}, {1, 2, {a, b}}, {2, 0, {b, {0, 0}}}};
    return c;
  };
  CycleSystem sys;
  sys.cycles.push_back(tri({2, 1}, {2, -1}));
  sys.cycles.push_back(tri({-2, 1}, {-2, -1}));
  sys.cycles.push_back(tri({1, 2}, {-1, 2}));
  return sys;
}

// The simplices of a loop-free multigraph, for the boundary-matrix oracle.
std::vector<std::vector<int>> graph_simplices(const Graph& g) {
  std::vector<std::vector<int>> out;
  for (int v = 0; v < g.vertex_count(); ++v) out.push_back({v});
  for (const auto& [u, v] : g.edges) out.push_back({std::min(u, v), std::max(u, v)});
  return out;
}

}  // namespace

TEST_CASE("well drawn cycles validate under both kinds") {
  const PathCycle sq = fx::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(validate_cycle(sq, CycleKind::simple).valid);
  CHECK(validate_cycle(sq, CycleKind::multi).valid);
  for (const PathCycle& c : butterfly().cycles)
    CHECK(validate_cycle(c, CycleKind::simple).valid);
}

TEST_CASE("a missing edge reads as an open chain with an exposed end") {
  PathCycle sq = fx::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  sq.edges.erase(sq.edges.begin() + 1);  // drop 1 -> 2
  const CycleValidationReport r = validate_cycle(sq, CycleKind::simple);
  CHECK_FALSE(r.valid);
  CHECK(has_kind(r, "open_chain"));
  CHECK(has_kind(r, "end_vertex"));
}

TEST_CASE("a polyline that misses its vertex breaks the chain") {
  PathCycle sq = fx::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  sq.edges[2].polyline.back() = {0.25, 1.0};  // no longer lands on vertex 3
  const CycleValidationReport r = validate_cycle(sq, CycleKind::multi);
  CHECK_FALSE(r.valid);
  CHECK(has_kind(r, "open_chain"));
}

TEST_CASE("a crossing stroke is flagged only for the simple kind") {
  const PathCycle bowtie = fx::polygon({{0, 0}, {2, 2}, {2, 0}, {0, 2}});
  const CycleValidationReport r = validate_cycle(bowtie, CycleKind::simple);
  CHECK_FALSE(r.valid);
  CHECK(has_kind(r, "self_intersection"));
  CHECK(validate_cycle(bowtie, CycleKind::multi).valid);
}

TEST_CASE("parallel edges are a multi-cycle privilege") {
  PathCycle digon;
  digon.vertices = {{0, {0, 0}}, {1, {1, 0}}};
  digon.edges = {{0, 1, {{0, 0}, {1, 0}}},
                 {1, 0, {{1, 0}, {0.5, 0.5}, {0, 0}}}};
  const CycleValidationReport r = validate_cycle(digon, CycleKind::simple);
  CHECK_FALSE(r.valid);
  CHECK(has_kind(r, "multiplicity_forbidden"));
  CHECK(validate_cycle(digon, CycleKind::multi).valid);
}

TEST_CASE("edges may only join consecutive vertices") {
  PathCycle sq = fx::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  sq.edges.push_back({0, 2, {{0, 0}, {1, 1}}});
  const CycleValidationReport r = validate_cycle(sq, CycleKind::multi);
  CHECK_FALSE(r.valid);
  CHECK(has_kind(r, "stray_edge"));
}

TEST_CASE("malformed cycles throw instead of reporting") {
  CHECK_THROWS_AS(validate_cycle(PathCycle{}, CycleKind::simple), InvalidCycle);

  PathCycle dup = fx::polygon({{0, 0}, {1, 0}, {1, 1}});
  dup.vertices[2].id = 0;
  CHECK_THROWS_AS(validate_cycle(dup, CycleKind::simple), InvalidCycle);

  PathCycle ghost = fx::polygon({{0, 0}, {1, 0}, {1, 1}});
  ghost.edges[0].to_v = 9;
  CHECK_THROWS_AS(validate_cycle(ghost, CycleKind::simple), InvalidCycle);

  PathCycle stub = fx::polygon({{0, 0}, {1, 0}, {1, 1}});
  stub.edges[1].polyline = {{1, 0}};
  CHECK_THROWS_AS(validate_cycle(stub, CycleKind::simple), InvalidCycle);
}

TEST_CASE("welding merges vertices that share exact coordinates") {
  const Graph one = to_graph(fx::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK(one.vertex_count() == 4);
  CHECK(one.edge_count() == 4);

  const Graph wedge2 = to_graph(fx::wedge(2));
  CHECK(wedge2.vertex_count() == 5);  // 3 + 3 - shared origin
  CHECK(wedge2.edge_count() == 6);

  const Graph bfly = to_graph(butterfly());
  CHECK(bfly.vertex_count() == 7);
  CHECK(bfly.edge_count() == 9);

  CHECK_THROWS_AS(to_graph(CycleSystem{}), InvalidCycle);
}

TEST_CASE("component and loop counts match the boundary-matrix oracle") {
  const BettiPair square = betti_graph(to_graph(fx::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})));
  CHECK(square.beta0 == 1);
  CHECK(square.beta1 == 1);

  const BettiPair bfly = betti_graph(to_graph(butterfly()));
  CHECK(bfly.beta0 == 1);
  CHECK(bfly.beta1 == 3);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph tree = fx::random_tree(3 + static_cast<int>(seed % 6), seed);
    const BettiPair bp = betti_graph(tree);
    CHECK(bp.beta0 == 1);
    CHECK(bp.beta1 == 0);
    const ref::BettiTriple naive = ref::betti_naive(graph_simplices(tree));
    CHECK(bp.beta0 == naive.b0);
    CHECK(bp.beta1 == naive.b1);
  }
  for (int n : {3, 5, 8}) {
    const Graph g = fx::cycle_graph(n);
    const BettiPair bp = betti_graph(g);
    const ref::BettiTriple naive = ref::betti_naive(graph_simplices(g));
    CHECK(bp.beta0 == naive.b0);
    CHECK(bp.beta1 == naive.b1);
  }
  const ref::BettiTriple naive = ref::betti_naive(graph_simplices(to_graph(butterfly())));
  CHECK(naive.b0 == 1);
  CHECK(naive.b1 == 3);

  // Two separated squares: the weld keeps them apart.
  CycleSystem pair;
  pair.cycles.push_back(fx::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  pair.cycles.push_back(fx::polygon({{5, 5}, {6, 5}, {6, 6}, {5, 6}}));
  const BettiPair two = betti_graph(to_graph(pair));
  CHECK(two.beta0 == 2);
  CHECK(two.beta1 == 2);
}

TEST_CASE("presentations list one closed walk per independent loop") {
  const PresentationSummary none = free_group_presentation(fx::path_graph(5));
  CHECK(none.generator_count == 0);

  const Graph hexa = fx::cycle_graph(6);
  const PresentationSummary one = free_group_presentation(hexa);
  CHECK(one.generator_count == 1);
  REQUIRE(one.generators.size() == 1);
  const auto& walk = one.generators.front();
  REQUIRE(walk.size() >= 2);
  CHECK(walk.front() == walk.back());
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    const bool adjacent =
        std::any_of(hexa.edges.begin(), hexa.edges.end(), [&](const auto& e) {
          return (e.first == walk[i] && e.second == walk[i + 1]) ||
                 (e.second == walk[i] && e.first == walk[i + 1]);
        });
    CHECK(adjacent);
  }

  const PresentationSummary bfly = free_group_presentation(to_graph(butterfly()));
  CHECK(bfly.generator_count == 3);
  CHECK(bfly.generator_count == betti_graph(to_graph(butterfly())).beta1);

  Graph split = fx::path_graph(3);
  split.positions.push_back({9, 9});
  CHECK_THROWS_AS(free_group_presentation(split), Disconnected);
}

TEST_CASE("a clasp is the unique vertex shared by all cycles") {
  const CommonVertex cv = system_common_vertex(butterfly());
  CHECK(cv.position.x == 0.0);
  CHECK(cv.position.y == 0.0);
  const CommonVertex w3 = system_common_vertex(fx::wedge(3));
  CHECK(w3.position.x == 0.0);

  CycleSystem apart;
  apart.cycles.push_back(fx::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  apart.cycles.push_back(fx::polygon({{5, 5}, {6, 5}, {6, 6}, {5, 6}}));
  CHECK_THROWS_AS(system_common_vertex(apart), NoCommonVertex);

  CycleSystem hinge;  // two squares sharing a whole edge
  hinge.cycles.push_back(fx::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  hinge.cycles.push_back(fx::polygon({{1, 0}, {2, 0}, {2, 1}, {1, 1}}));
  CHECK_THROWS_AS(system_common_vertex(hinge), MultipleCommonVertices);
}

TEST_CASE("word-packed rank agrees with dense elimination") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::uint64_t state = seed;
    const int rows = 1 + static_cast<int>(fx::unit(state) * 20);
    const int cols = 1 + static_cast<int>(fx::unit(state) * 30);
    Gf2Matrix m(rows, cols);
    std::vector<std::vector<int>> dense(static_cast<std::size_t>(rows),
                                        std::vector<int>(static_cast<std::size_t>(cols), 0));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (fx::unit(state) < 0.4) {
          m.set(r, c);
          dense[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = 1;
        }
    CHECK(m.rank() == ref::rank_mod2(dense));
  }
}
