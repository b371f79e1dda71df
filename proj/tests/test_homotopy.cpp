#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <memory>
#include <vector>

#include "proxitop/errors.hpp"
#include "proxitop/homotopy.hpp"
#include "support/fixtures.hpp"

using namespace proxitop;

namespace {

// Every pair of points is near, so any frame sequence deforms continuously
// and random endomaps are automatically nearness preserving.
std::shared_ptr<const Space> blob(int n, std::uint64_t seed) {
  std::uint64_t state = seed;
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i)
    pts.push_back({i, {fx::unit(state) * 8.0, fx::unit(state) * 8.0}});
  return std::make_shared<Space>(std::move(pts), 12.0);
}

SpaceMap random_endomap(const std::shared_ptr<const Space>& sp, std::uint64_t seed) {
  std::uint64_t state = seed;
  std::map<int, int> a;
  const int n = static_cast<int>(sp->size());
  for (const Point& p : sp->points())
    a[p.id] = sp->point_at(static_cast<int>(fx::unit(state) * n) % n).id;
  return SpaceMap(sp, sp, std::move(a));
}

std::vector<double> uniform_grid(int len) {
  std::vector<double> g;
  for (int i = 0; i < len; ++i) g.push_back(static_cast<double>(i) / (len - 1));
  return g;
}

// Random homotopy on a blob: endpoints plus random intermediate frames.
DiscreteHomotopy random_homotopy(const std::shared_ptr<const Space>& sp,
                                 const SpaceMap& f, const SpaceMap& g, int len,
                                 std::uint64_t seed) {
  std::vector<SpaceMap> frames;
  frames.push_back(f);
  for (int i = 1; i + 1 < len; ++i) frames.push_back(random_endomap(sp, seed + i));
  frames.push_back(g);
  return DiscreteHomotopy(std::move(frames), uniform_grid(len));
}

}  // namespace

TEST_CASE("homotopy construction validates frames and grid") {
  auto sp = blob(4, 1);
  const SpaceMap id = identity_map(sp);
  CHECK_THROWS_AS(DiscreteHomotopy({id}, {0.0}), FrameMismatch);
  CHECK_THROWS_AS(DiscreteHomotopy({id, id}, {0.0}), FrameMismatch);
  CHECK_THROWS_AS(DiscreteHomotopy({id, id}, {0.0, 0.5}), FrameMismatch);
  CHECK_THROWS_AS(DiscreteHomotopy({id, id, id}, {0.0, 0.0, 1.0}), FrameMismatch);
  auto other = blob(4, 2);
  CHECK_THROWS_AS(DiscreteHomotopy({id, identity_map(other)}, {0.0, 1.0}),
                  FrameMismatch);

  const DiscreteHomotopy h({id, id, id}, {0.0, 0.25, 1.0});
  CHECK(h.default_time_scale() == doctest::Approx(0.75));
}

TEST_CASE("verification demands matching endpoints and honors pinning") {
  auto sp = blob(5, 3);
  const SpaceMap id = identity_map(sp);
  const SpaceMap c = constant_map(sp, sp, 0);
  const DiscreteHomotopy h({id, c}, {0.0, 1.0});

  CHECK_THROWS_AS(verify_homotopy(h, c, c, RelationKind::spatial), EndpointMismatch);
  CHECK_THROWS_AS(verify_homotopy(h, id, id, RelationKind::spatial), EndpointMismatch);

  // Point 0 never moves, so pinning it is fine; pinning 1 is not.
  CHECK(verify_homotopy(h, id, c, RelationKind::spatial, {}, Subset{0}).verdict);
  CHECK_THROWS_AS(verify_homotopy(h, id, c, RelationKind::spatial, {}, Subset{1}),
                  RelViolation);
}

TEST_CASE("generated homotopies verify and stay verified under reversal and concat") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto sp = blob(4 + static_cast<int>(seed % 4), seed);
    const SpaceMap f = random_endomap(sp, seed * 100 + 1);
    const SpaceMap g = random_endomap(sp, seed * 100 + 2);
    const SpaceMap e = random_endomap(sp, seed * 100 + 3);
    const DiscreteHomotopy h = random_homotopy(sp, f, g, 3, seed * 100 + 10);
    const DiscreteHomotopy k = random_homotopy(sp, g, e, 4, seed * 100 + 20);

    const HomotopyCheckReport rh = verify_homotopy(h, f, g, RelationKind::spatial);
    CHECK(rh.verdict);
    CHECK(rh.exhaustive);

    // Reflexivity via the constant homotopy, symmetry via reversal,
    // transitivity via concatenation.
    const DiscreteHomotopy refl({f, f}, {0.0, 1.0});
    CHECK(verify_homotopy(refl, f, f, RelationKind::spatial).verdict);
    CHECK(verify_homotopy(reverse(h), g, f, RelationKind::spatial).verdict);
    const DiscreteHomotopy hk = concat(h, k);
    CHECK(verify_homotopy(hk, f, e, RelationKind::spatial).verdict);
    CHECK(hk.frames().size() == h.frames().size() + k.frames().size() - 1);
  }
}

TEST_CASE("concatenation halves and splices the grids exactly") {
  auto sp = blob(4, 7);
  const SpaceMap id = identity_map(sp);
  const DiscreteHomotopy h({id, id, id}, {0.0, 0.5, 1.0});
  const DiscreteHomotopy k({id, id, id, id}, {0.0, 0.25, 0.5, 1.0});
  const DiscreteHomotopy hk = concat(h, k);
  CHECK(hk.frames().size() == 6);
  CHECK(hk.time_grid() == std::vector<double>{0.0, 0.25, 0.5, 0.625, 0.75, 1.0});

  const DiscreteHomotopy r = reverse(h);
  CHECK(r.time_grid() == std::vector<double>{0.0, 0.5, 1.0});

  const SpaceMap c = constant_map(sp, sp, 1);
  CHECK_THROWS_AS(concat(h, DiscreteHomotopy({c, c}, {0.0, 1.0})), FrameMismatch);
}

TEST_CASE("pre and post composition act frame by frame") {
  auto sp = blob(4, 9);
  const SpaceMap id = identity_map(sp);
  const SpaceMap c = constant_map(sp, sp, 2);
  const DiscreteHomotopy h({id, c}, {0.0, 1.0});

  const DiscreteHomotopy post = compose_homotopy(h, c);
  CHECK(maps_equal_pointwise(post.frames().front(), c));
  CHECK(maps_equal_pointwise(post.frames().back(), c));

  const SpaceMap swap(sp, sp, {{0, 1}, {1, 0}, {2, 2}, {3, 3}});
  const DiscreteHomotopy pre = pre_compose_homotopy(swap, h);
  CHECK(pre.frames().front().apply(0) == 1);
  CHECK(pre.frames().back().apply(0) == 2);
}

TEST_CASE("a homotopy that tears a near pair is reported, not thrown") {
  // Two clusters; the second frame maps the bridge point across the gap,
  // tearing the near pair {1},{2} apart in the joint scan.
  auto sp = std::make_shared<Space>(
      std::vector<Point>{{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}, {3, {30, 0}}}, 1.5);
  const SpaceMap id = identity_map(sp);
  const SpaceMap tear(sp, sp, {{0, 0}, {1, 3}, {2, 2}, {3, 3}});
  const DiscreteHomotopy h({id, tear}, {0.0, 1.0});
  const HomotopyCheckReport rep = verify_homotopy(h, id, tear, RelationKind::spatial);
  CHECK_FALSE(rep.verdict);
  REQUIRE(rep.counterexample.has_value());
  CHECK_FALSE(rep.counterexample->a.empty());
  CHECK_FALSE(rep.counterexample->b.empty());
}

TEST_CASE("degenerate descriptive constants admit two-frame homotopies") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    std::uint64_t state = seed;
    // Target descriptions all within eps_desc, so images are monochrome.
    std::vector<Point> pts;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 5; ++i) {
      pts.push_back({i, {fx::unit(state) * 8.0, fx::unit(state) * 8.0}});
      rows.push_back({0.5 + 0.05 * fx::unit(state)});
    }
    auto sp = std::make_shared<Space>(pts, 12.0, rows, 0.1);
    const SpaceMap d = random_endomap(sp, seed * 31);
    REQUIRE(is_degenerate_descriptive_constant(d).degenerate);
    const DiscreteHomotopy h({d, d}, {0.0, 1.0});
    CHECK(verify_homotopy(h, d, d, RelationKind::descriptive).verdict);
  }
}

TEST_CASE("paths check consecutive nearness and carry descriptions") {
  auto sp = std::make_shared<Space>(
      std::vector<Point>{{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}, {3, {3, 0}}}, 1.5,
      std::vector<std::vector<double>>{{0.0}, {1.0}, {0.0}, {1.0}}, 0.0);

  const ProximalPath walk(sp, {0, 1, 2, 3});
  CHECK(verify_path(walk, RelationKind::spatial));
  CHECK(walk.time_grid() == std::vector<double>{0.0, 1.0 / 3, 2.0 / 3, 1.0});
  CHECK(walk.start() == 0);
  CHECK(walk.end() == 3);

  const ProximalPath jump(sp, {0, 2});
  CHECK_FALSE(verify_path(jump, RelationKind::spatial));
  CHECK(verify_path(jump, RelationKind::descriptive));  // same description

  CHECK_THROWS_AS(ProximalPath(sp, {0}), InvalidMap);
  CHECK_THROWS_AS(ProximalPath(sp, {0, 9}), InvalidMap);
  CHECK_THROWS_AS(ProximalPath(sp, {0, 1}, {0.0, 0.5}), InvalidMap);

  const DescriptionSet ds = path_description(walk);
  CHECK(ds.vectors == std::vector<std::vector<double>>{{0.0}, {1.0}});
  CHECK(paths_share_description(walk, ProximalPath(sp, {2, 3})));
  CHECK_FALSE(paths_share_description(walk, jump));
}

TEST_CASE("path classes demand shared endpoints") {
  auto sp = std::make_shared<Space>(
      std::vector<Point>{{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}, {3, {3, 0}}}, 1.5,
      std::vector<std::vector<double>>{{0.0}, {1.0}, {0.0}, {1.0}}, 0.0);
  const ProximalPath a(sp, {0, 1, 2});
  const ProximalPath b(sp, {0, 3, 2});
  const PathClass cls({a, b});
  CHECK(cls.start() == 0);
  CHECK(cls.end() == 2);
  CHECK_THROWS_AS(PathClass({a, ProximalPath(sp, {0, 1})}), EndpointMismatch);
  CHECK_THROWS_AS(PathClass({}), InvalidMap);

  // a sees both colors, b sees both colors, c sees only one.
  const ProximalPath c(sp, {0, 2});
  const auto groups = group_paths_by_description({a, b, c});
  CHECK(groups == std::vector<std::vector<int>>{{0, 1}, {2}});
}

TEST_CASE("contractibility distinguishes trees from cycles") {
  CHECK(is_contractible(fx::path_graph(5)));
  CHECK_FALSE(is_contractible(fx::cycle_graph(6)));
  for (std::uint64_t seed = 1; seed <= 8; ++seed)
    CHECK(is_contractible(fx::random_tree(2 + static_cast<int>(seed), seed)));
  CHECK_THROWS_AS(is_contractible(Graph{}), NoRealization);

  // A cycle contracts descriptively when it is all one color.
  CHECK_THROWS_AS(
      is_contractible(fx::cycle_graph(4), ContractMode::descriptive), MissingProbe);
  VertexFeatures mono{1, {{0.1}, {0.1}, {0.1}, {0.1}}, 0.0};
  CHECK(is_contractible(fx::cycle_graph(4), ContractMode::descriptive, mono));
  VertexFeatures split{1, {{0.1}, {0.9}, {0.1}, {0.9}}, 0.0};
  CHECK_FALSE(is_contractible(fx::cycle_graph(4), ContractMode::descriptive, split));
  VertexFeatures wrong{1, {{0.1}, {0.1}}, 0.0};
  CHECK_THROWS_AS(is_contractible(fx::cycle_graph(4), ContractMode::degenerate, wrong),
                  InvalidSpace);
}

TEST_CASE("subset contractibility realizes the nearness graph") {
  auto sp = std::make_shared<Space>(
      std::vector<Point>{{0, {0, 0}}, {1, {1, 0}}, {2, {10, 0}}, {3, {11, 0}}}, 1.5,
      std::vector<std::vector<double>>{{0.0}, {0.1}, {1.0}, {1.1}}, 0.25);
  CHECK(is_contractible(*sp, {0, 1}, ContractMode::spatial));
  CHECK_FALSE(is_contractible(*sp, {0, 1, 2, 3}, ContractMode::spatial));  // disconnected
  CHECK(is_contractible(*sp, {0, 1}, ContractMode::descriptive));
  CHECK_THROWS_AS(is_contractible(*sp, Subset{}, ContractMode::spatial), NoRealization);
  CHECK_THROWS_AS(is_contractible(*sp, {0, 9}, ContractMode::spatial), InvalidSubset);
}

TEST_CASE("homotopy equivalence runs both deformations") {
  auto a = blob(3, 21);
  auto b = std::make_shared<Space>(std::vector<Point>{{0, {4, 4}}}, 1.0);
  const SpaceMap f = constant_map(a, b, 0);
  const SpaceMap g(b, a, {{0, a->point_at(0).id}});

  const SpaceMap gf = compose(f, g);
  const DiscreteHomotopy h_source({gf, identity_map(a)}, {0.0, 1.0});
  const DiscreteHomotopy h_target({compose(g, f), identity_map(b)}, {0.0, 1.0});
  const EquivalenceReport rep = verify_homotopy_equivalence(
      f, g, h_source, h_target, RelationKind::spatial);
  CHECK(rep.forward.verdict);
  CHECK(rep.backward.verdict);
  CHECK(rep.verdict());
}
