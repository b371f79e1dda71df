#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <memory>

#include "proxitop/errors.hpp"
#include "proxitop/maps.hpp"
#include "support/fixtures.hpp"

using namespace proxitop;

namespace {

// Two tight clusters far apart; {0,1} and {2,3} are each closed at eps 1.5
// under both the metric and the description closure.
std::shared_ptr<const Space> clusters() {
  return std::make_shared<Space>(
      std::vector<Point>{{0, {0, 0}}, {1, {1, 0}}, {2, {10, 0}}, {3, {11, 0}}}, 1.5,
      std::vector<std::vector<double>>{{0.0}, {0.1}, {1.0}, {1.1}}, 0.25);
}

std::shared_ptr<const Space> line_space(int n, double eps) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) pts.push_back({i, {static_cast<double>(i), 0.0}});
  return std::make_shared<Space>(std::move(pts), eps);
}

}  // namespace

TEST_CASE("maps are total, validated point functions") {
  auto sp = clusters();
  const SpaceMap id = identity_map(sp);
  CHECK(id.apply(2) == 2);
  CHECK(id.apply(Subset{0, 3}) == Subset{0, 3});
  CHECK(id.image() == sp->carrier());
  CHECK_THROWS_AS(id.apply(9), InvalidSubset);

  const SpaceMap c = constant_map(sp, sp, 1);
  CHECK(c.apply(3) == 1);
  CHECK(c.image() == Subset{1});
  CHECK(maps_equal_pointwise(id, identity_map(sp)));
  CHECK_FALSE(maps_equal_pointwise(id, c));

  CHECK_THROWS_AS(SpaceMap(sp, sp, std::map<int, int>{{0, 0}}), InvalidMap);
  CHECK_THROWS_AS(SpaceMap(sp, sp, std::map<int, int>{{0, 0}, {1, 1}, {2, 2}, {3, 9}}),
                  InvalidMap);
  CHECK_THROWS_AS(
      SpaceMap(sp, sp, std::map<int, int>{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {7, 0}}),
      InvalidMap);
}

TEST_CASE("composition chains assignments left to right") {
  auto sp = clusters();
  const SpaceMap swap(sp, sp, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  const SpaceMap c = constant_map(sp, sp, 0);
  const SpaceMap both = compose(swap, c);
  CHECK(both.apply(2) == 0);
  const SpaceMap twice = compose(swap, swap);
  CHECK(maps_equal_pointwise(twice, identity_map(sp)));

  auto other = line_space(3, 1.0);
  CHECK_THROWS_AS(compose(swap, identity_map(other)), CompositionMismatch);
}

TEST_CASE("identity and constant maps preserve nearness") {
  auto sp = clusters();
  const ContinuityWitness wi = is_proximally_continuous(identity_map(sp));
  CHECK(wi.verdict);
  CHECK(wi.exhaustive);
  CHECK(wi.pairs_checked == 256);  // 4^4 mask pairs
  CHECK_FALSE(wi.counterexample.has_value());

  const ContinuityWitness wc = is_proximally_continuous(constant_map(sp, sp, 2));
  CHECK(wc.verdict);
}

TEST_CASE("a tolerance-shrinking map is caught with the smallest witness") {
  auto widen = [&](int n) {
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({i, {i * 10.0, 0.0}});
    return pts;
  };
  auto src = std::make_shared<Space>(widen(2), 10.0);
  auto dst = std::make_shared<Space>(widen(2), 1.0);
  const SpaceMap f(src, dst, {{0, 0}, {1, 1}});
  const ContinuityWitness w = is_proximally_continuous(f);
  CHECK_FALSE(w.verdict);
  REQUIRE(w.counterexample.has_value());
  CHECK(w.counterexample->first == Subset{0});
  CHECK(w.counterexample->second == Subset{1});
}

TEST_CASE("sampled continuity scans find violations on larger sources") {
  std::vector<Point> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({i, {static_cast<double>(i), 0.0}});
  auto src = std::make_shared<Space>(pts, 20.0);
  auto dst = std::make_shared<Space>(pts, 0.5);
  const SpaceMap f(src, dst, [] {
    std::map<int, int> a;
    for (int i = 0; i < 12; ++i) a[i] = i;
    return a;
  }());

  ContinuityCheckConfig cfg;
  cfg.trials = 3000;
  cfg.seed = 5;
  const ContinuityWitness w = is_proximally_continuous(f, cfg);
  CHECK_FALSE(w.exhaustive);
  CHECK(w.trials == 3000);
  CHECK_FALSE(w.verdict);
  CHECK(w.counterexample.has_value());

  const ContinuityWitness again = is_proximally_continuous(f, cfg);
  CHECK(again.counterexample == w.counterexample);

  const SpaceMap id = identity_map(src);
  CHECK(is_proximally_continuous(id, cfg).verdict);
}

TEST_CASE("a domain restriction can rescue a discontinuous map") {
  auto src = std::make_shared<Space>(
      std::vector<Point>{{0, {0, 0}}, {1, {10, 0}}}, 10.0);
  auto dst = std::make_shared<Space>(
      std::vector<Point>{{0, {0, 0}}, {1, {10, 0}}}, 1.0);
  const SpaceMap f(src, dst, {{0, 0}, {1, 1}});
  CHECK_FALSE(is_proximally_continuous(f).verdict);
  CHECK(is_proximally_continuous(f, {}, Subset{0}).verdict);
  CHECK_THROWS_AS(is_proximally_continuous(f, {}, Subset{}), EmptySet);

  ContinuityCheckConfig force;
  force.force_exhaustive = true;
  auto big = line_space(17, 1.0);
  CHECK_THROWS_AS(is_proximally_continuous(identity_map(big), force), InvalidSpace);
}

TEST_CASE("description-preserving maps pass the descriptive scan") {
  auto sp = clusters();
  CHECK(is_dpc(identity_map(sp)).verdict);
  CHECK(is_dpc(constant_map(sp, sp, 0)).verdict);

  // Same geometry, but the target pulls the descriptions apart.
  auto src = std::make_shared<Space>(
      std::vector<Point>{{0, {0, 0}}, {1, {1, 0}}}, 1.5,
      std::vector<std::vector<double>>{{0.0}, {0.0}}, 0.0);
  auto dst = std::make_shared<Space>(
      std::vector<Point>{{0, {0, 0}}, {1, {1, 0}}}, 1.5,
      std::vector<std::vector<double>>{{0.0}, {5.0}}, 0.0);
  const SpaceMap f(src, dst, {{0, 0}, {1, 1}});
  const ContinuityWitness w = is_dpc(f);
  CHECK_FALSE(w.verdict);
  CHECK(w.relation == "descriptive");

  auto mute = std::make_shared<Space>(
      std::vector<Point>{{0, {0, 0}}, {1, {1, 0}}}, 1.5);
  CHECK_THROWS_AS(is_dpc(identity_map(mute)), MissingProbe);
}

TEST_CASE("gluing joins maps on closed covering pieces") {
  auto sp = clusters();
  const SpaceMap id = identity_map(sp);
  const SpaceMap swap(sp, sp, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});

  const SpaceMap mixed = glue(id, swap, {0, 1}, {2, 3});
  CHECK(mixed.apply(0) == 0);
  CHECK(mixed.apply(1) == 1);
  CHECK(mixed.apply(2) == 3);
  CHECK(mixed.apply(3) == 2);

  // Overlapping pieces work when the maps agree there.
  const SpaceMap whole = glue(id, id, {0, 1, 2, 3}, {2, 3});
  CHECK(maps_equal_pointwise(whole, id));

  // Descriptive closure accepts the same pieces on this fixture.
  const SpaceMap dmixed = glue(id, swap, {0, 1}, {2, 3}, RelationKind::descriptive);
  CHECK(maps_equal_pointwise(dmixed, mixed));
}

TEST_CASE("gluing rejects bad pieces with the precise error") {
  auto sp = clusters();
  const SpaceMap id = identity_map(sp);
  const SpaceMap c = constant_map(sp, sp, 2);

  CHECK_THROWS_AS(glue(id, c, {0, 1}, {2}), NotACover);
  CHECK_THROWS_AS(glue(id, c, {0, 1, 2}, {2, 3}), NotClosed);  // closure adds 3
  CHECK_THROWS_AS(glue(id, c, {0, 1}, {0, 1, 2, 3}), Disagreement);

  auto other = line_space(4, 1.5);
  CHECK_THROWS_AS(glue(id, identity_map(other), {0, 1}, {2, 3}), InvalidMap);
  CHECK_THROWS_AS(glue(id, id, {0, 1}, {2, 3, 9}), InvalidSubset);
}

TEST_CASE("degenerate descriptive constants are monochrome images") {
  auto sp = std::make_shared<Space>(
      std::vector<Point>{{0, {0, 0}}, {1, {1, 0}}, {2, {1, 1}}, {3, {0, 1}}}, 1.0,
      std::vector<std::vector<double>>{{0.0}, {1.0}, {0.0}, {1.0}}, 0.0);

  const DegenerateConstantReport one =
      is_degenerate_descriptive_constant(constant_map(sp, sp, 1));
  CHECK(one.degenerate);
  CHECK(one.ordinary_constant);

  // Image {0, 2} carries the single description [0].
  const SpaceMap fold(sp, sp, {{0, 0}, {1, 2}, {2, 0}, {3, 2}});
  const DegenerateConstantReport folded = is_degenerate_descriptive_constant(fold);
  CHECK(folded.degenerate);
  CHECK_FALSE(folded.ordinary_constant);

  const DegenerateConstantReport id =
      is_degenerate_descriptive_constant(identity_map(sp));
  CHECK_FALSE(id.degenerate);
}
