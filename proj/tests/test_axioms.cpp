#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "proxitop/axioms.hpp"
#include "proxitop/errors.hpp"
#include "proxitop/report.hpp"
#include "support/fixtures.hpp"
#include "support/reference.hpp"

using namespace proxitop;

namespace {

// Three collinear points one unit apart; mask-level subset distances are
// easy to reason about by hand.
const std::vector<Vec2> kLine = {{0, 0}, {1, 0}, {2, 0}};
const std::vector<int> kLineIds = {0, 1, 2};

double mask_distance(std::uint64_t a, std::uint64_t b) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (!(a & (std::uint64_t{1} << i))) continue;
    for (int j = 0; j < 3; ++j) {
      if (!(b & (std::uint64_t{1} << j))) continue;
      best = std::min(best, distance(kLine[static_cast<std::size_t>(i)],
                                     kLine[static_cast<std::size_t>(j)]));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("metric axioms hold on seeded spaces, matching full enumeration") {
  const double epses[] = {0.5, 1.5, 3.0};
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    auto sp = fx::random_space(n, epses[seed % 3], 0.0, seed, false);
    const AxiomReport rep = check_cech_axioms(*sp);
    CHECK(rep.exhaustive);
    CHECK(rep.all_ok());
    CHECK(rep.checks[0].checked == (std::uint64_t{1} << n));
    CHECK(rep.checks[1].checked == (std::uint64_t{1} << (2 * n)));
    CHECK(rep.checks[3].checked == (std::uint64_t{1} << (3 * n)));
    CHECK(ref::check_axioms_naive(*sp, false).total() == 0);
  }
}

TEST_CASE("descriptive axioms hold on seeded spaces, matching full enumeration") {
  const double descs[] = {0.1, 0.4};
  for (std::uint64_t seed = 1; seed <= 16; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);
    auto sp = fx::random_space(n, 1.5, descs[seed % 2], seed, true);
    const AxiomReport rep = check_descriptive_axioms(*sp);
    CHECK(rep.exhaustive);
    CHECK(rep.relation == "descriptive");
    CHECK(rep.all_ok());
    CHECK(ref::check_axioms_naive(*sp, true).total() == 0);
  }
}

TEST_CASE("descriptive scan requires probes") {
  auto sp = fx::random_space(5, 1.0, 0.0, 3, false);
  CHECK_THROWS_AS(check_descriptive_axioms(*sp), MissingProbe);
}

TEST_CASE("relation that demands an exact gap fails the intersection axiom") {
  // Overlapping sets are at distance zero, never exactly one, so every
  // overlapping pair is a counterexample: 64 pairs minus 27 disjoint ones.
  auto rel = [](std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return false;
    return std::fabs(mask_distance(a, b) - 1.0) <= kTol;
  };
  AxiomCheckConfig cfg;
  const AxiomReport rep =
      check_axioms_masked_exhaustive(kLineIds, rel, cfg, "exact-gap");
  CHECK_FALSE(rep.all_ok());
  CHECK(rep.checks[0].violations == 0);
  CHECK(rep.checks[1].violations == 0);
  CHECK(rep.checks[2].violations == 37);
  CHECK(rep.checks[3].violations == 0);
  REQUIRE(!rep.counterexamples.empty());
  CHECK(rep.counterexamples.front().axiom == "intersection");
}

TEST_CASE("relation with a size-dependent threshold fails symmetry") {
  auto rel = [](std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return false;
    const double eps = std::popcount(a) <= std::popcount(b) ? 1.0 : 0.4;
    return mask_distance(a, b) <= eps + kTol;
  };
  AxiomCheckConfig cfg;
  const AxiomReport rep =
      check_axioms_masked_exhaustive(kLineIds, rel, cfg, "lopsided");
  CHECK_FALSE(rep.all_ok());
  CHECK(rep.checks[1].violations > 0);
  CHECK(rep.checks[2].violations == 0);
  bool has_symmetry = false;
  for (const auto& v : rep.counterexamples)
    if (v.axiom == "symmetry") has_symmetry = true;
  CHECK(has_symmetry);
}

TEST_CASE("relation that never rejects fails emptiness, capped counterexamples") {
  auto rel = [](std::uint64_t, std::uint64_t) { return true; };
  AxiomCheckConfig cfg;
  const AxiomReport rep =
      check_axioms_masked_exhaustive(kLineIds, rel, cfg, "always");
  CHECK(rep.checks[0].violations == 8);  // every mask, both slots
  CHECK(rep.checks[1].violations == 0);
  CHECK(rep.checks[2].violations == 0);
  CHECK(rep.checks[3].violations == 0);
  CHECK(rep.counterexamples.size() == 5);  // default cap
  CHECK(rep.counterexamples.front().a.empty());  // canonical order: mask 0 first

  AxiomCheckConfig tight;
  tight.max_counterexamples = 2;
  const AxiomReport small =
      check_axioms_masked_exhaustive(kLineIds, rel, tight, "always");
  CHECK(small.counterexamples.size() == 2);
  CHECK(small.checks[0].violations == 8);
}

TEST_CASE("sampled scans catch injected violations and stay seeded") {
  auto rel = [](std::uint64_t, std::uint64_t) { return true; };
  AxiomCheckConfig cfg;
  cfg.trials = 100;
  cfg.seed = 11;
  const AxiomReport rep =
      check_axioms_masked_sampled(kLineIds, rel, cfg, "always");
  CHECK_FALSE(rep.exhaustive);
  CHECK(rep.checks[0].violations == 100);  // every trial trips on the empty set
  CHECK(rep.counterexamples.size() == 5);

  const AxiomReport again =
      check_axioms_masked_sampled(kLineIds, rel, cfg, "always");
  CHECK(report::axiom_doc(rep) == report::axiom_doc(again));
}

TEST_CASE("large spaces fall back to seeded sampling deterministically") {
  auto sp = fx::random_space(12, 1.5, 0.0, 77, false);
  AxiomCheckConfig cfg;
  cfg.trials = 4000;
  cfg.seed = 42;
  const AxiomReport rep = check_cech_axioms(*sp, cfg);
  CHECK_FALSE(rep.exhaustive);
  CHECK(rep.trials == 4000);
  CHECK(rep.all_ok());
  const AxiomReport again = check_cech_axioms(*sp, cfg);
  CHECK(report::axiom_doc(rep) == report::axiom_doc(again));
  CHECK(report::render_structured(report::axiom_doc(rep)) ==
        report::render_structured(report::axiom_doc(again)));
}

TEST_CASE("forcing an exhaustive scan rejects oversized spaces") {
  auto sp = fx::random_space(13, 1.5, 0.0, 5, false);
  AxiomCheckConfig cfg;
  cfg.force_exhaustive = true;
  CHECK_THROWS_AS(check_cech_axioms(*sp, cfg), InvalidSpace);
}

TEST_CASE("adjacency masks mirror the pairwise relations") {
  auto sp = fx::random_space(7, 1.5, 0.3, 9, true);
  const auto spatial = adjacency_masks(*sp, true);
  const auto desc = adjacency_masks(*sp, false);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      const bool s = (spatial[static_cast<std::size_t>(i)] >> j) & 1;
      CHECK(s == near(*sp, Subset{sp->point_at(i).id}, Subset{sp->point_at(j).id}));
      const bool d = (desc[static_cast<std::size_t>(i)] >> j) & 1;
      const auto& rows = sp->probes().rows;
      CHECK(d == (feature_distance(rows[static_cast<std::size_t>(i)],
                                   rows[static_cast<std::size_t>(j)]) <=
                  sp->eps_desc() + kTol));
    }
  }
}
