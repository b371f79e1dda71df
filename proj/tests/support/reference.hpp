#pragma once

#include <cstdint>
#include <vector>

#include "proxitop/jordan.hpp"
#include "proxitop/space.hpp"

// Brute-force oracles, deliberately built without the library's bitmask,
// rank, or ray-cast machinery so agreement is evidence rather than an echo.
namespace ref {

using proxitop::PlanarCurve;
using proxitop::Space;
using proxitop::Vec2;

// Nearness straight from the definition over id vectors.
bool near_naive(const Space& sp, const std::vector<int>& a, const std::vector<int>& b,
                bool descriptive);

std::vector<std::vector<int>> all_subsets(const std::vector<int>& ids);

struct NaiveAxiomCounts {
  std::uint64_t emptiness = 0;
  std::uint64_t symmetry = 0;
  std::uint64_t intersection = 0;
  std::uint64_t union_split = 0;

  std::uint64_t total() const { return emptiness + symmetry + intersection + union_split; }
};

// Full enumeration of the four axioms over every subset pair and triple.
NaiveAxiomCounts check_axioms_naive(const Space& sp, bool descriptive);

std::vector<int> closure_naive(const Space& sp, const std::vector<int>& a, bool descriptive);

// Row-echelon rank of a dense 0/1 matrix over the two-element field.
int rank_mod2(std::vector<std::vector<int>> m);

struct BettiTriple {
  int b0 = 0;
  int b1 = 0;
  int b2 = 0;
};

// Betti numbers of a downward-closed complex by dense boundary matrices.
BettiTriple betti_naive(const std::vector<std::vector<int>>& simplices);

// Winding-number point-in-polygon, independent of the even-odd ray cast.
bool inside_winding(const PlanarCurve& curve, Vec2 p);

}  // namespace ref
