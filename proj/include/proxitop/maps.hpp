#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>

#include "proxitop/descriptive.hpp"
#include "proxitop/space.hpp"

namespace proxitop {

/**
 * A total point function between two spaces. The assignment maps every
 * source point id to a target point id; spaces are held shared so maps
 * can outlive the scopes that loaded them.
 */
class SpaceMap {
public:
  SpaceMap(std::shared_ptr<const Space> source,
           std::shared_ptr<const Space> target,
           std::map<int, int> assignment);

  const Space& source() const { return *source_; }
  const Space& target() const { return *target_; }
  std::shared_ptr<const Space> source_ptr() const { return source_; }
  std::shared_ptr<const Space> target_ptr() const { return target_; }
  const std::map<int, int>& assignment() const { return assignment_; }

  int apply(int id) const;
  Subset apply(const Subset& s) const;
  Subset image() const;

private:
  std::shared_ptr<const Space> source_, target_;
  std::map<int, int> assignment_;
};

SpaceMap identity_map(std::shared_ptr<const Space> sp);
SpaceMap constant_map(std::shared_ptr<const Space> source,
                      std::shared_ptr<const Space> target, int target_id);

// Equal as point functions (same source ids, same images).
bool maps_equal_pointwise(const SpaceMap& f, const SpaceMap& g);

struct ContinuityCheckConfig {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  bool force_exhaustive = false;
  int exhaustive_max_points = 10;
  bool parallel = true;
};

/**
 * Verdict of a nearness-preservation scan. When the verdict is false the
 * counterexample holds a near pair of source subsets whose images are far;
 * the pair is the canonically smallest one found.
 */
struct ContinuityWitness {
  bool verdict = true;
  std::optional<std::pair<Subset, Subset>> counterexample;
  std::string relation;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t pairs_checked = 0;
};

/**
 * Checks that near source subsets have near images under the metric
 * relation. Exhaustive over all subset pairs for small sources, seeded
 * sampling otherwise. An optional domain restricts the scan to subsets
 * of that carrier (used to check a map only on a subspace).
 */
ContinuityWitness is_proximally_continuous(
    const SpaceMap& f, const ContinuityCheckConfig& cfg = {},
    const std::optional<Subset>& domain = std::nullopt);

// Same scan for the description-matching relation on both sides.
ContinuityWitness is_dpc(const SpaceMap& f,
                         const ContinuityCheckConfig& cfg = {},
                         const std::optional<Subset>& domain = std::nullopt);

// Pointwise composition: first f, then g. Throws CompositionMismatch
// unless f's target equals g's source.
SpaceMap compose(const SpaceMap& f, const SpaceMap& g);

/**
 * Piecewise map agreeing with f on a and with g on b. Requires a and b
 * to cover the source, both to be closed under the chosen closure, and
 * f, g to agree on the overlap; violations raise NotACover, NotClosed
 * or Disagreement.
 */
SpaceMap glue(const SpaceMap& f, const SpaceMap& g, const Subset& a,
              const Subset& b, RelationKind mode = RelationKind::spatial);

struct DegenerateConstantReport {
  bool degenerate = false;        // image carries one description
  bool ordinary_constant = false; // image is one point
};

// A map is a degenerate descriptive constant when its whole image shares
// a single description (every pair of image descriptions within eps_desc).
DegenerateConstantReport is_degenerate_descriptive_constant(const SpaceMap& d);

}  // namespace proxitop
