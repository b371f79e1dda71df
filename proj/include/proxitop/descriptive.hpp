#pragma once

#include <memory>
#include <vector>

#include "proxitop/space.hpp"

namespace proxitop {

// Which nearness relation a check runs under: point distance against
// eps_spatial, or feature distance against eps_desc.
enum class RelationKind { spatial, descriptive };

/**
 * Feature vectors of a point set, deduplicated greedily in point order:
 * a vector is kept only when it is farther than eps_desc from every vector
 * already kept, so stored vectors are pairwise more than eps_desc apart.
 */
struct DescriptionSet {
  int dim = 0;
  std::vector<std::vector<double>> vectors;

  bool singleton() const { return vectors.size() == 1; }
};

// Euclidean distance between two feature vectors of equal dimension.
double feature_distance(const std::vector<double>& u,
                        const std::vector<double>& v);

// Feature distance between two points of a descriptive space.
double feature_distance(const Space& sp, int id_a, int id_b);

// Deduplicated description vectors of a nonempty set (throws EmptySet).
DescriptionSet description_set(const Space& sp, const Subset& a);

/**
 * Descriptive nearness: nonempty sets are near when some point of one
 * carries a description within eps_desc of some point of the other.
 * Matching compares raw per-point descriptions, so sets sharing a point
 * are always descriptively near, for every eps_desc.
 */
bool descriptively_near(const Space& sp, const Subset& a, const Subset& b);

// Points of the union whose description matches (within eps_desc) a
// description found in a and one found in b.
Subset descriptive_intersection(const Space& sp, const Subset& a,
                                const Subset& b);

// All points whose description matches some description of the nonempty
// set a within eps_desc.
Subset descriptive_closure(const Space& sp, const Subset& a);

// Points whose description lies strictly within eps of x's description.
Subset descriptive_ball(const Space& sp, int center_id, double eps);

// Distinct descriptive balls of radius eps, one per point, deduplicated,
// in order of first witness point. Their union is the whole carrier.
std::vector<Subset> open_descriptive_cover(const Space& sp, double eps);

// Largest pairwise feature distance within the set (0 for singletons).
double description_diameter(const Space& sp, const Subset& a);

// True when every pair of descriptions in the set is within eps_desc:
// the set carries a single description up to the matching tolerance.
bool is_monochrome(const Space& sp, const Subset& a);

/**
 * Cartesian product of descriptive spaces. The materialized space holds
 * one point per tuple with concatenated feature vectors (stored for
 * descriptor reuse); the product relation itself is evaluated through
 * the factor projections: near iff every projection pair is near.
 */
class ProductSpace {
public:
  explicit ProductSpace(std::vector<std::shared_ptr<const Space>> factors);

  const Space& space() const { return *space_; }
  std::shared_ptr<const Space> space_ptr() const { return space_; }
  std::size_t factor_count() const { return factors_.size(); }

  // Factor point ids of one product point.
  const std::vector<int>& tuple_of(int product_id) const;

  // Projection of a product subset onto one factor.
  Subset project(const Subset& a, int factor) const;

  // Descriptively near in every factor projection.
  bool product_near(const Subset& a, const Subset& b) const;

private:
  std::vector<std::shared_ptr<const Space>> factors_;
  std::vector<std::vector<int>> tuples_;
  std::shared_ptr<const Space> space_;
};

}  // namespace proxitop
