#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "proxitop/geometry.hpp"

namespace proxitop {

struct Point {
  int id = 0;
  Vec2 xy;
};

/**
 * A finite set of identified planar points, sorted and deduplicated.
 * Subsets are value types; membership refers to point ids of some space
 * and is validated by the operations that take a space.
 */
class Subset {
public:
  Subset() = default;
  Subset(std::initializer_list<int> ids);
  explicit Subset(std::vector<int> ids);

  bool empty() const { return ids_.empty(); }
  std::size_t size() const { return ids_.size(); }
  bool contains(int id) const;
  const std::vector<int>& ids() const { return ids_; }

  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.ids_ == b.ids_;
  }

private:
  std::vector<int> ids_;  // sorted, unique
};

Subset set_union(const Subset& a, const Subset& b);
Subset set_intersection(const Subset& a, const Subset& b);
Subset set_difference(const Subset& a, const Subset& b);

/**
 * Per-point feature vectors, aligned with the owning space's point order.
 * All rows share one dimension >= 1 and contain only finite values.
 */
struct ProbeTable {
  int dim = 0;
  std::vector<std::vector<double>> rows;
};

/**
 * Finite planar proximity space. Two subsets are near when their lower
 * distance is within eps_spatial; an optional probe table adds per-point
 * descriptions compared under eps_desc. Immutable after construction.
 */
class Space {
public:
  Space(std::vector<Point> points, double eps_spatial);
  Space(std::vector<Point> points, double eps_spatial,
        std::vector<std::vector<double>> probe_rows, double eps_desc);

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double eps_spatial() const { return eps_spatial_; }
  double eps_desc() const { return eps_desc_; }

  bool has_probes() const { return probes_.has_value(); }
  const ProbeTable& probes() const;  // throws MissingProbe when absent

  // Index of a point id in points(), or -1 when unknown.
  int index_of(int id) const;
  const Point& point_at(int index) const { return points_[index]; }

  // All point ids as a subset.
  Subset carrier() const;

  // Throws InvalidSubset when the subset references unknown ids.
  void validate(const Subset& s) const;

private:
  std::vector<Point> points_;
  double eps_spatial_ = 0.0;
  double eps_desc_ = 0.0;
  std::optional<ProbeTable> probes_;
  std::unordered_map<int, int> index_;
};

// Structural equality: same points (ids, coordinates, probes) and epsilons.
bool space_equal(const Space& a, const Space& b);

/**
 * Lower distance between point sets: the smallest pairwise Euclidean
 * distance, or +infinity when either set is empty.
 */
double lower_distance(const Space& sp, const Subset& a, const Subset& b);

// True when both sets are nonempty and their lower distance is within
// eps_spatial (plus the fixed comparison tolerance).
bool near(const Space& sp, const Subset& a, const Subset& b);

// All points within eps_spatial of the (nonempty) set a.
Subset closure(const Space& sp, const Subset& a);

struct BoundaryDecomposition {
  Subset boundary;
  Subset interior;
  Subset exterior;
};

/**
 * Splits the space relative to closure(a): exterior is everything outside
 * the closure, boundary is the closure points within eps_spatial of the
 * exterior, interior is the rest of the closure.
 */
BoundaryDecomposition boundary_interior(const Space& sp, const Subset& a);

}  // namespace proxitop
