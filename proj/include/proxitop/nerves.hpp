#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proxitop/cycles.hpp"
#include "proxitop/homotopy.hpp"
#include "proxitop/space.hpp"

namespace proxitop {

/**
 * A family of nonempty subsets of one universe, which is either a space
 * (members hold point ids) or a welded graph (members hold vertex indices).
 * Graph universes may carry per-vertex feature rows so the descriptive
 * operations work there too. Construction validates membership; whether the
 * family actually covers the universe is a separate question (is_cover),
 * and the operations that require covering throw NotACover.
 */
class Cover {
public:
  Cover(std::shared_ptr<const Space> universe, std::vector<Subset> elements);
  Cover(Graph universe, std::vector<Subset> elements,
        std::optional<VertexFeatures> features = std::nullopt);

  bool over_graph() const { return graph_.has_value(); }
  const std::vector<Subset>& elements() const { return elements_; }
  const Space& space() const;
  std::shared_ptr<const Space> space_ptr() const;
  const Graph& graph() const;
  const std::optional<VertexFeatures>& graph_features() const { return features_; }

  int universe_size() const;
  // Universe members in canonical order: point ids, or vertex indices.
  std::vector<int> universe_ids() const;
  bool descriptive_ready() const;
  double eps_desc() const;
  // Feature row of a universe member (MissingProbe when absent).
  const std::vector<double>& feature_of(int id) const;

private:
  std::shared_ptr<const Space> space_;
  std::optional<Graph> graph_;
  std::optional<VertexFeatures> features_;
  std::vector<Subset> elements_;
};

// True when the union of the elements is the whole universe.
bool is_cover(const Cover& c);

/**
 * Simplices as sorted element-index tuples, downward closed, ordered by
 * dimension then lexicographically. Every element contributes a vertex.
 */
struct SimplicialComplex {
  int vertex_count = 0;
  std::vector<std::vector<int>> simplices;

  int max_dim() const {
    return simplices.empty() ? -1 : static_cast<int>(simplices.back().size()) - 1;
  }
};

/**
 * Nerve of the cover: a subfamily of at most max_dim+1 elements spans a
 * simplex when its common intersection is nonempty. Spatially that is plain
 * set intersection; descriptively a witness is a point of the subfamily's
 * union whose description matches every member within eps_desc. The result
 * is closed downward (descriptive witnesses are not hereditary on their
 * own). Throws NotACover when the family does not cover the universe.
 */
SimplicialComplex nerve(const Cover& c, RelationKind mode = RelationKind::spatial,
                        int max_dim = 3);

struct HomologyReport {
  int beta0 = 0;
  int beta1 = 0;
  int beta2 = 0;
  std::vector<int> simplex_counts;  // per dimension 0..max
  std::vector<int> boundary_ranks;  // rank of the d-th boundary map, d = 1..max
};

// Betti numbers over the two-element field by boundary-matrix elimination.
HomologyReport betti_complex(const SimplicialComplex& k);

struct GoodCoverConfig {
  ContractMode mode = ContractMode::spatial;
  bool include_singletons = true;  // whether single elements must contract
  int max_subfamily = 4;
  bool parallel = true;
  int max_failures = 8;
};

struct GoodCoverReport {
  bool good = true;
  std::string mode;
  bool include_singletons = true;
  int max_subfamily = 4;
  std::uint64_t subfamilies_checked = 0;
  std::uint64_t failure_count = 0;
  std::vector<std::vector<int>> failures;  // offending subfamilies, capped
};

/**
 * Checks every subfamily up to the size cap: a nonempty intersection
 * (set-theoretic spatially, description-matching otherwise) must be
 * contractible in the chosen mode. Singleton subfamilies participate only
 * when include_singletons is set. Throws NotACover when the family does not
 * cover the universe.
 */
GoodCoverReport is_good_cover(const Cover& c, const GoodCoverConfig& cfg = {});

struct NerveComparisonReport {
  int nerve_beta0 = 0, nerve_beta1 = 0;
  int union_beta0 = 0, union_beta1 = 0;
  bool equal = false;
  GoodCoverReport goodness;
  std::string note;
};

/**
 * Desk-scale comparison: Betti numbers of the nerve against those of the
 * union's graph realization, together with the goodness verdict. Betti
 * agreement is a necessary condition for matching homotopy type, never a
 * proof, and the report says so.
 */
NerveComparisonReport nerve_theorem_check(const Cover& c,
                                          RelationKind mode = RelationKind::spatial,
                                          const GoodCoverConfig& gcfg = {});

}  // namespace proxitop
