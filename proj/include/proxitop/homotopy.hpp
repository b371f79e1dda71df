#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proxitop/cycles.hpp"
#include "proxitop/descriptive.hpp"
#include "proxitop/maps.hpp"

namespace proxitop {

/**
 * A finite deformation between two maps: one frame per sampled time, all
 * sharing source and target, over a strictly increasing grid from 0 to 1.
 * Frames and grid must have equal length (at least two); violations throw
 * FrameMismatch.
 */
class DiscreteHomotopy {
public:
  DiscreteHomotopy(std::vector<SpaceMap> frames, std::vector<double> time_grid);

  const std::vector<SpaceMap>& frames() const { return frames_; }
  const std::vector<double>& time_grid() const { return grid_; }
  const Space& source() const { return frames_.front().source(); }
  const Space& target() const { return frames_.front().target(); }
  std::shared_ptr<const Space> source_ptr() const { return frames_.front().source_ptr(); }
  std::shared_ptr<const Space> target_ptr() const { return frames_.front().target_ptr(); }

  // Largest consecutive grid gap; the default time tolerance for checks.
  double default_time_scale() const;

private:
  std::vector<SpaceMap> frames_;
  std::vector<double> grid_;
};

struct HomotopyCheckConfig {
  std::optional<double> eps_time;  // unset: use the largest grid gap
  std::uint64_t trials = 500;      // sampled general time-subset trials
  std::uint64_t seed = 0;
  int exhaustive_max_points = 10;  // subset-pair scan is exhaustive up to this size
  bool force_exhaustive = false;
  bool parallel = true;
};

struct HomotopyCounterexample {
  Subset a, b;
  std::vector<double> a_times, b_times;
};

struct HomotopyCheckReport {
  bool verdict = true;
  std::string relation;  // "spatial" or "descriptive"
  double eps_time = 0.0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t pairs_checked = 0;
  std::optional<HomotopyCounterexample> counterexample;
};

/**
 * Verifies that h deforms f into g continuously in source and time jointly.
 * Endpoint frames must equal f and g pointwise (EndpointMismatch), and with
 * `rel` set every frame must agree with f on that subset (RelViolation).
 * The core scan takes subset pairs (A, B) of the source together with grid
 * times within eps_time of each other and demands near images; exhaustive
 * over all subset pairs for small sources, seeded sampling otherwise, plus
 * sampled trials pairing subsets with whole time sets. A failed instance is
 * reported as a counterexample, not thrown.
 */
HomotopyCheckReport verify_homotopy(const DiscreteHomotopy& h, const SpaceMap& f,
                                    const SpaceMap& g, RelationKind mode,
                                    const HomotopyCheckConfig& cfg = {},
                                    const std::optional<Subset>& rel = std::nullopt);

/**
 * Runs h then k on a halved grid, sharing the middle frame once. Requires
 * h's final frame to equal k's initial frame pointwise (FrameMismatch).
 */
DiscreteHomotopy concat(const DiscreteHomotopy& h, const DiscreteHomotopy& k);

// Same frames traversed backwards over the mirrored grid.
DiscreteHomotopy reverse(const DiscreteHomotopy& h);

// Applies `post` after every frame (CompositionMismatch if not composable).
DiscreteHomotopy compose_homotopy(const DiscreteHomotopy& h, const SpaceMap& post);

// Applies `pre` before every frame.
DiscreteHomotopy pre_compose_homotopy(const SpaceMap& pre, const DiscreteHomotopy& h);

/**
 * A sampled path: point ids visited in order over a time grid from 0 to 1
 * (uniform when omitted). At least two samples; ids must exist in the space.
 */
class ProximalPath {
public:
  ProximalPath(std::shared_ptr<const Space> space, std::vector<int> samples,
               std::vector<double> time_grid = {});

  const Space& space() const { return *space_; }
  std::shared_ptr<const Space> space_ptr() const { return space_; }
  const std::vector<int>& samples() const { return samples_; }
  const std::vector<double>& time_grid() const { return grid_; }
  int start() const { return samples_.front(); }
  int end() const { return samples_.back(); }

private:
  std::shared_ptr<const Space> space_;
  std::vector<int> samples_;
  std::vector<double> grid_;
};

// True when consecutive samples are near under the chosen relation.
bool verify_path(const ProximalPath& p, RelationKind mode);

// Deduplicated description vectors seen along the path.
DescriptionSet path_description(const ProximalPath& p);

// True when every sample description of either path is matched (within
// eps_desc) by some sample of the other.
bool paths_share_description(const ProximalPath& p, const ProximalPath& q);

/**
 * Paths grouped as one class: same space, same start id, same end id
 * (EndpointMismatch otherwise, InvalidMap when empty or mixing spaces).
 */
class PathClass {
public:
  explicit PathClass(std::vector<ProximalPath> representatives);

  const std::vector<ProximalPath>& representatives() const { return reps_; }
  int start() const { return reps_.front().start(); }
  int end() const { return reps_.front().end(); }

private:
  std::vector<ProximalPath> reps_;
};

// Partition of path indices into groups whose members pairwise share a
// description with the group's first path (greedy, first match wins).
std::vector<std::vector<int>> group_paths_by_description(
    const std::vector<ProximalPath>& paths);

enum class ContractMode { spatial, descriptive, degenerate };

// Feature vectors attached to the vertices of a welded graph, for the
// descriptive contractibility routes.
struct VertexFeatures {
  int dim = 0;
  std::vector<std::vector<double>> rows;  // one row per graph vertex
  double eps_desc = 0.0;
};

/**
 * Whether the figure can be deformed to a point. Spatially that means the
 * graph is a tree (connected, no independent cycles). Under the descriptive
 * modes a non-tree still contracts when all vertex descriptions agree within
 * eps_desc (the whole figure is one color); a non-tree without features then
 * throws MissingProbe. An empty graph throws NoRealization.
 */
bool is_contractible(const Graph& g, ContractMode mode = ContractMode::spatial,
                     const std::optional<VertexFeatures>& features = std::nullopt);

/**
 * Same question for a subset of a space, realized as its nearness graph:
 * vertices are the carrier points, edges join pairs within the relevant
 * tolerance (eps_spatial spatially, eps_desc descriptively). Empty carrier
 * throws NoRealization.
 */
bool is_contractible(const Space& sp, const Subset& carrier, ContractMode mode);

struct EquivalenceReport {
  HomotopyCheckReport forward;   // g after f deformed to the source identity
  HomotopyCheckReport backward;  // f after g deformed to the target identity
  bool verdict() const { return forward.verdict && backward.verdict; }
};

/**
 * Checks f and g as a homotopy equivalence pair: h_source must deform
 * g∘f into the identity of f's source and h_target must deform f∘g into
 * the identity of g's source.
 */
EquivalenceReport verify_homotopy_equivalence(const SpaceMap& f, const SpaceMap& g,
                                              const DiscreteHomotopy& h_source,
                                              const DiscreteHomotopy& h_target,
                                              RelationKind mode,
                                              const HomotopyCheckConfig& cfg = {});

}  // namespace proxitop
