#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "proxitop/cycles.hpp"

namespace proxitop {

/** Shapes present in one video frame, each drawn as a cycle system. */
struct FrameRecord {
  int frame_index = 0;
  double timestamp = 0.0;
  std::vector<CycleSystem> shapes;
};

/**
 * What identifies a shape across frames: the independent-cycle count of its
 * welded graph, optionally extended by (magnitude, angle) of a distinguished
 * vertex position. The angle uses the two-argument arctangent, which is
 * defined on the whole plane minus the origin and quadrant-correct.
 */
struct ShapeDescriptor {
  int betti = 0;
  std::optional<std::vector<double>> aux;
};

// Descriptor of one shape; aux_vertex is an index into the welded graph
// (UnknownVertex when out of range). Empty shapes throw InvalidShape.
ShapeDescriptor frame_descriptor(const CycleSystem& shape,
                                 std::optional<int> aux_vertex = std::nullopt);

// Euclidean distance of the stacked (betti, aux...) coordinates when both
// descriptors carry aux, otherwise the betti difference alone.
double descriptor_distance(const ShapeDescriptor& a, const ShapeDescriptor& b);

// Whether two descriptors identify the same shape class at tolerance eps:
// betti difference within eps, and aux within eps when both present.
bool descriptors_match(const ShapeDescriptor& a, const ShapeDescriptor& b, double eps);

struct MatchedPair {
  int index_a = 0;
  int index_b = 0;
  double distance = 0.0;
};

/**
 * Pairs with an equal-distance alternative are counted as ambiguous: the
 * descriptor genuinely cannot tell such shapes apart, so the report says
 * how often that happened rather than pretending the assignment is unique.
 */
struct MatchReport {
  std::vector<MatchedPair> pairs;
  int ambiguous = 0;
};

/**
 * Greedy matching of the two frames' shapes by descriptor distance,
 * smallest distance first, ties broken by the lower shape indices; every
 * shape is matched at most once.
 */
MatchReport match_shapes(const FrameRecord& f1, const FrameRecord& f2, double eps,
                         std::optional<int> aux_vertex = std::nullopt);

struct PersistenceTrack {
  int track_id = 0;
  ShapeDescriptor representative;  // descriptor at first appearance
  std::vector<std::pair<int, int>> intervals;  // [first_frame, last_frame], disjoint
};

struct TrackReport {
  std::vector<PersistenceTrack> tracks;
  int ambiguous_matches = 0;
};

/**
 * Chains frame-to-frame matches into appearance intervals. A shape matching
 * nothing in the previous frame first tries the dormant tracks (same
 * descriptor class seen earlier): a match there reopens that track with a
 * gap, which is how reappearance is recorded. Anything still unmatched
 * starts a new track. Frame indices must be strictly increasing and
 * timestamps nondecreasing (InvalidShape otherwise).
 */
TrackReport track(const std::vector<FrameRecord>& frames, double eps,
                  std::optional<int> aux_vertex = std::nullopt, bool parallel = true);

}  // namespace proxitop
