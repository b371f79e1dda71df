#pragma once

#include <string>
#include <utility>
#include <vector>

#include "proxitop/geometry.hpp"

namespace proxitop {

/**
 * A closed chain of planar path segments. Vertices are listed in traversal
 * order; each edge joins a consecutive vertex pair (indices wrap) and carries
 * the polyline actually drawn between them. Consecutive pairs may carry more
 * than one edge, which is how digons and other parallel-edge figures are
 * written down.
 */
struct CycleVertex {
  int id = 0;
  Vec2 xy;
};

struct PathEdge {
  int from_v = 0;  // vertex id
  int to_v = 0;    // vertex id
  std::vector<Vec2> polyline;  // first point == from vertex, last == to vertex
};

struct PathCycle {
  std::vector<CycleVertex> vertices;
  std::vector<PathEdge> edges;
};

/** Several cycles drawn in the same plane, welded by coordinate equality. */
struct CycleSystem {
  std::vector<PathCycle> cycles;
};

enum class CycleKind { simple, multi };

/**
 * One structural defect found while validating a cycle. `kind` is one of
 * open_chain, end_vertex, self_intersection, multiplicity_forbidden,
 * stray_edge; `a`/`b` locate the offending vertex, edge, or segment indices
 * where that makes sense (-1 otherwise).
 */
struct CycleViolation {
  std::string kind;
  int a = -1;
  int b = -1;
  std::string detail;
};

struct CycleValidationReport {
  bool valid = true;
  std::vector<CycleViolation> violations;
};

/**
 * Checks that a cycle is in fact a closed chain: every consecutive vertex
 * pair is joined by at least one edge whose polyline lands exactly on the
 * vertex coordinates, every vertex has degree >= 2, and no edge joins a
 * non-consecutive pair. For the simple kind it additionally rejects parallel
 * edges and any self-intersection of the drawn curve. Malformed input
 * (no vertices, duplicate ids, unknown vertex references, polylines shorter
 * than two points) throws InvalidCycle; geometric defects are reported.
 */
CycleValidationReport validate_cycle(const PathCycle& cycle, CycleKind kind);

/**
 * Undirected multigraph produced by welding drawn figures at coordinates.
 * Vertex order is first-encounter order; edges keep their input order and
 * may repeat (parallel edges) or loop.
 */
struct Graph {
  std::vector<Vec2> positions;
  std::vector<std::pair<int, int>> edges;
  int vertex_count() const { return static_cast<int>(positions.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
};

Graph to_graph(const PathCycle& cycle);

// Vertices of distinct cycles that share exact coordinates become one graph
// vertex; this is what makes wedges and bouquets out of drawn circles.
Graph to_graph(const CycleSystem& system);

struct BettiPair {
  int beta0 = 0;
  int beta1 = 0;
};

/** Component count and independent cycle count (E - V + beta0). */
BettiPair betti_graph(const Graph& g);

/**
 * Free-group data for the edge-path group of a connected graph: one
 * generator per non-tree edge of a breadth-first spanning tree, each given
 * as the closed vertex walk it induces. Throws Disconnected when beta0 > 1.
 */
struct PresentationSummary {
  int generator_count = 0;
  std::vector<std::vector<int>> generators;
};

PresentationSummary free_group_presentation(const Graph& g);

/**
 * The single vertex every cycle of the system passes through. Requires the
 * global intersection and every pairwise intersection of the welded vertex
 * sets to be exactly one vertex; otherwise NoCommonVertex or
 * MultipleCommonVertices is thrown.
 */
struct CommonVertex {
  int graph_index = 0;
  Vec2 position;
};

CommonVertex system_common_vertex(const CycleSystem& system);

}  // namespace proxitop
