#include "proxitop/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "proxitop/errors.hpp"

namespace proxitop {

namespace {

std::map<int, int> index_by_id(const PathCycle& cycle) {
  if (cycle.vertices.empty()) throw InvalidCycle("cycle has no vertices");
  std::map<int, int> index;
  for (int i = 0; i < static_cast<int>(cycle.vertices.size()); ++i) {
    const CycleVertex& v = cycle.vertices[i];
    if (!std::isfinite(v.xy.x) || !std::isfinite(v.xy.y))
      throw InvalidCycle("vertex " + std::to_string(v.id) + " has non-finite coordinates");
    if (!index.emplace(v.id, i).second)
      throw InvalidCycle("duplicate vertex id " + std::to_string(v.id));
  }
  return index;
}

void check_edges_structural(const PathCycle& cycle, const std::map<int, int>& index) {
  for (int e = 0; e < static_cast<int>(cycle.edges.size()); ++e) {
    const PathEdge& edge = cycle.edges[e];
    if (!index.count(edge.from_v) || !index.count(edge.to_v))
      throw InvalidCycle("edge " + std::to_string(e) + " references an unknown vertex");
    if (edge.polyline.size() < 2)
      throw InvalidCycle("edge " + std::to_string(e) + " has fewer than two polyline points");
    for (const Vec2& p : edge.polyline)
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw InvalidCycle("edge " + std::to_string(e) + " has non-finite polyline points");
  }
}

std::pair<int, int> unordered_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

CycleValidationReport validate_cycle(const PathCycle& cycle, CycleKind kind) {
  const std::map<int, int> index = index_by_id(cycle);
  check_edges_structural(cycle, index);

  CycleValidationReport report;
  auto flag = [&report](std::string kind_name, int a, int b, std::string detail) {
    report.valid = false;
    report.violations.push_back({std::move(kind_name), a, b, std::move(detail)});
  };

  const int n = static_cast<int>(cycle.vertices.size());

  // Slots: consecutive vertex positions that must be joined by an edge.
  std::map<std::pair<int, int>, int> slots_needed;
  for (int i = 0; i < n; ++i) {
    const int a = cycle.vertices[i].id;
    const int b = cycle.vertices[(i + 1) % n].id;
    slots_needed[unordered_pair(a, b)] += 1;
  }
  if (n == 1) slots_needed[unordered_pair(cycle.vertices[0].id, cycle.vertices[0].id)] = 1;

  std::map<std::pair<int, int>, std::vector<int>> edges_on_pair;
  for (int e = 0; e < static_cast<int>(cycle.edges.size()); ++e) {
    const PathEdge& edge = cycle.edges[e];
    const auto pair = unordered_pair(edge.from_v, edge.to_v);
    if (!slots_needed.count(pair)) {
      flag("stray_edge", e, -1,
           "edge joins vertices " + std::to_string(edge.from_v) + " and " +
               std::to_string(edge.to_v) + " which are not consecutive");
      continue;
    }
    edges_on_pair[pair].push_back(e);
    const Vec2 from_xy = cycle.vertices[index.at(edge.from_v)].xy;
    const Vec2 to_xy = cycle.vertices[index.at(edge.to_v)].xy;
    if (edge.polyline.front() != from_xy || edge.polyline.back() != to_xy)
      flag("open_chain", e, -1,
           "edge " + std::to_string(e) + " polyline does not land on its vertex coordinates");
  }

  for (const auto& [pair, needed] : slots_needed) {
    const int have = edges_on_pair.count(pair)
                         ? static_cast<int>(edges_on_pair.at(pair).size())
                         : 0;
    if (have < needed)
      flag("open_chain", pair.first, pair.second,
           "vertices " + std::to_string(pair.first) + " and " + std::to_string(pair.second) +
               " need " + std::to_string(needed) + " joining edge(s), found " +
               std::to_string(have));
    if (kind == CycleKind::simple && (needed > 1 || have > 1))
      flag("multiplicity_forbidden", pair.first, pair.second,
           "simple cycles take exactly one edge per consecutive pair");
  }
  if (kind == CycleKind::simple && n < 3)
    flag("multiplicity_forbidden", -1, -1, "simple cycles need at least three vertices");

  // Degree check (loops count twice).
  std::map<int, int> degree;
  for (const CycleVertex& v : cycle.vertices) degree[v.id] = 0;
  for (const PathEdge& edge : cycle.edges) {
    degree[edge.from_v] += 1;
    degree[edge.to_v] += 1;
  }
  for (const CycleVertex& v : cycle.vertices)
    if (degree[v.id] < 2)
      flag("end_vertex", v.id, -1,
           "vertex " + std::to_string(v.id) + " has degree " + std::to_string(degree[v.id]));

  // Geometric scan only makes sense on a structurally closed simple chain.
  if (kind == CycleKind::simple && report.valid) {
    std::vector<Segment> segs;
    for (int i = 0; i < n; ++i) {
      const int a = cycle.vertices[i].id;
      const int b = cycle.vertices[(i + 1) % n].id;
      const int e = edges_on_pair.at(unordered_pair(a, b)).front();
      std::vector<Vec2> pts = cycle.edges[e].polyline;
      if (cycle.edges[e].from_v != a) std::reverse(pts.begin(), pts.end());
      for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        if (pts[k] != pts[k + 1]) segs.push_back({pts[k], pts[k + 1]});
    }
    const int m = static_cast<int>(segs.size());
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
        if (adjacent) {
          const Vec2 shared = (j == i + 1) ? segs[j].a : segs[i].a;
          if (segments_conflict_beyond_point(segs[i], segs[j], shared))
            flag("self_intersection", i, j, "adjacent segments overlap beyond their joint");
        } else if (segments_intersect(segs[i], segs[j])) {
          flag("self_intersection", i, j, "non-adjacent segments cross or touch");
        }
      }
    }
  }

  return report;
}

namespace {

struct Welder {
  std::map<std::pair<double, double>, int> by_coord;
  Graph graph;

  int vertex(const Vec2& p) {
    auto [it, inserted] = by_coord.emplace(std::make_pair(p.x, p.y), graph.vertex_count());
    if (inserted) graph.positions.push_back(p);
    return it->second;
  }

  void add_cycle(const PathCycle& cycle) {
    const std::map<int, int> index = index_by_id(cycle);
    check_edges_structural(cycle, index);
    for (const CycleVertex& v : cycle.vertices) vertex(v.xy);
    for (const PathEdge& edge : cycle.edges) {
      const int a = vertex(cycle.vertices[index.at(edge.from_v)].xy);
      const int b = vertex(cycle.vertices[index.at(edge.to_v)].xy);
      graph.edges.emplace_back(a, b);
    }
  }
};

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Graph to_graph(const PathCycle& cycle) {
  Welder w;
  w.add_cycle(cycle);
  return std::move(w.graph);
}

Graph to_graph(const CycleSystem& system) {
  if (system.cycles.empty()) throw InvalidCycle("system has no cycles");
  Welder w;
  for (const PathCycle& c : system.cycles) w.add_cycle(c);
  return std::move(w.graph);
}

BettiPair betti_graph(const Graph& g) {
  Dsu dsu(g.vertex_count());
  for (const auto& [a, b] : g.edges) dsu.unite(a, b);
  std::set<int> roots;
  for (int v = 0; v < g.vertex_count(); ++v) roots.insert(dsu.find(v));
  BettiPair betti;
  betti.beta0 = static_cast<int>(roots.size());
  betti.beta1 = g.edge_count() - g.vertex_count() + betti.beta0;
  return betti;
}

PresentationSummary free_group_presentation(const Graph& g) {
  const BettiPair betti = betti_graph(g);
  if (betti.beta0 != 1)
    throw Disconnected("graph has " + std::to_string(betti.beta0) + " components");

  const int n = g.vertex_count();
  std::vector<std::vector<std::pair<int, int>>> adjacency(n);  // (neighbor, edge index)
  for (int e = 0; e < g.edge_count(); ++e) {
    adjacency[g.edges[e].first].emplace_back(g.edges[e].second, e);
    if (g.edges[e].first != g.edges[e].second)
      adjacency[g.edges[e].second].emplace_back(g.edges[e].first, e);
  }

  std::vector<int> parent(n, -1), depth(n, 0);
  std::vector<char> tree_edge(g.edge_count(), 0), seen(n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (const auto& [v, e] : adjacency[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      parent[v] = u;
      depth[v] = depth[u] + 1;
      tree_edge[e] = 1;
      queue.push_back(v);
    }
  }

  PresentationSummary out;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (tree_edge[e]) continue;
    int u = g.edges[e].first, v = g.edges[e].second;
    // Closed walk: u up to the meet point, then down to v; edge e closes it.
    std::vector<int> up{u}, down{v};
    int x = u, y = v;
    while (depth[x] > depth[y]) up.push_back(x = parent[x]);
    while (depth[y] > depth[x]) down.push_back(y = parent[y]);
    while (x != y) {
      up.push_back(x = parent[x]);
      down.push_back(y = parent[y]);
    }
    std::vector<int> walk(up.begin(), up.end());
    walk.pop_back();  // meet point enters once, from the down half
    walk.insert(walk.end(), down.rbegin(), down.rend());
    walk.push_back(u);  // return along the non-tree edge itself
    out.generators.push_back(std::move(walk));
  }
  out.generator_count = static_cast<int>(out.generators.size());
  return out;
}

CommonVertex system_common_vertex(const CycleSystem& system) {
  if (system.cycles.empty()) throw InvalidCycle("system has no cycles");
  Welder w;
  std::vector<std::set<int>> members;
  for (const PathCycle& cycle : system.cycles) {
    const std::map<int, int> index = index_by_id(cycle);
    check_edges_structural(cycle, index);
    std::set<int> ids;
    for (const CycleVertex& v : cycle.vertices) ids.insert(w.vertex(v.xy));
    members.push_back(std::move(ids));
  }

  std::set<int> shared = members.front();
  for (std::size_t i = 1; i < members.size(); ++i) {
    std::set<int> next;
    std::set_intersection(shared.begin(), shared.end(), members[i].begin(), members[i].end(),
                          std::inserter(next, next.begin()));
    shared = std::move(next);
  }
  if (shared.empty()) throw NoCommonVertex("the cycles have no vertex in common");
  if (shared.size() > 1)
    throw MultipleCommonVertices("the cycles share " + std::to_string(shared.size()) +
                                 " vertices");
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      std::set<int> pairwise;
      std::set_intersection(members[i].begin(), members[i].end(), members[j].begin(),
                            members[j].end(), std::inserter(pairwise, pairwise.begin()));
      if (pairwise.size() > 1)
        throw MultipleCommonVertices("cycles " + std::to_string(i) + " and " +
                                     std::to_string(j) + " share " +
                                     std::to_string(pairwise.size()) + " vertices");
    }
  }

  const int v = *shared.begin();
  return {v, w.graph.positions[v]};
}

}  // namespace proxitop
