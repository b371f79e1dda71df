#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "proxitop/cycles.hpp"
#include "proxitop/space.hpp"

// Seeded generators shared by the test binaries and the acceptance suite.
namespace fx {

using namespace proxitop;

inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double unit(std::uint64_t& state) {
  state = mix(state);
  return static_cast<double>(state) / 18446744073709551616.0;
}

inline std::shared_ptr<const Space> random_space(int n, double eps, double eps_desc,
                                                 std::uint64_t seed, bool probes) {
  std::uint64_t state = seed;
  std::vector<Point> pts;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < n; ++i) {
    pts.push_back({i, {unit(state) * 8.0, unit(state) * 8.0}});
    rows.push_back({unit(state), unit(state)});
  }
  if (!probes) return std::make_shared<Space>(std::move(pts), eps);
  return std::make_shared<Space>(std::move(pts), eps, std::move(rows), eps_desc);
}

inline PathCycle polygon(const std::vector<Vec2>& pts) {
  PathCycle c;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) c.vertices.push_back({i, pts[static_cast<std::size_t>(i)]});
  for (int i = 0; i < n; ++i)
    c.edges.push_back({i, (i + 1) % n,
                       {pts[static_cast<std::size_t>(i)],
                        pts[static_cast<std::size_t>((i + 1) % n)]}});
  return c;
}

// Star-shaped around the origin, hence simple by construction: strictly
// increasing angles with a guaranteed gap. Radii stay within a narrow band
// so corners stay comfortably wide; a sharp spike has an interior wedge
// thinner than a cell near its apex, which pushes the raster to very fine
// resolutions before the region picture stabilizes.
inline PathCycle random_simple_polygon(int nverts, std::uint64_t seed) {
  std::uint64_t state = seed;
  std::vector<Vec2> pts;
  const double tau = 6.283185307179586;
  for (int i = 0; i < nverts; ++i) {
    const double ang = tau * (i + 0.3 + 0.4 * unit(state)) / nverts;
    const double r = 2.7 + 0.6 * unit(state);
    pts.push_back({r * std::cos(ang), r * std::sin(ang)});
  }
  return polygon(pts);
}

// k petal triangles clasped at the origin, fanned so petals never touch
// outside it. Valid for k <= 6.
inline CycleSystem wedge(int k) {
  CycleSystem sys;
  const double tau = 6.283185307179586;
  for (int i = 0; i < k; ++i) {
    const double theta = tau * i / k;
    const Vec2 l{2.2 * std::cos(theta - 0.2), 2.2 * std::sin(theta - 0.2)};
    const Vec2 r{2.2 * std::cos(theta + 0.2), 2.2 * std::sin(theta + 0.2)};
    PathCycle c;
    c.vertices = {{0, {0.0, 0.0}}, {1, l}, {2, r}};
    c.edges = {{0, 1, {{0.0, 0.0}, l}}, {1, 2, {l, r}}, {2, 0, {r, {0.0, 0.0}}}};
    sys.cycles.push_back(std::move(c));
  }
  return sys;
}

inline Graph cycle_graph(int n) {
  Graph g;
  const double tau = 6.283185307179586;
  for (int i = 0; i < n; ++i)
    g.positions.push_back({std::cos(tau * i / n), std::sin(tau * i / n)});
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
  return g;
}

inline Graph path_graph(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.positions.push_back({static_cast<double>(i), 0.0});
  for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
  return g;
}

// A uniformly random spanning tree shape: each vertex i > 0 attaches to a
// random earlier vertex, positions jittered for realizability.
inline Graph random_tree(int n, std::uint64_t seed) {
  std::uint64_t state = seed;
  Graph g;
  for (int i = 0; i < n; ++i)
    g.positions.push_back({unit(state) * 6.0, unit(state) * 6.0});
  for (int i = 1; i < n; ++i) {
    const int parent = static_cast<int>(unit(state) * i);
    g.edges.push_back({parent < i ? parent : i - 1, i});
  }
  return g;
}

}  // namespace fx
