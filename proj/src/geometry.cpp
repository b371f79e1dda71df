#include "proxitop/geometry.hpp"

#include <algorithm>

namespace proxitop {

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& q) {
  return segment_point_distance(a, b, q) <= kTol;
}

double segment_point_distance(const Vec2& a, const Vec2& b, const Vec2& q) {
  Vec2 ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(a, q);
  double t = dot(q - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  Vec2 proj{a.x + t * ab.x, a.y + t * ab.y};
  return distance(proj, q);
}

bool segments_intersect(const Segment& s, const Segment& t) {
  int o1 = orientation(s.a, s.b, t.a);
  int o2 = orientation(s.a, s.b, t.b);
  int o3 = orientation(t.a, t.b, s.a);
  int o4 = orientation(t.a, t.b, s.b);

  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
    return true;  // proper crossing

  // Touching or collinear cases: fall back to point-on-segment tests.
  if (on_segment(s.a, s.b, t.a) || on_segment(s.a, s.b, t.b)) return true;
  if (on_segment(t.a, t.b, s.a) || on_segment(t.a, t.b, s.b)) return true;
  return false;
}

bool segments_conflict_beyond_point(const Segment& s, const Segment& t,
                                    const Vec2& shared) {
  if (!segments_intersect(s, t)) return false;

  // Collinear overlap: the far endpoints poke into each other's segment.
  auto interior_hit = [&](const Vec2& sa, const Vec2& sb, const Vec2& q) {
    return distance(q, shared) > kTol && on_segment(sa, sb, q);
  };
  if (interior_hit(s.a, s.b, t.a) || interior_hit(s.a, s.b, t.b)) return true;
  if (interior_hit(t.a, t.b, s.a) || interior_hit(t.a, t.b, s.b)) return true;

  // Proper crossing away from the shared endpoint.
  int o1 = orientation(s.a, s.b, t.a);
  int o2 = orientation(s.a, s.b, t.b);
  int o3 = orientation(t.a, t.b, s.a);
  int o4 = orientation(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0)
    return true;
  return false;
}

std::optional<std::pair<double, double>> clip_segment_to_rect(
    const Vec2& a, const Vec2& b, const Vec2& rect_lo, const Vec2& rect_hi) {
  // Liang-Barsky.
  double t0 = 0.0, t1 = 1.0;
  double dx = b.x - a.x, dy = b.y - a.y;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - rect_lo.x, rect_hi.x - a.x, a.y - rect_lo.y,
                       rect_hi.y - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return std::nullopt;  // parallel and outside
      continue;
    }
    double r = q[i] / p[i];
    if (p[i] < 0.0) {
      if (r > t1) return std::nullopt;
      if (r > t0) t0 = r;
    } else {
      if (r < t0) return std::nullopt;
      if (r < t1) t1 = r;
    }
  }
  return std::make_pair(t0, t1);
}

double polyline_area_contribution(const std::vector<Vec2>& polyline) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const Vec2& p = polyline[i];
    const Vec2& q = polyline[i + 1];
    acc += 0.5 * (p.x * q.y - q.x * p.y);
  }
  return acc;
}

}  // namespace proxitop
