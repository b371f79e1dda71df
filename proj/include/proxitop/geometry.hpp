#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace proxitop {

// Absolute tolerance applied on top of every threshold comparison.
inline constexpr double kTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2& a, const Vec2& b) {
    return a.x == b.x && a.y == b.y;  // exact: vertex identity is exact
  }
  friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend Vec2 operator+(const Vec2& a, const Vec2& b) {
    return {a.x + b.x, a.y + b.y};
  }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

struct Segment {
  Vec2 a, b;
  double length() const { return distance(a, b); }
};

struct BBox {
  Vec2 lo{0, 0}, hi{0, 0};
  void expand(const Vec2& p) {
    if (p.x < lo.x) lo.x = p.x;
    if (p.y < lo.y) lo.y = p.y;
    if (p.x > hi.x) hi.x = p.x;
    if (p.y > hi.y) hi.y = p.y;
  }
  static BBox of_point(const Vec2& p) { return {p, p}; }
};

// Sign of the turn a->b->c with the fixed tolerance: +1 left, -1 right, 0 collinear.
inline int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  double v = cross(b - a, c - a);
  if (v > kTol) return 1;
  if (v < -kTol) return -1;
  return 0;
}

// True when q lies on segment [a,b] (within tolerance).
bool on_segment(const Vec2& a, const Vec2& b, const Vec2& q);

// Minimal distance from point q to segment [a,b].
double segment_point_distance(const Vec2& a, const Vec2& b, const Vec2& q);

// True when the closed segments intersect in at least one point.
bool segments_intersect(const Segment& s, const Segment& t);

// True when the segments share more than a single point (collinear overlap),
// or cross/touch anywhere other than the given common endpoint.
bool segments_conflict_beyond_point(const Segment& s, const Segment& t,
                                    const Vec2& shared);

// Clips segment [a,b] against an axis-aligned rectangle; returns the
// parameter interval [t0,t1] of the part inside, or nothing if disjoint.
std::optional<std::pair<double, double>> clip_segment_to_rect(
    const Vec2& a, const Vec2& b, const Vec2& rect_lo, const Vec2& rect_hi);

// Signed area contribution of a polyline under the shoelace line integral.
// Summing contributions along a closed chain gives the enclosed signed area.
double polyline_area_contribution(const std::vector<Vec2>& polyline);

}  // namespace proxitop
