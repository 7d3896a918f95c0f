#pragma once

#include <cmath>
#include <numbers>
#include <optional>

namespace navrl::world {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

struct Segment {
  Vec2 a;
  Vec2 b;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Circle {
  Vec2 center;
  double radius = 0.0;
  friend bool operator==(const Circle&, const Circle&) = default;
};

/// Axis-aligned rectangle, closed.
struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double diagonal() const { return std::hypot(width(), height()); }
  Vec2 center() const { return {0.5 * (min_x + max_x), 0.5 * (min_y + max_y)}; }
  bool contains(Vec2 p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Wraps an angle into (-pi, pi].
double wrap_to_pi(double angle);

double distance_to_segment(Vec2 p, const Segment& s);

/// Distance from p to the circle's boundary; negative inside.
inline double distance_to_circle(Vec2 p, const Circle& c) {
  return norm(p - c.center) - c.radius;
}

/// Ray parameter t >= 0 of the first intersection of origin + t*dir with the
/// segment. `dir` must be unit length.
std::optional<double> ray_segment_hit(Vec2 origin, Vec2 dir, const Segment& s);

/// First intersection t >= 0 with the circle boundary; 0 if origin is inside.
std::optional<double> ray_circle_hit(Vec2 origin, Vec2 dir, const Circle& c);

}  // namespace navrl::world
