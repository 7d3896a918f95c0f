#include "navrl/world/geometry.hpp"

#include <algorithm>

namespace navrl::world {

double wrap_to_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::remainder(angle, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a = std::numbers::pi;
  return a;
}

double distance_to_segment(Vec2 p, const Segment& s) {
  const Vec2 ab = s.b - s.a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return norm(p - s.a);
  const double t = std::clamp(dot(p - s.a, ab) / len2, 0.0, 1.0);
  return norm(p - (s.a + t * ab));
}

std::optional<double> ray_segment_hit(Vec2 origin, Vec2 dir, const Segment& s) {
  const Vec2 e = s.b - s.a;
  const double denom = cross(dir, e);
  if (denom == 0.0) return std::nullopt;  // parallel; grazing along a wall is not a hit
  const Vec2 w = s.a - origin;
  const double t = cross(w, e) / denom;
  const double u = cross(w, dir) / denom;
  if (t < 0.0 || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

std::optional<double> ray_circle_hit(Vec2 origin, Vec2 dir, const Circle& c) {
  const Vec2 oc = origin - c.center;
  const double b = dot(dir, oc);
  const double cc = dot(oc, oc) - c.radius * c.radius;
  if (cc <= 0.0) return 0.0;
  const double disc = b * b - cc;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  // Near root without cancellation: t = -b - sq, or cc / (-b + sq).
  if (b >= 0.0) return std::nullopt;  // circle is behind the origin
  const double t = cc / (-b + sq);
  return t;
}

}  // namespace navrl::world
