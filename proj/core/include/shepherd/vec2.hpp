#pragma once

#include <cmath>
#include <iosfwd>

namespace shepherd {

/// Norms at or below this are treated as zero by unit().
inline constexpr double kUnitEpsilon = 1e-12;

/// 2-D position or force vector. Positions are in metres.
struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
constexpr double norm_squared(const Vec2& v) { return dot(v, v); }

inline double norm(const Vec2& v) { return std::sqrt(norm_squared(v)); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }
constexpr double distance_squared(const Vec2& a, const Vec2& b) { return norm_squared(a - b); }

/// v / |v|, or the zero vector when |v| <= kUnitEpsilon.
inline Vec2 unit(const Vec2& v) {
  const double n = norm(v);
  if (!(n > kUnitEpsilon)) return {};
  return {v.x / n, v.y / n};
}

inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

std::ostream& operator<<(std::ostream& os, const Vec2& v);

}  // namespace shepherd
