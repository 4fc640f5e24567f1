#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace alex {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) {
  double n = norm(a);
  return n > 0 ? a / n : Vec2{0, 0};
}
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(Vec3 o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline double norm2(Vec3 a) { return dot(a, a); }
inline double dist(Vec3 a, Vec3 b) { return norm(a - b); }
inline Vec3 normalized(Vec3 a) {
  double n = norm(a);
  return n > 0 ? a / n : Vec3{0, 0, 0};
}

// Orientation-preserving rigid motion of the plane: rotate by (c, s), then translate.
struct Rigid2 {
  double c = 1.0;
  double s = 0.0;
  double tx = 0.0;
  double ty = 0.0;

  Vec2 apply(Vec2 p) const { return {c * p.x - s * p.y + tx, s * p.x + c * p.y + ty}; }

  // this after other: apply(other.apply(p))
  Rigid2 compose(const Rigid2& other) const {
    Rigid2 r;
    r.c = c * other.c - s * other.s;
    r.s = s * other.c + c * other.s;
    Vec2 t = apply({other.tx, other.ty});
    r.tx = t.x;
    r.ty = t.y;
    return r;
  }

  Rigid2 inverse() const {
    Rigid2 r;
    r.c = c;
    r.s = -s;
    r.tx = -(c * tx + s * ty);
    r.ty = -(c * ty - s * tx);
    return r;
  }

  static Rigid2 identity() { return {}; }

  // Maps p0 -> (0,0) and p1 onto the positive x axis.
  static Rigid2 align_to_x(Vec2 p0, Vec2 p1) {
    Vec2 d = normalized(p1 - p0);
    Rigid2 rot{d.x, -d.y, 0, 0};
    Vec2 t = rot.apply({-p0.x, -p0.y});
    // rot.apply(-p0) is the translation of the composite map q -> rot*(q - p0)
    rot.tx = t.x;
    rot.ty = t.y;
    return rot;
  }
};

inline double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }
inline double acos_clamped(double v) { return std::acos(clamp_unit(v)); }

// Angle opposite side `a` in a triangle with sides a, b, c.
inline double corner_angle_cos(double a, double b, double c) {
  return (b * b + c * c - a * a) / (2.0 * b * c);
}
inline double corner_angle(double a, double b, double c) {
  return acos_clamped(corner_angle_cos(a, b, c));
}

inline bool triangle_inequality_strict(double a, double b, double c, double rel = 0.0) {
  double m = std::max({a, b, c});
  double slack = rel * m;
  return a + b > c + slack && b + c > a + slack && c + a > b + slack;
}

inline double triangle_area(double a, double b, double c) {
  // Kahan's numerically stable Heron variant.
  double x = a, y = b, z = c;
  if (x < y) std::swap(x, y);
  if (x < z) std::swap(x, z);
  if (y < z) std::swap(y, z);
  double t = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return 0.25 * std::sqrt(std::max(0.0, t));
}

inline double circumradius(double a, double b, double c) {
  double area = triangle_area(a, b, c);
  return a * b * c / (4.0 * area);
}

// Layout of a triangle with side lengths l01, l12, l20: vertex 0 at the origin,
// vertex 1 on the positive x axis, vertex 2 above.
inline std::array<Vec2, 3> layout_triangle(double l01, double l12, double l20) {
  double x = (l01 * l01 + l20 * l20 - l12 * l12) / (2.0 * l01);
  double y2 = l20 * l20 - x * x;
  double y = std::sqrt(std::max(0.0, y2));
  return {Vec2{0, 0}, Vec2{l01, 0}, Vec2{x, y}};
}

// Third vertex of a triangle: p at distance dp, q at distance dq, above the segment pq.
inline Vec2 locate_above(Vec2 p, Vec2 q, double dp, double dq) {
  double l = dist(p, q);
  double x = (l * l + dp * dp - dq * dq) / (2.0 * l);
  double y = std::sqrt(std::max(0.0, dp * dp - x * x));
  Vec2 ux = normalized(q - p);
  Vec2 uy = perp(ux);
  return p + ux * x + uy * y;
}

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

} // namespace alex
