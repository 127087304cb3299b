#pragma once

#include <array>
#include <cmath>

namespace kinetic {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(Vec3 a) { return dot(a, a); }
inline double norm(Vec3 a) { return std::sqrt(norm2(a)); }

// Symmetric 3x3 tensor, unique components.
struct SymMat3 {
  double xx = 0.0, yy = 0.0, zz = 0.0;
  double xy = 0.0, xz = 0.0, yz = 0.0;

  static SymMat3 identity(double s = 1.0) { return {s, s, s, 0.0, 0.0, 0.0}; }
  static SymMat3 outer(Vec3 u) {
    return {u.x * u.x, u.y * u.y, u.z * u.z, u.x * u.y, u.x * u.z, u.y * u.z};
  }
  double trace() const { return xx + yy + zz; }
};

inline SymMat3 operator+(SymMat3 a, SymMat3 b) {
  return {a.xx + b.xx, a.yy + b.yy, a.zz + b.zz, a.xy + b.xy, a.xz + b.xz, a.yz + b.yz};
}
inline SymMat3 operator-(SymMat3 a, SymMat3 b) {
  return {a.xx - b.xx, a.yy - b.yy, a.zz - b.zz, a.xy - b.xy, a.xz - b.xz, a.yz - b.yz};
}
inline SymMat3 operator*(double s, SymMat3 a) {
  return {s * a.xx, s * a.yy, s * a.zz, s * a.xy, s * a.xz, s * a.yz};
}
inline Vec3 mul(const SymMat3& m, Vec3 v) {
  return {m.xx * v.x + m.xy * v.y + m.xz * v.z,
          m.xy * v.x + m.yy * v.y + m.yz * v.z,
          m.xz * v.x + m.yz * v.y + m.zz * v.z};
}

// Lower-triangular Cholesky factor of a symmetric positive definite 3x3 matrix.
struct Chol3 {
  double l00 = 0, l10 = 0, l11 = 0, l20 = 0, l21 = 0, l22 = 0;

  // Returns false if a pivot falls at or below tol (matrix not SPD to tolerance).
  bool factor(const SymMat3& a, double tol) {
    if (a.xx <= tol) return false;
    l00 = std::sqrt(a.xx);
    l10 = a.xy / l00;
    l20 = a.xz / l00;
    double p1 = a.yy - l10 * l10;
    if (p1 <= tol) return false;
    l11 = std::sqrt(p1);
    l21 = (a.yz - l20 * l10) / l11;
    double p2 = a.zz - l20 * l20 - l21 * l21;
    if (p2 <= tol) return false;
    l22 = std::sqrt(p2);
    return true;
  }

  double det() const {
    double d = l00 * l11 * l22;
    return d * d;
  }

  // Solves L w = r; the quadratic form r^T A^{-1} r equals |w|^2.
  Vec3 forward(Vec3 r) const {
    Vec3 w;
    w.x = r.x / l00;
    w.y = (r.y - l10 * w.x) / l11;
    w.z = (r.z - l20 * w.x - l21 * w.y) / l22;
    return w;
  }

  double inv_quadratic_form(Vec3 r) const { return norm2(forward(r)); }
};

}  // namespace kinetic
