#pragma once

#include <cmath>

namespace formation {

// Planar vector. Positions, velocities, momenta, and forces all live here.
struct Vec2 {
  double x{0.0};
  double y{0.0};
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
constexpr Vec2 operator*(Vec2 a, double c) { return {c * a.x, c * a.y}; }

constexpr Vec2& operator+=(Vec2& a, Vec2 b) {
  a.x += b.x;
  a.y += b.y;
  return a;
}

constexpr Vec2& operator-=(Vec2& a, Vec2 b) {
  a.x -= b.x;
  a.y -= b.y;
  return a;
}

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double norm_squared(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Counterclockwise quarter turn.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline bool all_finite(Vec2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

// Unit-length direction produced by the geometry layer; x^2 + y^2 = 1 within
// 1e-12 by construction.
struct UnitVec2 {
  double x{1.0};
  double y{0.0};
  [[nodiscard]] constexpr Vec2 vec() const { return {x, y}; }
};

constexpr double dot(UnitVec2 a, UnitVec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double dot(UnitVec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Row covector: acts on a Vec2 by inner product. Jacobian rows of scalar
// constraints are covectors, kept distinct from column vectors on purpose.
struct RowCovec2 {
  double x{0.0};
  double y{0.0};
  [[nodiscard]] constexpr double apply(Vec2 v) const { return x * v.x + y * v.y; }
  [[nodiscard]] constexpr Vec2 transposed() const { return {x, y}; }
};

constexpr RowCovec2 operator+(RowCovec2 a, RowCovec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr RowCovec2 operator-(RowCovec2 a, RowCovec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr RowCovec2 operator-(RowCovec2 a) { return {-a.x, -a.y}; }
constexpr RowCovec2 operator*(double c, RowCovec2 a) { return {c * a.x, c * a.y}; }

// 2x2 matrix, row-major.
struct Mat2 {
  double m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diagonal(double a, double b) { return {a, 0.0, 0.0, b}; }
  static constexpr Mat2 outer(Vec2 a, Vec2 b) {
    return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y};
  }

  [[nodiscard]] constexpr Vec2 apply(Vec2 v) const {
    return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y};
  }
  [[nodiscard]] constexpr Mat2 transpose() const { return {m00, m10, m01, m11}; }
  [[nodiscard]] constexpr double trace() const { return m00 + m11; }
  [[nodiscard]] constexpr double det() const { return m00 * m11 - m01 * m10; }
};

constexpr Mat2 operator+(Mat2 a, Mat2 b) {
  return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}
constexpr Mat2 operator-(Mat2 a, Mat2 b) {
  return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
}
constexpr Mat2 operator*(double c, Mat2 a) {
  return {c * a.m00, c * a.m01, c * a.m10, c * a.m11};
}

// Row-vector times matrix: (a^T M) as a covector.
constexpr RowCovec2 row_times(UnitVec2 a, Mat2 m) {
  return {a.x * m.m00 + a.y * m.m10, a.x * m.m01 + a.y * m.m11};
}

// Smaller eigenvalue of a symmetric 2x2 matrix.
inline double min_eigenvalue_symmetric(Mat2 m) {
  const double mean = 0.5 * (m.m00 + m.m11);
  const double diff = 0.5 * (m.m00 - m.m11);
  return mean - std::sqrt(diff * diff + m.m01 * m.m10);
}

}  // namespace formation
