#pragma once

// 2x2 linear algebra over the golden field (or over Z[phi]).

#include <ostream>

#include "golden_gaps/golden.hpp"

namespace golden_gaps {

template <class T>
struct Vec2 {
  T re{};  // horizontal holonomy
  T im{};  // vertical holonomy

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend Vec2 operator+(const Vec2& u, const Vec2& v) { return {u.re + v.re, u.im + v.im}; }
  friend Vec2 operator-(const Vec2& u, const Vec2& v) { return {u.re - v.re, u.im - v.im}; }
  Vec2 operator-() const { return {-re, -im}; }
};

template <class T>
struct Mat2 {
  T a{1}, b{0};
  T c{0}, d{1};

  static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }

  T det() const { return a * d - b * c; }
  T trace() const { return a + d; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Vec2<T> operator*(const Mat2& m, const Vec2<T>& v) {
    return {m.a * v.re + m.b * v.im, m.c * v.re + m.d * v.im};
  }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
};

template <class T>
Mat2<T> power(Mat2<T> m, unsigned n) {
  Mat2<T> out = Mat2<T>::identity();
  while (n > 0) {
    if (n & 1U) out = out * m;
    m = m * m;
    n >>= 1U;
  }
  return out;
}

using GoldenVector = Vec2<GoldenNumber>;
using GoldenMatrix = Mat2<GoldenNumber>;
using IntegerVector = Vec2<GoldenInteger>;
using IntegerMatrix = Mat2<GoldenInteger>;

/// im/re. Throws std::domain_error for re == 0.
GoldenNumber slope(const GoldenVector& v);

inline GoldenVector to_golden(const IntegerVector& v) { return {v.re.to_golden(), v.im.to_golden()}; }

/// Entries must lie in Z[phi] and fit 64-bit coefficients.
IntegerMatrix to_integer(const GoldenMatrix& m);

template <class T>
std::ostream& operator<<(std::ostream& os, const Vec2<T>& v) {
  return os << '(' << v.re << ", " << v.im << ')';
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Mat2<T>& m) {
  return os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
}

}  // namespace golden_gaps

template <>
struct std::hash<golden_gaps::IntegerVector> {
  std::size_t operator()(const golden_gaps::IntegerVector& v) const noexcept {
    const std::size_t h1 = std::hash<golden_gaps::GoldenInteger>{}(v.re);
    const std::size_t h2 = std::hash<golden_gaps::GoldenInteger>{}(v.im);
    return h1 ^ (h2 * 0xC2B2AE3D27D4EB4FULL + (h1 << 7));
  }
};
