#pragma once

// Exact arithmetic in the golden field Q(phi), phi^2 = phi + 1.
//
// GoldenNumber holds p + q*phi with arbitrary-precision rational p, q.
// GoldenInteger holds p + q*phi with machine-integer p, q; it covers the
// ring Z[phi] that lattice vectors and scaled section points live in and is
// the fast path for long orbit computations. Its arithmetic is checked and
// throws std::overflow_error instead of wrapping.

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace golden_gaps {

/// Value-owning wrapper around an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(BigFloat other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Decimal text with `digits` significant digits.
  std::string to_string(int digits) const;

 private:
  mpfr_ptr value_;
};

class GoldenNumber {
 public:
  GoldenNumber() = default;
  GoldenNumber(long value) : p_(value) {}  // NOLINT(google-explicit-constructor)
  GoldenNumber(mpq_class p, mpq_class q);
  explicit GoldenNumber(const mpq_class& p) : GoldenNumber(p, 0) {}

  static GoldenNumber phi() { return {0, 1}; }
  /// 1/phi = phi - 1.
  static GoldenNumber phi_bar() { return {-1, 1}; }
  /// Exact value of a finite double (doubles are dyadic rationals).
  static GoldenNumber from_double(double value);
  /// Parses "p+q*phi" forms ("1/2-3*phi", "phi", "-2/3", "0.25").
  /// Decimal literals are read as exact rationals.
  static GoldenNumber parse(std::string_view text);

  const mpq_class& rational_part() const { return p_; }
  const mpq_class& phi_part() const { return q_; }

  bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }
  bool is_rational() const { return sgn(q_) == 0; }
  /// Sign of the real embedding, decided without floating point.
  int sign() const;

  /// Galois conjugate: phi -> 1 - phi.
  GoldenNumber conjugate() const;
  /// Field norm x * conj(x) = p^2 + pq - q^2.
  mpq_class norm() const;
  /// Throws std::domain_error on zero.
  GoldenNumber inverse() const;

  mpz_class floor() const;
  double to_double() const;
  std::string to_string() const;
  /// Always "p/pd+q/qd*phi" (or "-" before q), the CSV form; parse() reads it back.
  std::string to_fraction_string() const;

  GoldenNumber& operator+=(const GoldenNumber& rhs);
  GoldenNumber& operator-=(const GoldenNumber& rhs);
  GoldenNumber& operator*=(const GoldenNumber& rhs);
  GoldenNumber& operator/=(const GoldenNumber& rhs);

  friend GoldenNumber operator+(GoldenNumber lhs, const GoldenNumber& rhs) { return lhs += rhs; }
  friend GoldenNumber operator-(GoldenNumber lhs, const GoldenNumber& rhs) { return lhs -= rhs; }
  friend GoldenNumber operator*(GoldenNumber lhs, const GoldenNumber& rhs) { return lhs *= rhs; }
  friend GoldenNumber operator/(GoldenNumber lhs, const GoldenNumber& rhs) { return lhs /= rhs; }
  GoldenNumber operator-() const { return {-p_, -q_}; }

  friend bool operator==(const GoldenNumber& lhs, const GoldenNumber& rhs) {
    return lhs.p_ == rhs.p_ && lhs.q_ == rhs.q_;
  }
  friend std::strong_ordering operator<=>(const GoldenNumber& lhs, const GoldenNumber& rhs);

  std::size_t hash() const;

 private:
  void canonicalize();

  mpq_class p_{0};
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const GoldenNumber& x);

/// Correctly rounded approximation at `precision_bits` (>= 53).
BigFloat to_real(const GoldenNumber& x, mpfr_prec_t precision_bits);

/// Sign of u + v*sqrt(5) for integers u, v.
int sign_of_sqrt5_form(const mpz_class& u, const mpz_class& v);

class GoldenInteger {
 public:
  constexpr GoldenInteger() = default;
  constexpr GoldenInteger(std::int64_t p, std::int64_t q = 0) : p_(p), q_(q) {}  // NOLINT

  static constexpr GoldenInteger phi() { return {0, 1}; }
  static constexpr GoldenInteger phi_bar() { return {-1, 1}; }

  constexpr std::int64_t rational_part() const { return p_; }
  constexpr std::int64_t phi_part() const { return q_; }

  int sign() const;
  double to_double() const;
  GoldenNumber to_golden() const { return {mpq_class(static_cast<long>(p_)), mpq_class(static_cast<long>(q_))}; }
  /// Field norm p^2 + pq - q^2.
  __int128 norm() const;
  GoldenInteger conjugate() const;

  friend GoldenInteger operator+(GoldenInteger lhs, GoldenInteger rhs);
  friend GoldenInteger operator-(GoldenInteger lhs, GoldenInteger rhs);
  friend GoldenInteger operator*(GoldenInteger lhs, GoldenInteger rhs);
  GoldenInteger operator-() const;

  friend constexpr bool operator==(GoldenInteger, GoldenInteger) = default;
  friend std::strong_ordering operator<=>(GoldenInteger lhs, GoldenInteger rhs) {
    const int s = (lhs - rhs).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  std::int64_t p_ = 0;
  std::int64_t q_ = 0;
};

std::ostream& operator<<(std::ostream& os, GoldenInteger x);

inline constexpr double kPhi = 1.6180339887498948482;
inline constexpr double kPhiBar = 0.6180339887498948482;

}  // namespace golden_gaps

template <>
struct std::hash<golden_gaps::GoldenNumber> {
  std::size_t operator()(const golden_gaps::GoldenNumber& x) const { return x.hash(); }
};

template <>
struct std::hash<golden_gaps::GoldenInteger> {
  std::size_t operator()(golden_gaps::GoldenInteger x) const noexcept {
    const auto p = static_cast<std::uint64_t>(x.rational_part());
    const auto q = static_cast<std::uint64_t>(x.phi_part());
    return static_cast<std::size_t>(p * 0x9E3779B97F4A7C15ULL ^ (q + 0x7F4A7C159E3779B9ULL + (p << 6) + (p >> 2)));
  }
};
