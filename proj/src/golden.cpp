#include "golden_gaps/golden.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "golden_gaps/linalg.hpp"

namespace golden_gaps {

// ---------------------------------------------------------------------------
// BigFloat

BigFloat::BigFloat(mpfr_prec_t precision) : value_(new __mpfr_struct) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) : value_(new __mpfr_struct) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept : value_(other.value_) { other.value_ = nullptr; }

BigFloat& BigFloat::operator=(BigFloat other) noexcept {
  std::swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() {
  if (value_ != nullptr) {
    mpfr_clear(value_);
    delete value_;
  }
}

std::string BigFloat::to_string(int digits) const {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", digits, value_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

// ---------------------------------------------------------------------------
// GoldenNumber

GoldenNumber::GoldenNumber(mpq_class p, mpq_class q) : p_(std::move(p)), q_(std::move(q)) { canonicalize(); }

void GoldenNumber::canonicalize() {
  p_.canonicalize();
  q_.canonicalize();
}

GoldenNumber GoldenNumber::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("GoldenNumber::from_double: non-finite value");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return GoldenNumber(q);
}

int sign_of_sqrt5_form(const mpz_class& u, const mpz_class& v) {
  const int su = sgn(u);
  const int sv = sgn(v);
  if (su >= 0 && sv >= 0) return (su | sv) != 0 ? 1 : 0;
  if (su <= 0 && sv <= 0) return -1;
  // Opposite signs: compare u^2 with 5 v^2 (never equal, sqrt(5) is irrational).
  const mpz_class lhs = u * u;
  const mpz_class rhs = 5 * v * v;
  if (su > 0) return lhs > rhs ? 1 : -1;
  return rhs > lhs ? 1 : -1;
}

int GoldenNumber::sign() const {
  // 2 * pd * qd * (p + q*phi) = u + v*sqrt(5) with the integers below.
  const mpz_class& pn = p_.get_num();
  const mpz_class& pd = p_.get_den();
  const mpz_class& qn = q_.get_num();
  const mpz_class& qd = q_.get_den();
  const mpz_class u = 2 * pn * qd + qn * pd;
  const mpz_class v = qn * pd;
  return sign_of_sqrt5_form(u, v);
}

GoldenNumber GoldenNumber::conjugate() const { return {p_ + q_, -q_}; }

mpq_class GoldenNumber::norm() const { return p_ * p_ + p_ * q_ - q_ * q_; }

GoldenNumber GoldenNumber::inverse() const {
  const mpq_class n = norm();
  if (sgn(n) == 0) throw std::domain_error("GoldenNumber: division by zero");
  const GoldenNumber c = conjugate();
  return {c.p_ / n, c.q_ / n};
}

GoldenNumber& GoldenNumber::operator+=(const GoldenNumber& rhs) {
  p_ += rhs.p_;
  q_ += rhs.q_;
  return *this;
}

GoldenNumber& GoldenNumber::operator-=(const GoldenNumber& rhs) {
  p_ -= rhs.p_;
  q_ -= rhs.q_;
  return *this;
}

GoldenNumber& GoldenNumber::operator*=(const GoldenNumber& rhs) {
  // (p + q phi)(r + s phi) = (pr + qs) + (ps + qr + qs) phi
  const mpq_class qs = q_ * rhs.q_;
  mpq_class p = p_ * rhs.p_ + qs;
  mpq_class q = p_ * rhs.q_ + q_ * rhs.p_ + qs;
  p_ = std::move(p);
  q_ = std::move(q);
  return *this;
}

GoldenNumber& GoldenNumber::operator/=(const GoldenNumber& rhs) {
  if (rhs.is_rational()) {
    if (sgn(rhs.p_) == 0) throw std::domain_error("GoldenNumber: division by zero");
    p_ /= rhs.p_;
    q_ /= rhs.p_;
    return *this;
  }
  return *this *= rhs.inverse();
}

std::strong_ordering operator<=>(const GoldenNumber& lhs, const GoldenNumber& rhs) {
  const int s = (lhs - rhs).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::size_t GoldenNumber::hash() const {
  auto limb = [](const mpz_class& z) -> std::size_t {
    return mpz_size(z.get_mpz_t()) == 0 ? 0 : static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0)) * (sgn(z) < 0 ? 3 : 1);
  };
  std::size_t h = limb(p_.get_num());
  h = h * 0x9E3779B97F4A7C15ULL + limb(p_.get_den());
  h = h * 0x9E3779B97F4A7C15ULL + limb(q_.get_num());
  h = h * 0x9E3779B97F4A7C15ULL + limb(q_.get_den());
  return h;
}

BigFloat to_real(const GoldenNumber& x, mpfr_prec_t precision_bits) {
  if (precision_bits < 53) throw std::invalid_argument("to_real: precision must be at least 53 bits");
  BigFloat out(precision_bits);
  if (x.is_rational()) {
    // Exactly representable values would never pass the can_round test.
    mpfr_set_q(out.get(), x.rational_part().get_mpq_t(), MPFR_RNDN);
    return out;
  }
  // Irrational from here on, so the escalation terminates.
  for (mpfr_prec_t work = precision_bits + 64;; work *= 2) {
    BigFloat phi(work);
    mpfr_sqrt_ui(phi.get(), 5, MPFR_RNDN);
    mpfr_add_ui(phi.get(), phi.get(), 1, MPFR_RNDN);
    mpfr_div_2ui(phi.get(), phi.get(), 1, MPFR_RNDN);

    BigFloat term_p(work);
    BigFloat term_q(work);
    mpfr_set_q(term_p.get(), x.rational_part().get_mpq_t(), MPFR_RNDN);
    mpfr_mul_q(term_q.get(), phi.get(), x.phi_part().get_mpq_t(), MPFR_RNDN);
    BigFloat sum(work);
    mpfr_add(sum.get(), term_p.get(), term_q.get(), MPFR_RNDN);

    mpfr_exp_t max_exp = LONG_MIN;
    if (!mpfr_zero_p(term_p.get())) max_exp = std::max(max_exp, mpfr_get_exp(term_p.get()));
    if (!mpfr_zero_p(term_q.get())) max_exp = std::max(max_exp, mpfr_get_exp(term_q.get()));
    // |error| <= 2^(max_exp + 3 - work)
    if (!mpfr_zero_p(sum.get())) {
      const mpfr_exp_t good_bits = mpfr_get_exp(sum.get()) - (max_exp + 3 - work);
      if (good_bits > 0 && mpfr_can_round(sum.get(), good_bits, MPFR_RNDN, MPFR_RNDZ, precision_bits + 1)) {
        mpfr_set(out.get(), sum.get(), MPFR_RNDN);
        return out;
      }
    }
    if (work > (1 << 20)) throw std::runtime_error("to_real: precision escalation did not converge");
  }
}

double GoldenNumber::to_double() const { return to_real(*this, 53).to_double(); }

mpz_class GoldenNumber::floor() const {
  mpz_class k;
  if (is_rational()) {
    mpz_fdiv_q(k.get_mpz_t(), p_.get_num_mpz_t(), p_.get_den_mpz_t());
    return k;
  }
  const BigFloat approx = to_real(*this, 128);
  mpfr_get_z(k.get_mpz_t(), approx.get(), MPFR_RNDD);
  const auto at = [](const mpz_class& z) { return GoldenNumber(mpq_class(z)); };
  while (*this < at(k)) --k;
  while (*this >= at(k + 1)) ++k;
  return k;
}

std::string GoldenNumber::to_string() const {
  if (sgn(q_) == 0) return p_.get_str();
  std::string q_text;
  if (q_ == 1) {
    q_text = "phi";
  } else if (q_ == -1) {
    q_text = "-phi";
  } else {
    q_text = q_.get_str() + "*phi";
  }
  if (sgn(p_) == 0) return q_text;
  if (q_text.front() == '-') return p_.get_str() + q_text;
  return p_.get_str() + "+" + q_text;
}

std::string GoldenNumber::to_fraction_string() const {
  const auto frac = [](const mpq_class& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); };
  if (sgn(q_) < 0) return frac(p_) + "-" + frac(-q_) + "*phi";
  return frac(p_) + "+" + frac(q_) + "*phi";
}

std::ostream& operator<<(std::ostream& os, const GoldenNumber& x) { return os << x.to_string(); }

namespace {

// Reads an unsigned rational literal: digits, "a/b", or a decimal with optional exponent.
mpq_class parse_rational_literal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("GoldenNumber::parse: empty number");
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    mpq_class out(std::string(text.substr(0, slash)) + "/" + std::string(text.substr(slash + 1)), 10);
    if (sgn(out.get_den()) == 0) throw std::invalid_argument("GoldenNumber::parse: zero denominator");
    out.canonicalize();
    return out;
  }
  std::string mantissa(text);
  long exponent = 0;
  if (const auto e = mantissa.find_first_of("eE"); e != std::string::npos) {
    exponent = std::stol(mantissa.substr(e + 1));
    mantissa.resize(e);
  }
  std::string digits;
  for (const char c : mantissa) {
    if (c == '.') {
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
      throw std::invalid_argument("GoldenNumber::parse: bad number '" + std::string(text) + "'");
    }
    digits.push_back(c);
  }
  if (digits.empty()) throw std::invalid_argument("GoldenNumber::parse: bad number '" + std::string(text) + "'");
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
  }
  mpq_class out{mpz_class(digits, 10)};
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    out /= scale;
  } else {
    out *= scale;
  }
  out.canonicalize();
  return out;
}

}  // namespace

GoldenNumber GoldenNumber::parse(std::string_view text) {
  std::string s;
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) == 0) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("GoldenNumber::parse: empty input");

  // Split into signed terms; a sign directly after 'e'/'E' belongs to an exponent.
  std::vector<std::string> terms;
  std::string current;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool is_sign = c == '+' || c == '-';
    const bool in_exponent = i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E') && i >= 2 &&
                             std::isdigit(static_cast<unsigned char>(s[i - 2])) != 0;
    if (is_sign && !in_exponent && !current.empty() && current != "+" && current != "-") {
      terms.push_back(current);
      current.clear();
    }
    if (is_sign && !in_exponent && (current == "+" || current == "-")) {
      // "+-3" style: fold the signs.
      current = (current == "-") != (c == '-') ? "-" : "+";
      continue;
    }
    current.push_back(c);
  }
  terms.push_back(current);

  mpq_class p = 0;
  mpq_class q = 0;
  for (std::string term : terms) {
    int term_sign = 1;
    while (!term.empty() && (term.front() == '+' || term.front() == '-')) {
      if (term.front() == '-') term_sign = -term_sign;
      term.erase(term.begin());
    }
    if (term.empty()) throw std::invalid_argument("GoldenNumber::parse: dangling sign in '" + std::string(text) + "'");
    const auto ends_with_phi = term.size() >= 3 && term.compare(term.size() - 3, 3, "phi") == 0;
    if (ends_with_phi) {
      std::string coeff = term.substr(0, term.size() - 3);
      if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
      const mpq_class c = coeff.empty() ? mpq_class(1) : parse_rational_literal(coeff);
      q += term_sign * c;
    } else {
      p += term_sign * parse_rational_literal(term);
    }
  }
  return {p, q};
}

// ---------------------------------------------------------------------------
// GoldenInteger

namespace {

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(x, y, &out)) throw std::overflow_error("GoldenInteger: coefficient overflow");
  return out;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(x, y, &out)) throw std::overflow_error("GoldenInteger: coefficient overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(x, y, &out)) throw std::overflow_error("GoldenInteger: coefficient overflow");
  return out;
}

}  // namespace

GoldenInteger operator+(GoldenInteger lhs, GoldenInteger rhs) {
  return {checked_add(lhs.p_, rhs.p_), checked_add(lhs.q_, rhs.q_)};
}

GoldenInteger operator-(GoldenInteger lhs, GoldenInteger rhs) {
  return {checked_sub(lhs.p_, rhs.p_), checked_sub(lhs.q_, rhs.q_)};
}

GoldenInteger operator*(GoldenInteger lhs, GoldenInteger rhs) {
  const std::int64_t qs = checked_mul(lhs.q_, rhs.q_);
  return {checked_add(checked_mul(lhs.p_, rhs.p_), qs),
          checked_add(checked_add(checked_mul(lhs.p_, rhs.q_), checked_mul(lhs.q_, rhs.p_)), qs)};
}

GoldenInteger GoldenInteger::operator-() const { return {checked_sub(0, p_), checked_sub(0, q_)}; }

int GoldenInteger::sign() const {
  const __int128 u = static_cast<__int128>(p_) * 2 + q_;
  const __int128 v = q_;
  if (u >= 0 && v >= 0) return (u != 0 || v != 0) ? 1 : 0;
  if (u <= 0 && v <= 0) return -1;
  const unsigned __int128 uu = static_cast<unsigned __int128>(u < 0 ? -u : u);
  const unsigned __int128 vv = static_cast<unsigned __int128>(v < 0 ? -v : v);
  const unsigned __int128 lhs = uu * uu;
  const unsigned __int128 rhs = 5 * vv * vv;
  if (u > 0) return lhs > rhs ? 1 : -1;
  return rhs > lhs ? 1 : -1;
}

__int128 GoldenInteger::norm() const {
  const __int128 p = p_;
  const __int128 q = q_;
  return p * p + p * q - q * q;
}

GoldenInteger GoldenInteger::conjugate() const { return {checked_add(p_, q_), checked_sub(0, q_)}; }

double GoldenInteger::to_double() const {
  const long double phi = 1.61803398874989484820458683436563811772L;
  if ((p_ >= 0) == (q_ >= 0) || p_ == 0 || q_ == 0) {
    return static_cast<double>(static_cast<long double>(p_) + static_cast<long double>(q_) * phi);
  }
  // Opposite signs: x = N(x) / conj(x), and conj(x) = p - q/phi has no cancellation.
  const long double conj = static_cast<long double>(p_) - static_cast<long double>(q_) / phi;
  return static_cast<double>(static_cast<long double>(norm()) / conj);
}

std::ostream& operator<<(std::ostream& os, GoldenInteger x) { return os << x.to_golden(); }

// ---------------------------------------------------------------------------
// linalg helpers

GoldenNumber slope(const GoldenVector& v) {
  if (v.re.is_zero()) throw std::domain_error("slope: vector has zero horizontal component");
  return v.im / v.re;
}

IntegerMatrix to_integer(const GoldenMatrix& m) {
  auto convert = [](const GoldenNumber& x) {
    const mpq_class& p = x.rational_part();
    const mpq_class& q = x.phi_part();
    if (p.get_den() != 1 || q.get_den() != 1 || !p.get_num().fits_slong_p() || !q.get_num().fits_slong_p()) {
      throw std::domain_error("to_integer: entry is not a 64-bit element of Z[phi]");
    }
    return GoldenInteger(p.get_num().get_si(), q.get_num().get_si());
  };
  return {convert(m.a), convert(m.b), convert(m.c), convert(m.d)};
}

}  // namespace golden_gaps
