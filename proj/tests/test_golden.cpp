#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "golden_gaps/golden.hpp"
#include "golden_gaps/linalg.hpp"
#include "golden_gaps/lattice.hpp"

using namespace golden_gaps;

namespace {

// Independent oracle: evaluate p + q phi with MPFR at 1000 bits and round.
double mpfr_value(const GoldenNumber& x) {
  mpfr_t phi, p, q;
  mpfr_inits2(1000, phi, p, q, static_cast<mpfr_ptr>(nullptr));
  mpfr_sqrt_ui(phi, 5, MPFR_RNDN);
  mpfr_add_ui(phi, phi, 1, MPFR_RNDN);
  mpfr_div_2ui(phi, phi, 1, MPFR_RNDN);
  mpfr_set_q(p, x.rational_part().get_mpq_t(), MPFR_RNDN);
  mpfr_mul_q(q, phi, x.phi_part().get_mpq_t(), MPFR_RNDN);
  mpfr_add(p, p, q, MPFR_RNDN);
  const double out = mpfr_get_d(p, MPFR_RNDN);
  mpfr_clears(phi, p, q, static_cast<mpfr_ptr>(nullptr));
  return out;
}

GoldenNumber random_golden(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 50);
  return {mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))};
}

}  // namespace

TEST_CASE("phi satisfies its minimal polynomial") {
  const GoldenNumber phi = GoldenNumber::phi();
  CHECK(phi * phi == phi + 1);
  CHECK(phi * GoldenNumber::phi_bar() == GoldenNumber(1));
  CHECK(GoldenNumber::phi_bar() == phi - 1);
  CHECK(phi.conjugate() == GoldenNumber(1) - phi);
  CHECK(phi.norm() == -1);
}

TEST_CASE("field operations agree with high-precision evaluation") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    const GoldenNumber x = random_golden(rng);
    const GoldenNumber y = random_golden(rng);
    CHECK(x.to_double() == mpfr_value(x));
    CHECK((x * y).to_double() == doctest::Approx(mpfr_value(x) * mpfr_value(y)).epsilon(1e-12));
    CHECK((x - y).sign() == (mpfr_value(x - y) > 0 ? 1 : (mpfr_value(x - y) < 0 ? -1 : 0)));
    CHECK((x * y).norm() == x.norm() * y.norm());
    if (!y.is_zero()) {
      CHECK((x / y) * y == x);
      CHECK(y * y.inverse() == GoldenNumber(1));
    }
  }
}

TEST_CASE("sign is exact under heavy cancellation") {
  // F(n+1) - F(n) phi = (-1/phi)^n: tiny, alternating.
  mpz_class f0 = 0, f1 = 1;
  for (int n = 1; n < 150; ++n) {
    const mpz_class f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
    // now f0 = F(n), f1 = F(n+1)
    const GoldenNumber x(mpq_class(f1), mpq_class(-f0));
    CHECK(x.sign() == (n % 2 == 0 ? 1 : -1));
    if (n < 60) CHECK(x.to_double() == doctest::Approx(std::pow(-kPhiBar, n)).epsilon(1e-12));
  }
}

TEST_CASE("to_double is correctly rounded and handles rationals") {
  CHECK(GoldenNumber(mpq_class(1, 3)).to_double() == 1.0 / 3.0);
  CHECK(GoldenNumber(7).to_double() == 7.0);
  CHECK(GoldenNumber::phi().to_double() == kPhi);
  CHECK(GoldenNumber(0).to_double() == 0.0);
  CHECK(to_real(GoldenNumber::phi(), 200).to_string(30).substr(0, 25) == "1.61803398874989484820458");
  CHECK_THROWS_AS(to_real(GoldenNumber(1), 10), std::invalid_argument);
}

TEST_CASE("floor") {
  CHECK(GoldenNumber::phi().floor() == 1);
  CHECK((-GoldenNumber::phi()).floor() == -2);
  CHECK((GoldenNumber(10) * GoldenNumber::phi()).floor() == 16);
  CHECK(GoldenNumber(mpq_class(-7, 2)).floor() == -4);
  CHECK(GoldenNumber(3).floor() == 3);
  // Just below an integer: 1 - phibar^40.
  GoldenNumber tiny(1);
  for (int i = 0; i < 40; ++i) tiny *= GoldenNumber::phi_bar();
  CHECK((GoldenNumber(5) - tiny).floor() == 4);
  CHECK((GoldenNumber(5) + tiny).floor() == 5);
}

TEST_CASE("parse and print round-trip") {
  CHECK(GoldenNumber::parse("phi") == GoldenNumber::phi());
  CHECK(GoldenNumber::parse("-phi") == -GoldenNumber::phi());
  CHECK(GoldenNumber::parse("1/2-3*phi") == GoldenNumber(mpq_class(1, 2), mpq_class(-3)));
  CHECK(GoldenNumber::parse("0.25") == GoldenNumber(mpq_class(1, 4)));
  CHECK(GoldenNumber::parse("1e-3") == GoldenNumber(mpq_class(1, 1000)));
  CHECK(GoldenNumber::parse("-1+phi") == GoldenNumber::phi_bar());
  CHECK_THROWS_AS(GoldenNumber::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(GoldenNumber::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(GoldenNumber::parse("abc"), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const GoldenNumber x = random_golden(rng);
    CHECK(GoldenNumber::parse(x.to_string()) == x);
    CHECK(GoldenNumber::parse(x.to_fraction_string()) == x);
  }
  CHECK(GoldenNumber(mpq_class(1, 2), mpq_class(-3, 4)).to_fraction_string() == "1/2-3/4*phi");
  CHECK(GoldenNumber::phi().to_fraction_string() == "0/1+1/1*phi");
}

TEST_CASE("from_double is exact") {
  CHECK(GoldenNumber::from_double(0.5) == GoldenNumber(mpq_class(1, 2)));
  CHECK(GoldenNumber::from_double(0.1).to_double() == 0.1);
  CHECK_THROWS_AS(GoldenNumber::from_double(NAN), std::domain_error);
  CHECK_THROWS_AS(GoldenNumber(0).inverse(), std::domain_error);
  CHECK_THROWS_AS(GoldenNumber(1) / GoldenNumber(0), std::domain_error);
}

TEST_CASE("hash agrees with equality") {
  const GoldenNumber a(mpq_class(2, 4), mpq_class(3));
  const GoldenNumber b(mpq_class(1, 2), mpq_class(6, 2));
  CHECK(a == b);
  CHECK(std::hash<GoldenNumber>{}(a) == std::hash<GoldenNumber>{}(b));
  std::unordered_set<GoldenNumber> set{a, b, GoldenNumber::phi()};
  CHECK(set.size() == 2);
}

TEST_CASE("GoldenInteger arithmetic") {
  const GoldenInteger phi = GoldenInteger::phi();
  CHECK(phi * phi == phi + GoldenInteger(1));
  CHECK(phi * GoldenInteger::phi_bar() == GoldenInteger(1));
  CHECK(GoldenInteger(3, -2).sign() == -1);  // 3 - 2 phi < 0
  CHECK(GoldenInteger(-3, 2).sign() == 1);
  CHECK(GoldenInteger(0, 0).sign() == 0);
  CHECK(GoldenInteger(3, 5).norm() == 9 + 15 - 25);
  CHECK(GoldenInteger(2, 3).to_golden() == GoldenNumber(2) + GoldenNumber(3) * GoldenNumber::phi());
  // Cancellation: F(41) - F(40) phi evaluated accurately.
  const GoldenInteger x(165580141, -102334155);
  CHECK(x.to_double() == doctest::Approx(std::pow(kPhiBar, 40)).epsilon(1e-10));
  CHECK_THROWS_AS(GoldenInteger(INT64_MAX) + GoldenInteger(1), std::overflow_error);
  CHECK_THROWS_AS(GoldenInteger(INT64_MAX / 2) * GoldenInteger(4), std::overflow_error);
}

TEST_CASE("Veech generators: Hecke relations") {
  const auto gens = lattice::veech_generators();
  REQUIRE(gens.size() == 4);
  const GoldenMatrix& s = gens[0];
  const GoldenMatrix& p = gens[1];
  for (const GoldenMatrix& g : gens) CHECK(g.det() == GoldenNumber(1));
  CHECK(s * s == -GoldenMatrix::identity());
  CHECK(s * gens[2] == GoldenMatrix::identity());
  CHECK(p * gens[3] == GoldenMatrix::identity());
  // (S P)^5 = +-I: the order-5 relation of the (2,5,inf) triangle group.
  const GoldenMatrix sp5 = power(s * p, 5);
  CHECK((sp5 == GoldenMatrix::identity() || sp5 == -GoldenMatrix::identity()));
  CHECK(power(s * p, 10) == GoldenMatrix::identity());
  CHECK(slope(GoldenVector{GoldenNumber(2), GoldenNumber::phi()}) == GoldenNumber::phi() / GoldenNumber(2));
  CHECK_THROWS_AS(slope(GoldenVector{GoldenNumber(0), GoldenNumber(1)}), std::domain_error);
}
