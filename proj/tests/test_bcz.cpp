#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "golden_gaps/bcz.hpp"
#include "golden_gaps/errors.hpp"
#include "golden_gaps/lattice.hpp"
#include "golden_gaps/stats.hpp"

using namespace golden_gaps;
using bcz::ExactPoint;
using bcz::FloatPoint;
using bcz::Zone;

namespace {

const GoldenNumber kPhiG = GoldenNumber::phi();
const GoldenNumber kPhiBarG = GoldenNumber::phi_bar();

GoldenNumber q(long num, long den = 1) { return GoldenNumber(mpq_class(num, den)); }

// The printed zone inequalities, each intersected with Omega; used as an
// independent oracle for classify.
bool in_z1(double a, double b) { return a >= kPhiBar && a <= 1 && b > 1 - a * kPhi && b <= kPhiBar - a; }
bool in_zphi(double a, double b) {
  return a >= kPhiBar * kPhiBar && a <= 1 && b > std::max(kPhiBar - a, 1 - a * kPhi) && b <= kPhiBar * (1 - a);
}
bool in_zinf(double a, double b) { return a > 0 && a <= 1 && b > std::max(kPhiBar * (1 - a), 1 - a * kPhi) && b <= 1; }

}  // namespace

TEST_CASE("section membership") {
  CHECK(bcz::in_omega(ExactPoint{1, 1}));
  CHECK_FALSE(bcz::in_omega(ExactPoint{1, -kPhiBarG}));
  CHECK(bcz::in_omega(ExactPoint{kPhiBarG, q(1, 2)}));
  CHECK_FALSE(bcz::in_omega(ExactPoint{0, q(1, 2)}));
  CHECK_FALSE(bcz::in_omega(ExactPoint{q(1, 2), q(11, 10)}));
  CHECK(bcz::in_omega(FloatPoint{1.0, 1.0}));
  CHECK_FALSE(bcz::in_omega(FloatPoint{1.0, 1.0 - kPhi}));
}

TEST_CASE("zone classification examples") {
  CHECK(bcz::classify(ExactPoint{1, 1}) == Zone::Infinity);
  CHECK(bcz::classify(ExactPoint{1, q(-1, 2)}) == Zone::One);
  CHECK(bcz::classify(ExactPoint{kPhiBarG, q(1, 10)}) == Zone::Phi);
  CHECK_THROWS_AS(bcz::classify(ExactPoint{2, 1}), InvariantError);
  CHECK(bcz::zone_name(Zone::Phi) == "Zphi");
  CHECK(bcz::witness(Zone::One) == GoldenVector{kPhiG, kPhiG});
}

TEST_CASE("return time examples") {
  CHECK(bcz::return_time(ExactPoint{1, 1}) == GoldenNumber(1));
  CHECK(bcz::return_time(ExactPoint{1, q(-1, 2)}) == GoldenNumber(2));
  const double expected = 1.0 / (kPhiBar * (kPhiBar * kPhiBar + 0.1));
  CHECK(bcz::return_time(ExactPoint{kPhiBarG, q(1, 10)}).to_double() == doctest::Approx(expected).epsilon(1e-14));
  // The quoted 3.3566 is a rounding slip; the exact value is 3.35715...
  CHECK(std::abs(expected - 3.3566) < 1e-3);
  CHECK(bcz::return_time(FloatPoint{1.0, -0.5}) == 2.0);
}

TEST_CASE("normalization k follows the membership condition") {
  CHECK(bcz::normalization_k(1, -1) == 1);
  CHECK(bcz::normalization_k(1, kPhiBarG) == 0);
  CHECK(bcz::normalization_k(q(1, 2), 2) == -2);
  CHECK_THROWS(bcz::normalization_k(0, 1));
}

TEST_CASE("the printed ceiling k overshoots by one at (1, 1)") {
  const ExactPoint p{1, 1};
  const mpz_class k = bcz::normalization_k(1, -1);
  CHECK(bcz::ceiling_k(p) == k + 1);
  // With the printed k the image leaves the section: b' = 2 phi - 1 > 1.
  const GoldenNumber b_printed = GoldenNumber(-1) + GoldenNumber(mpq_class(bcz::ceiling_k(p))) * kPhiG;
  CHECK(b_printed == GoldenNumber(2) * kPhiG - 1);
  CHECK_FALSE(bcz::in_omega(ExactPoint{1, b_printed}));
}

TEST_CASE("map examples") {
  CHECK(bcz::apply_map(ExactPoint{1, 1}) == ExactPoint{1, kPhiG - 1});
  const ExactPoint img = bcz::apply_map(ExactPoint{1, q(-1, 2)});
  CHECK(img.a == q(1, 2) * kPhiG);
  CHECK(bcz::in_omega(img));
  // b' = 1 - phi/2 + k phi^2 / 2 for an integer k.
  const GoldenNumber k_times = (img.b - 1 + q(1, 2) * kPhiG) / (q(1, 2) * kPhiG * kPhiG);
  CHECK(k_times.is_rational());
  CHECK(k_times.rational_part().get_den() == 1);
}

TEST_CASE("section point for a radius") {
  CHECK(bcz::section_point_for_radius(2) == ExactPoint{q(1, 2), kPhiG / 2});
  CHECK(bcz::section_point_for_radius(10) == ExactPoint{q(1, 10), q(6, 10) * kPhiG});
  for (long r = 2; r < 200; ++r) CHECK(bcz::in_omega(bcz::section_point_for_radius(r)));
  CHECK_THROWS(bcz::section_point_for_radius(1));
}

TEST_CASE("inverse map recovers preimages on random exact points") {
  stats::Rng rng(2024, 0);
  for (int i = 0; i < 10000; ++i) {
    const FloatPoint f = stats::sample_omega(rng);
    const ExactPoint p{GoldenNumber::from_double(f.a), GoldenNumber::from_double(f.b)};
    if (!bcz::in_omega(p)) continue;
    const ExactPoint image = bcz::apply_map(p);
    REQUIRE(bcz::in_omega(image));
    CHECK(bcz::inverse_map(image) == p);
    const ExactPoint pre = bcz::inverse_map(p);
    CHECK(bcz::apply_map(pre) == p);
  }
}

TEST_CASE("zones partition the section") {
  stats::Rng rng(5, 0);
  for (int i = 0; i < 1'000'000; ++i) {
    const FloatPoint p = stats::sample_omega(rng);
    const int matches = int(in_z1(p.a, p.b)) + int(in_zphi(p.a, p.b)) + int(in_zinf(p.a, p.b));
    REQUIRE(matches == 1);
    const Zone z = bcz::classify(p);
    CHECK((z == Zone::One ? in_z1(p.a, p.b) : z == Zone::Phi ? in_zphi(p.a, p.b) : in_zinf(p.a, p.b)));
    REQUIRE(bcz::return_time(p) > 1.0);
  }
}

TEST_CASE("return time is at least one, with equality only at (1, 1)") {
  CHECK(bcz::return_time(FloatPoint{1.0, 1.0}) == 1.0);
  for (const ExactPoint& p : {ExactPoint{1, q(99, 100)}, ExactPoint{q(99, 100), 1}, ExactPoint{kPhiBarG, kPhiBarG * kPhiBarG * kPhiBarG},
                              ExactPoint{1, -kPhiBarG * kPhiBarG + q(1, 1000)}}) {
    CHECK(bcz::return_time(p) > GoldenNumber(1));
  }
}

TEST_CASE("BCZ gaps equal enumerated gaps as exact multisets") {
  for (long r : {10L, 20L, 50L}) {
    const GapSample b = bcz::gaps_via_bcz(r, bcz::Mode::Exact);
    const GapSample d = lattice::gaps_direct(r);
    auto x = *b.exact_gaps;
    auto y = *d.exact_gaps;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    CHECK(x == y);
    for (const GoldenNumber& g : x) CHECK(g >= GoldenNumber(1));
  }
}

TEST_CASE("float mode follows the exact orbit") {
  for (long r : {50L, 333L}) {
    const GapSample e = bcz::gaps_via_bcz(r, bcz::Mode::Exact);
    const GapSample f = bcz::gaps_via_bcz(r, bcz::Mode::Float);
    REQUIRE(e.gaps.size() == f.gaps.size());
    for (std::size_t i = 0; i < e.gaps.size(); ++i) CHECK(f.gaps[i] == doctest::Approx(e.gaps[i]).epsilon(1e-13));
    CHECK_FALSE(f.exact_gaps.has_value());
  }
}

TEST_CASE("RadiusOrbit tracks the exact map") {
  bcz::RadiusOrbit orbit(37);
  ExactPoint p = bcz::section_point_for_radius(37);
  for (int i = 0; i < 400; ++i) {
    REQUIRE(orbit.exact_point() == p);
    CHECK(orbit.zone() == bcz::classify(p));
    CHECK(orbit.exact_return_time() == bcz::return_time(p));
    p = bcz::apply_map(p);
    orbit.advance();
  }
}

TEST_CASE("the orbit of x_R closes after the slopes of [0, phi)") {
  // Each period sweeps the slopes in [0, phi): the return times add up to
  // phi R^2 exactly, and there are more steps than slopes in [0, 1].
  const ExactPoint start = bcz::section_point_for_radius(10);
  const auto trace = bcz::orbit(start, 200);
  REQUIRE(trace.closed);
  CHECK(*trace.period == 46);
  GoldenNumber total(0);
  for (std::size_t i = 0; i < *trace.period; ++i) total += trace.return_times[i];
  CHECK(total == GoldenNumber(100) * kPhiG);
  CHECK(*trace.period > lattice::slopes(10).count());

  bcz::RadiusOrbit fast(10);
  std::size_t steps = 0;
  do {
    fast.advance();
    ++steps;
  } while (!fast.at_start());
  CHECK(steps == 46);
}

TEST_CASE("orbit traces") {
  CHECK(bcz::orbit(ExactPoint{1, 1}, 0).points.empty());
  const auto one = bcz::orbit(ExactPoint{1, 1}, 1);
  REQUIRE(one.points.size() == 1);
  CHECK(one.zones[0] == Zone::Infinity);
  CHECK(one.return_times[0] == GoldenNumber(1));
  CHECK_THROWS_AS(bcz::orbit(FloatPoint{2.0, 0.5}, 3), InvariantError);
}

TEST_CASE("Birkhoff average of the return time") {
  // Generic float orbit; the invariant probability is (2/phi) da db and the
  // integral of R over the section is 3 pi^2 / 10.
  const auto trace = bcz::orbit(FloatPoint{0.7390851332151607, 0.3183098861837907}, 1'000'000);
  double sum = 0;
  for (double t : trace.return_times) {
    REQUIRE(t >= 1.0);
    sum += t;
  }
  const double expected = (2.0 / kPhi) * 3.0 * std::numbers::pi * std::numbers::pi / 10.0;
  CHECK(sum / double(trace.return_times.size()) == doctest::Approx(expected).epsilon(0.01));
  CHECK_FALSE(trace.closed);
}

TEST_CASE("T preserves the area measure") {
  const stats::ChiSquareResult r = stats::measure_preservation(200'000, 99);
  CHECK(r.p_value > 1e-3);
}
