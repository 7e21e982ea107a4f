#include "golden_gaps/bcz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "golden_gaps/errors.hpp"

namespace golden_gaps::bcz {

namespace {

const GoldenNumber& phi() {
  static const GoldenNumber value = GoldenNumber::phi();
  return value;
}

const GoldenNumber& phi_bar() {
  static const GoldenNumber value = GoldenNumber::phi_bar();
  return value;
}

const GoldenNumber& phi_bar_sq() {
  static const GoldenNumber value = GoldenNumber::phi_bar() * GoldenNumber::phi_bar();
  return value;
}

const GoldenNumber kOne(1);

// Zone by the upper boundaries alone; lower bounds come from Omega.
Zone classify_unchecked(const ExactPoint& p) {
  if (p.b > phi_bar() * (kOne - p.a)) return Zone::Infinity;
  if (p.b > phi_bar() - p.a) return Zone::Phi;
  return Zone::One;
}

struct RawImage {
  GoldenNumber a_new;
  GoldenNumber b_raw;
};

RawImage raw_image(const ExactPoint& p, Zone z) {
  switch (z) {
    case Zone::One:
      return {(p.a + p.b) * phi(), p.a + p.b * phi()};
    case Zone::Phi:
      return {p.a + p.b * phi(), p.b};
    case Zone::Infinity:
      return {p.b, -p.a};
  }
  throw InvariantError("raw_image: unknown zone");
}

ExactPoint step(const ExactPoint& p, Zone z) {
  RawImage img = raw_image(p, z);
  const mpz_class k = normalization_k(img.a_new, img.b_raw);
  GoldenNumber b = img.b_raw + GoldenNumber(mpq_class(k)) * phi() * img.a_new;
  return {std::move(img.a_new), std::move(b)};
}

ExactPoint to_exact(const FloatPoint& p) { return {GoldenNumber::from_double(p.a), GoldenNumber::from_double(p.b)}; }

FloatPoint to_float(const ExactPoint& p) { return {p.a.to_double(), p.b.to_double()}; }

// Rounding an exact image can land a hair outside Omega; pull it back in.
FloatPoint clamp_into_omega(FloatPoint p) {
  p.a = std::min(p.a, 1.0);
  p.b = std::min(p.b, 1.0);
  const double lower = 1.0 - p.a * kPhi;
  if (!(p.b > lower)) p.b = std::nextafter(lower, 2.0);
  return p;
}

bool near_boundary(const FloatPoint& p) {
  const double a = p.a;
  const double b = p.b;
  const double d = std::min({std::abs(1.0 - a), std::abs(b - (1.0 - a * kPhi)), std::abs(1.0 - b),
                             std::abs(b - kPhiBar * (1.0 - a)), std::abs(b - (kPhiBar - a))});
  return d < kBoundaryGuard;
}

Zone classify_float_unguarded(const FloatPoint& p) {
  if (p.b > kPhiBar * (1.0 - p.a)) return Zone::Infinity;
  if (p.b > kPhiBar - p.a) return Zone::Phi;
  return Zone::One;
}

double return_time_in_zone(const FloatPoint& p, Zone z) {
  switch (z) {
    case Zone::One:
      return 1.0 / (p.a * (p.a + p.b));
    case Zone::Phi:
      return 1.0 / (p.a * (p.a * kPhiBar + p.b));
    case Zone::Infinity:
      return 1.0 / (p.a * p.b);
  }
  throw InvariantError("return_time: unknown zone");
}

struct FloatStep {
  FloatPoint next;
  Zone zone;
  bool guarded;
};

FloatStep step_float(const FloatPoint& p) {
  auto exact_step = [&p]() {
    const ExactPoint e = to_exact(p);
    const Zone z = classify_unchecked(e);
    return FloatStep{clamp_into_omega(to_float(step(e, z))), z, true};
  };
  if (near_boundary(p)) return exact_step();

  const Zone z = classify_float_unguarded(p);
  double a_new = 0.0;
  double b_raw = 0.0;
  switch (z) {
    case Zone::One:
      a_new = (p.a + p.b) * kPhi;
      b_raw = p.a + p.b * kPhi;
      break;
    case Zone::Phi:
      a_new = p.a + p.b * kPhi;
      b_raw = p.b;
      break;
    case Zone::Infinity:
      a_new = p.b;
      b_raw = -p.a;
      break;
  }
  const double shift = kPhi * a_new;
  const double k = std::floor((1.0 - b_raw) / shift);
  const double b_new = b_raw + k * shift;
  const double lower = 1.0 - shift;
  if (std::abs(1.0 - b_new) < kBoundaryGuard || std::abs(b_new - lower) < kBoundaryGuard ||
      !(b_new <= 1.0 && b_new > lower) || !(a_new > 0.0 && a_new <= 1.0)) {
    return exact_step();
  }
  return {{a_new, b_new}, z, false};
}

}  // namespace

std::string_view zone_name(Zone z) {
  switch (z) {
    case Zone::One:
      return "Z1";
    case Zone::Phi:
      return "Zphi";
    case Zone::Infinity:
      return "Zinf";
  }
  return "?";
}

GoldenVector witness(Zone z) {
  switch (z) {
    case Zone::One:
      return {phi(), phi()};
    case Zone::Phi:
      return {kOne, phi()};
    case Zone::Infinity:
      return {GoldenNumber(0), kOne};
  }
  throw InvariantError("witness: unknown zone");
}

bool in_omega(const ExactPoint& p) {
  return p.a.sign() > 0 && p.a <= kOne && p.b > kOne - p.a * phi() && p.b <= kOne;
}

bool in_omega(const FloatPoint& p) {
  if (!(p.a > 0.0 && p.a <= 1.0 && p.b <= 1.0)) return false;
  const double lower = 1.0 - p.a * kPhi;
  if (std::abs(p.b - lower) < kBoundaryGuard) return in_omega(to_exact(p));
  return p.b > lower;
}

Zone classify(const ExactPoint& p) {
  if (!in_omega(p)) throw InvariantError("classify: point " + p.a.to_string() + ", " + p.b.to_string() + " is outside the section");
  const Zone z = classify_unchecked(p);
  // Lower a-bounds of the zones are implied by Omega; check them anyway.
  if (z == Zone::Phi && p.a < phi_bar_sq()) throw InvariantError("classify: Zphi point with a < phi^-2");
  if (z == Zone::One && p.a < phi_bar()) throw InvariantError("classify: Z1 point with a < phi^-1");
  return z;
}

Zone classify(const FloatPoint& p) {
  if (!in_omega(p)) throw InvariantError("classify: float point outside the section");
  if (near_boundary(p)) return classify(to_exact(p));
  return classify_float_unguarded(p);
}

GoldenNumber return_time(const ExactPoint& p) {
  switch (classify(p)) {
    case Zone::One:
      return (p.a * (p.a + p.b)).inverse();
    case Zone::Phi:
      return (p.a * (p.a * phi_bar() + p.b)).inverse();
    case Zone::Infinity:
      return (p.a * p.b).inverse();
  }
  throw InvariantError("return_time: unknown zone");
}

double return_time(const FloatPoint& p) { return return_time_in_zone(p, classify(p)); }

mpz_class normalization_k(const GoldenNumber& a_new, const GoldenNumber& b_raw) {
  if (a_new.sign() <= 0) throw std::domain_error("normalization_k: a_new must be positive");
  const GoldenNumber shift = phi() * a_new;
  mpz_class k = ((kOne - b_raw) / shift).floor();
  // The membership condition is authoritative.
  auto image = [&](const mpz_class& kk) { return b_raw + GoldenNumber(mpq_class(kk)) * shift; };
  while (image(k) > kOne) --k;
  while (image(k) <= kOne - shift) ++k;
  return k;
}

mpz_class ceiling_k(const ExactPoint& p) {
  const RawImage img = raw_image(p, classify(p));
  const mpz_class f = ((img.b_raw - kOne) / (phi() * img.a_new)).floor();
  return -f;
}

ExactPoint apply_map(const ExactPoint& p) { return step(p, classify(p)); }

FloatPoint apply_map(const FloatPoint& p) {
  if (!in_omega(p)) throw InvariantError("apply_map: float point outside the section");
  return step_float(p).next;
}

ExactPoint inverse_map(const ExactPoint& target) {
  if (!in_omega(target)) throw InvariantError("inverse_map: point outside the section");
  const GoldenNumber& a1 = target.a;
  const GoldenNumber& b1 = target.b;
  const double a1d = a1.to_double();
  const double b1d = b1.to_double();

  std::vector<ExactPoint> found;
  // For each branch the preimage is affine in k; sweep k over the float range
  // where the preimage could sit in Omega and confirm exactly.
  auto sweep = [&](Zone z, double k_lo, double k_hi, auto&& candidate) {
    const long lo = static_cast<long>(std::floor(k_lo)) - 1;
    const long hi = static_cast<long>(std::ceil(k_hi)) + 1;
    for (long k = lo; k <= hi; ++k) {
      const ExactPoint c = candidate(GoldenNumber(k));
      if (!in_omega(c) || classify(c) != z) continue;
      if (step(c, z) == target) found.push_back(c);
    }
  };
  const double shift = kPhi * a1d;
  // Zinf: b = a', a = k phi a' - b', 0 < a <= 1.
  sweep(Zone::Infinity, b1d / shift, (1.0 + b1d) / shift,
        [&](const GoldenNumber& k) { return ExactPoint{k * phi() * a1 - b1, a1}; });
  // Zphi: b = b' - k phi a', a = a' - b phi; b in [(a'-1)/phi, a'/phi) and b in (1-phi, 1].
  {
    const double b_lo = std::max((a1d - 1.0) / kPhi, 1.0 - kPhi);
    const double b_hi = std::min(a1d / kPhi, 1.0);
    if (b_lo <= b_hi + 1e-9) {
      sweep(Zone::Phi, (b1d - b_hi) / shift, (b1d - b_lo) / shift, [&](const GoldenNumber& k) {
        GoldenNumber b = b1 - k * phi() * a1;
        GoldenNumber a = a1 - b * phi();
        return ExactPoint{std::move(a), std::move(b)};
      });
    }
  }
  // Z1: b = phi b' - k phi^2 a' - a', a = a'/phi - b; b in [a'/phi - 1, a'/phi).
  {
    const double b_lo = std::max(a1d * kPhiBar - 1.0, 1.0 - kPhi);
    const double b_hi = std::min(a1d * kPhiBar, 1.0);
    const double step_len = kPhi * kPhi * a1d;
    if (b_lo <= b_hi + 1e-9) {
      sweep(Zone::One, (kPhi * b1d - a1d - b_hi) / step_len, (kPhi * b1d - a1d - b_lo) / step_len,
            [&](const GoldenNumber& k) {
              GoldenNumber b = phi() * b1 - k * phi() * phi() * a1 - a1;
              GoldenNumber a = a1 * phi_bar() - b;
              return ExactPoint{std::move(a), std::move(b)};
            });
    }
  }
  if (found.size() != 1) {
    throw InvariantError("inverse_map: expected one preimage, found " + std::to_string(found.size()));
  }
  return found.front();
}

ExactPoint section_point_for_radius(long radius) {
  if (radius < 2) throw std::invalid_argument("section_point_for_radius: radius must be >= 2");
  GoldenNumber a = GoldenNumber(mpq_class(1, radius));
  const mpz_class k = normalization_k(a, GoldenNumber(0));
  GoldenNumber b = GoldenNumber(mpq_class(k)) * phi() * a;
  return {std::move(a), std::move(b)};
}

// ---------------------------------------------------------------------------
// RadiusOrbit: state (A, B) = R (a, b) in Z[phi].

RadiusOrbit::RadiusOrbit(long radius) : radius_(radius) {
  if (radius < 2) throw std::invalid_argument("RadiusOrbit: radius must be >= 2");
  const ExactPoint p = section_point_for_radius(radius);
  const GoldenNumber scaled = p.b * GoldenNumber(radius);
  const long k = scaled.phi_part().get_num().get_si();
  state_ = {GoldenInteger(1), GoldenInteger(0, k)};
  start_ = state_;
  update_zone();
}

void RadiusOrbit::update_zone() {
  const GoldenInteger r(radius_);
  const GoldenInteger& a = state_.re;
  const GoldenInteger& b = state_.im;
  if (b > GoldenInteger::phi_bar() * (r - a)) {
    zone_ = Zone::Infinity;
  } else if (b > GoldenInteger::phi_bar() * r - a) {
    zone_ = Zone::Phi;
  } else {
    zone_ = Zone::One;
  }
}

namespace {

GoldenInteger scaled_denominator(const IntegerVector& s, Zone z) {
  switch (z) {
    case Zone::One:
      return s.re * (s.re + s.im);
    case Zone::Phi:
      return s.re * (s.re * GoldenInteger::phi_bar() + s.im);
    case Zone::Infinity:
      return s.re * s.im;
  }
  throw InvariantError("scaled_denominator: unknown zone");
}

}  // namespace

double RadiusOrbit::return_time() const {
  const double r = static_cast<double>(radius_);
  const IntegerVector& s = state_;
  switch (zone_) {
    case Zone::One:
      return r * r / (s.re.to_double() * (s.re + s.im).to_double());
    case Zone::Phi:
      return r * r / (s.re.to_double() * (s.re * GoldenInteger::phi_bar() + s.im).to_double());
    case Zone::Infinity:
      return r * r / (s.re.to_double() * s.im.to_double());
  }
  throw InvariantError("return_time: unknown zone");
}

GoldenNumber RadiusOrbit::exact_return_time() const {
  return GoldenNumber(radius_ * radius_) / scaled_denominator(state_, zone_).to_golden();
}

ExactPoint RadiusOrbit::exact_point() const {
  const GoldenNumber r(radius_);
  return {state_.re.to_golden() / r, state_.im.to_golden() / r};
}

FloatPoint RadiusOrbit::point() const {
  const double r = static_cast<double>(radius_);
  return {state_.re.to_double() / r, state_.im.to_double() / r};
}

void RadiusOrbit::advance() {
  const GoldenInteger r(radius_);
  const GoldenInteger phi_i = GoldenInteger::phi();
  const IntegerVector& s = state_;
  GoldenInteger a_new;
  GoldenInteger b_raw;
  switch (zone_) {
    case Zone::One:
      a_new = (s.re + s.im) * phi_i;
      b_raw = s.re + s.im * phi_i;
      break;
    case Zone::Phi:
      a_new = s.re + s.im * phi_i;
      b_raw = s.im;
      break;
    case Zone::Infinity:
      a_new = s.im;
      b_raw = -s.re;
      break;
  }
  const GoldenInteger shift = phi_i * a_new;
  auto k = static_cast<std::int64_t>(std::floor((static_cast<double>(radius_) - b_raw.to_double()) / shift.to_double()));
  GoldenInteger b_new = b_raw + GoldenInteger(k) * shift;
  while (b_new > r) {
    b_new = b_new - shift;
    --k;
  }
  while (b_new <= r - shift) {
    b_new = b_new + shift;
    ++k;
  }
  state_ = {a_new, b_new};
  update_zone();
}

// ---------------------------------------------------------------------------

GapSample gaps_via_bcz(long radius, Mode mode) {
  if (radius < 2) throw std::invalid_argument("gaps_via_bcz: radius must be >= 2");
  GapSample out;
  out.radius = radius;
  out.method = GapMethod::Bcz;
  const double r2 = static_cast<double>(radius) * static_cast<double>(radius);

  if (mode == Mode::Float) {
    RadiusOrbit orbit(radius);
    double total = 0.0;
    out.gaps.reserve(static_cast<std::size_t>(r2 / 3.5) + 16);
    while (total < r2 - 0.5) {
      const double t = orbit.return_time();
      out.gaps.push_back(t);
      total += t;
      orbit.advance();
      if (orbit.at_start()) throw InvariantError("gaps_via_bcz: orbit closed before the slopes reached 1");
    }
    out.slope_count = out.gaps.size() + 1;
    return out;
  }

  const GoldenNumber target(radius * radius);
  GoldenNumber total(0);
  ExactPoint p = section_point_for_radius(radius);
  std::vector<GoldenNumber> exact;
  while (total < target) {
    const Zone z = classify(p);
    GoldenNumber t = return_time(p);
    total += t;
    out.gaps.push_back(t.to_double());
    exact.push_back(std::move(t));
    p = step(p, z);
  }
  if (total != target) throw InvariantError("gaps_via_bcz: cumulative return time overshot R^2");
  out.slope_count = exact.size() + 1;
  out.exact_gaps = std::move(exact);
  return out;
}

OrbitTrace<ExactPoint> orbit(const ExactPoint& start, std::size_t steps) {
  OrbitTrace<ExactPoint> trace;
  ExactPoint p = start;
  for (std::size_t i = 0; i < steps; ++i) {
    const Zone z = classify(p);
    trace.points.push_back(p);
    trace.zones.push_back(z);
    trace.return_times.push_back(return_time(p));
    p = step(p, z);
    if (!trace.period && p == start) {
      trace.closed = true;
      trace.period = i + 1;
    }
  }
  return trace;
}

OrbitTrace<FloatPoint> orbit(const FloatPoint& start, std::size_t steps) {
  if (steps > 0 && !in_omega(start)) throw InvariantError("orbit: start point outside the section");
  OrbitTrace<FloatPoint> trace;
  FloatPoint p = start;
  for (std::size_t i = 0; i < steps; ++i) {
    const FloatStep s = step_float(p);
    trace.points.push_back(p);
    trace.zones.push_back(s.zone);
    trace.return_times.push_back(return_time_in_zone(p, s.zone));
    if (s.guarded) ++trace.guarded_steps;
    p = s.next;
    if (!trace.period && p == start) {
      trace.closed = true;
      trace.period = i + 1;
    }
  }
  return trace;
}

}  // namespace golden_gaps::bcz
