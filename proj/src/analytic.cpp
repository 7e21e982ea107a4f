#include "golden_gaps/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace golden_gaps::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPhi2 = kPhi * kPhi;
constexpr double kPhi3 = kPhi2 * kPhi;
constexpr double kPhi4 = kPhi3 * kPhi;
constexpr double kPhiBar2 = kPhiBar * kPhiBar;
constexpr double kPhiBar4 = kPhiBar2 * kPhiBar2;
constexpr double kPhiBar5 = kPhiBar4 * kPhiBar;

// r inside the tables: arguments land a rounding error past 1/4 at the
// breakpoints where r vanishes.
double r_piece(double x) { return std::sqrt(std::max(0.0, 1.0 - 4.0 * x)); }

double ath_piece(double x) { return std::atanh(std::min(x, 1.0)); }

template <class F>
double integrate(F f, double lo, double hi, double tolerance) {
  if (!(hi > lo)) return 0.0;
  double error = 0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 20, tolerance, &error);
}

PiecewiseFunction make_cdf(Zone zone) {
  using Piece = PiecewiseFunction::Piece;
  const Piece zero = [](double) { return 0.0; };
  switch (zone) {
    case Zone::Infinity:
      return {{1.0, 4.0 * kPhi, kPhi4},
              {zero,
               [](double a) { return 1.0 - (1.0 + std::log(a)) / a; },
               [](double a) {
                 const double r = r_piece(kPhi / a);
                 return 1.0 - (1.0 + std::log(a) - 4.0 * ath_piece(r)) / a - kPhiBar * r;
               },
               // Printed with +(phibar/2) r; continuity at phi^4 and the area
               // oracle both require the minus sign.
               [](double a) {
                 const double r = r_piece(kPhi / a);
                 return 1.5 * kPhiBar - (1.0 + 2.0 * std::log(kPhiBar * a / 2.0) + 2.0 * std::log(1.0 - r)) / a -
                        0.5 * kPhiBar * r;
               }}};
    case Zone::Phi:
      return {{kPhi, 4.0, kPhi3},
              {zero,
               [](double a) { return kPhiBar - (1.0 + std::log(kPhiBar * a)) / a; },
               [](double a) {
                 const double r = r_piece(1.0 / a);
                 return kPhiBar - (1.0 + std::log(kPhiBar * a) - 4.0 * ath_piece(r)) / a - r;
               },
               [](double) { return kPhiBar4; }}};
    case Zone::One:
      // The last piece starts at phi^2 (printed as phi^3, leaving a hole).
      return {{kPhi, 4.0 * kPhiBar, kPhi2},
              {zero,
               [](double a) { return kPhiBar - (1.0 + std::log(kPhiBar * a)) / a; },
               [](double a) {
                 const double r = r_piece(kPhiBar / a);
                 return kPhiBar - (1.0 + std::log(kPhiBar * a) - 2.0 * ath_piece(r)) / a - 0.5 * kPhi * r;
               },
               [](double) { return kPhiBar5 / 2.0; }}};
  }
  throw std::invalid_argument("unknown zone");
}

PiecewiseFunction make_pdf(Zone zone) {
  using Piece = PiecewiseFunction::Piece;
  const Piece zero = [](double) { return 0.0; };
  switch (zone) {
    case Zone::Infinity:
      return {{1.0, 4.0 * kPhi, kPhi4},
              {zero,
               [](double a) { return std::log(a) / (a * a); },
               [](double a) { return (std::log(a) - 4.0 * ath_piece(r_piece(kPhi / a))) / (a * a); },
               // 2 ln(phibar a / 2) + 2 ln(1 - r) rewritten as 2 log1p(u) with
               // u = (1 - r)/(1 + r); the printed form cancels for large alpha.
               [](double a) {
                 const double x = kPhi / a;
                 const double r = r_piece(x);
                 return 2.0 * std::log1p(4.0 * x / ((1.0 + r) * (1.0 + r))) / (a * a);
               }}};
    case Zone::Phi:
      return {{kPhi, 4.0, kPhi3},
              {zero,
               [](double a) { return std::log(kPhiBar * a) / (a * a); },
               [](double a) { return (std::log(kPhiBar * a) - 4.0 * ath_piece(r_piece(1.0 / a))) / (a * a); },
               zero}};
    case Zone::One:
      return {{kPhi, 4.0 * kPhiBar, kPhi2},
              {zero,
               [](double a) { return std::log(kPhiBar * a) / (a * a); },
               [](double a) { return (std::log(kPhiBar * a) - 2.0 * ath_piece(r_piece(kPhiBar / a))) / (a * a); },
               zero}};
  }
  throw std::invalid_argument("unknown zone");
}

constexpr std::array<Zone, 3> kZones{Zone::One, Zone::Phi, Zone::Infinity};

template <class Eval>
double normalized_sum(Eval eval) {
  double s = 0;
  for (Zone z : kZones) s += eval(z);
  return kInvariantDensity * s;
}

// Zone geometry in the (a, b) plane: a in [a_lo, 1], b between the largest
// lower line and the upper line, R < alpha iff b > 1/(alpha a) - shift * a.
struct Line {
  double c0, c1;
  double at(double a) const { return c0 + c1 * a; }
};

struct ZoneGeometry {
  double a_lo;
  Line upper;
  std::vector<Line> lower;
  double shift;
};

ZoneGeometry geometry(Zone zone) {
  switch (zone) {
    case Zone::Infinity:
      return {0.0, {1.0, 0.0}, {{kPhiBar, -kPhiBar}, {1.0, -kPhi}}, 0.0};
    case Zone::Phi:
      return {kPhiBar2, {kPhiBar, -kPhiBar}, {{kPhiBar, -1.0}, {1.0, -kPhi}}, kPhiBar};
    case Zone::One:
      return {kPhiBar, {kPhiBar, -1.0}, {{1.0, -kPhi}}, 1.0};
  }
  throw std::invalid_argument("unknown zone");
}

double lower_bound_at(const ZoneGeometry& g, double a) {
  double lo = g.lower.front().at(a);
  for (const Line& l : g.lower) lo = std::max(lo, l.at(a));
  return lo;
}

// Points in (a_lo, 1) where the integrand's piecewise structure changes: the
// zone corners and the crossings of the hyperbola with each boundary line.
std::vector<double> oracle_splits(const ZoneGeometry& g, double alpha) {
  std::vector<double> pts{g.a_lo, 1.0, kPhiBar2, kPhiBar};
  if (std::isfinite(alpha)) {
    std::vector<Line> lines = g.lower;
    lines.push_back(g.upper);
    for (const Line& l : lines) {
      // 1/(alpha a) - shift a = c0 + c1 a  <=>  (c1 + shift) a^2 + c0 a - 1/alpha = 0
      const double qa = l.c1 + g.shift, qb = l.c0, qc = -1.0 / alpha;
      if (std::abs(qa) < 1e-15) {
        pts.push_back(-qc / qb);
        continue;
      }
      const double disc = qb * qb - 4 * qa * qc;
      if (disc < 0) continue;
      const double sq = std::sqrt(disc);
      // Stable roots.
      const double t = -0.5 * (qb + std::copysign(sq, qb));
      pts.push_back(t / qa);
      if (t != 0) pts.push_back(qc / t);
    }
  }
  std::erase_if(pts, [&](double x) { return !(x >= g.a_lo && x <= 1.0); });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double sum_over_splits(const std::vector<double>& pts, const std::function<double(double)>& f, double tolerance) {
  double total = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += integrate(f, pts[i], pts[i + 1], tolerance);
  return total;
}

}  // namespace

double dilog(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("dilog: argument must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return kPi * kPi / 6.0;
  if (x > 0.5) return kPi * kPi / 6.0 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
  double sum = 0, power = 1;
  for (int k = 1; k < 200; ++k) {
    power *= x;
    const double term = power / (double(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double ath(double x) {
  if (!(std::abs(x) < 1.0)) throw std::domain_error("ath: |x| must be < 1");
  return 0.5 * std::log((1.0 + x) / (1.0 - x));
}

double rfun(double x) {
  if (!(x <= 0.25)) throw std::domain_error("rfun: x must be <= 1/4");
  return std::sqrt(1.0 - 4.0 * x);
}

PiecewiseFunction::PiecewiseFunction(std::vector<double> breakpoints, std::vector<Piece> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (pieces_.size() != breakpoints_.size() + 1) throw std::invalid_argument("PiecewiseFunction: need one piece per interval");
  if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end())) throw std::invalid_argument("PiecewiseFunction: unsorted breakpoints");
}

std::size_t PiecewiseFunction::piece_index(double x) const {
  return std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin();
}

double PiecewiseFunction::operator()(double x) const { return pieces_[piece_index(x)](x); }

double PiecewiseFunction::left_value(double x) const {
  const std::size_t i = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin();
  return pieces_[i](x);
}

double PiecewiseFunction::right_value(double x) const { return (*this)(x); }

const PiecewiseFunction& cdf_partial_function(Zone zone) {
  static const std::array<PiecewiseFunction, 3> table{make_cdf(Zone::One), make_cdf(Zone::Phi), make_cdf(Zone::Infinity)};
  return table[static_cast<std::size_t>(zone)];
}

const PiecewiseFunction& pdf_partial_function(Zone zone) {
  static const std::array<PiecewiseFunction, 3> table{make_pdf(Zone::One), make_pdf(Zone::Phi), make_pdf(Zone::Infinity)};
  return table[static_cast<std::size_t>(zone)];
}

double cdf_partial(Zone zone, double alpha) {
  if (std::isinf(alpha) && alpha > 0) return zone_area(zone);
  return alpha <= 0 ? 0.0 : cdf_partial_function(zone)(alpha);
}

double pdf_partial(Zone zone, double alpha) {
  if (alpha <= 0 || std::isinf(alpha)) return 0.0;
  return pdf_partial_function(zone)(alpha);
}

double zone_area(Zone zone) {
  switch (zone) {
    case Zone::One: return kPhiBar5 / 2.0;
    case Zone::Phi: return kPhiBar4;
    case Zone::Infinity: return kPhiBar;
  }
  throw std::invalid_argument("unknown zone");
}

double gap_cdf(double alpha) {
  return normalized_sum([&](Zone z) { return cdf_partial(z, alpha); });
}

double gap_pdf(double alpha) {
  return normalized_sum([&](Zone z) { return pdf_partial(z, alpha); });
}

double gap_survival(double alpha) {
  if (alpha < kPhi4) return 1.0 - gap_cdf(alpha);
  if (std::isinf(alpha)) return 0.0;
  // Only zone infinity is still incomplete. With x = phi/alpha, r = r(x) and
  // u = (1 - r)/(1 + r) = 4x/(1 + r)^2 the deficit phibar - F_inf is
  // (2 log1p(u) - u) / alpha.
  const double x = kPhi / alpha;
  const double r = r_piece(x);
  const double u = 4.0 * x / ((1.0 + r) * (1.0 + r));
  return kInvariantDensity * (2.0 * std::log1p(u) - u) / alpha;
}

double gap_cdf_left(double alpha) {
  return normalized_sum([&](Zone z) { return alpha <= 0 ? 0.0 : cdf_partial_function(z).left_value(alpha); });
}

double gap_cdf_right(double alpha) { return gap_cdf(alpha); }

double gap_pdf_left(double alpha) {
  return normalized_sum([&](Zone z) { return alpha <= 0 ? 0.0 : pdf_partial_function(z).left_value(alpha); });
}

double gap_pdf_right(double alpha) { return gap_pdf(alpha); }

std::vector<GoldenNumber> breakpoints() {
  return {GoldenNumber(1),
          GoldenNumber(0, 1),
          GoldenNumber(-4, 4),  // 4/phi
          GoldenNumber(1, 1),   // phi^2
          GoldenNumber(4),
          GoldenNumber(1, 2),   // phi^3
          GoldenNumber(0, 4),   // 4 phi
          GoldenNumber(2, 3)};  // phi^4
}

std::vector<double> breakpoint_values() {
  std::vector<double> out;
  for (const GoldenNumber& b : breakpoints()) out.push_back(b.to_double());
  return out;
}

double area_oracle(Zone zone, double alpha, double tolerance) {
  if (!(alpha > 0)) return 0.0;
  const ZoneGeometry g = geometry(zone);
  const auto length = [&](double a) {
    const double upper = g.upper.at(a);
    double lower = lower_bound_at(g, a);
    if (std::isfinite(alpha)) lower = std::max(lower, 1.0 / (alpha * a) - g.shift * a);
    return std::max(0.0, upper - lower);
  };
  return sum_over_splits(oracle_splits(g, alpha), length, tolerance);
}

double volume_quadrature(Zone zone, double tolerance) {
  const ZoneGeometry g = geometry(zone);
  // Inner integral of 1/(a (shift a + b)) db in closed form.
  const auto inner = [&](double a) {
    const double upper = g.upper.at(a);
    const double lower = lower_bound_at(g, a);
    if (upper <= lower) return 0.0;
    const double s = g.shift * a;
    return std::log((s + upper) / (s + lower)) / a;
  };
  return sum_over_splits(oracle_splits(g, std::numeric_limits<double>::infinity()), inner, tolerance);
}

double pdf_integral(double lo, double hi, double tolerance) {
  lo = std::max(lo, 0.0);
  if (!(hi > lo)) return 0.0;
  std::vector<double> pts{lo};
  for (double b : breakpoint_values()) {
    if (b > lo && b < hi) pts.push_back(b);
  }
  double total = 0;
  const double finite_hi = std::isinf(hi) ? std::max(lo, kPhi4) : hi;
  pts.push_back(finite_hi);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += integrate(gap_pdf, pts[i], pts[i + 1], tolerance);
  if (std::isinf(hi)) {
    // alpha = 1/u maps the tail onto (0, 1/finite_hi]; the integrand is bounded.
    total += integrate([](double u) { return u <= 0 ? 0.0 : gap_pdf(1.0 / u) / (u * u); }, 0.0, 1.0 / finite_hi,
                       tolerance);
  }
  return total;
}

double gap_mean_quadrature(double tolerance) {
  const std::vector<double> bp = breakpoint_values();
  std::vector<double> pts{1.0};
  pts.insert(pts.end(), bp.begin() + 1, bp.end());
  double total = 0;
  const auto first_moment = [](double a) { return a * gap_pdf(a); };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += integrate(first_moment, pts[i], pts[i + 1], tolerance);
  // The tail integrand alpha f(alpha) ~ 4/alpha^2 becomes bounded in u = 1/alpha.
  total += integrate([](double u) { return u <= 0 ? 0.0 : gap_pdf(1.0 / u) / (u * u * u); }, 0.0, 1.0 / kPhi4,
                     tolerance);
  return total;
}

double gap_mean_closed_form() { return kInvariantDensity * 3.0 * kPi * kPi / 10.0; }

double VolumeReport::max_discrepancy() const {
  return std::max({std::abs(v1 - v1_numeric), std::abs(vphi - vphi_numeric), std::abs(vinf - vinf_numeric),
                   std::abs(total - total_numeric)});
}

VolumeReport volumes() {
  const double l2 = std::log(kPhi) * std::log(kPhi);
  const double d = dilog(kPhiBar) - dilog(kPhiBar2);
  VolumeReport v;
  v.v1 = -l2 + d;
  v.vphi = -l2 + 2.0 * d;
  v.vinf = 2.0 * l2 + d + dilog(1.0);
  v.total = v.v1 + v.vphi + v.vinf;
  v.v1_numeric = volume_quadrature(Zone::One);
  v.vphi_numeric = volume_quadrature(Zone::Phi);
  v.vinf_numeric = volume_quadrature(Zone::Infinity);
  v.total_numeric = v.v1_numeric + v.vphi_numeric + v.vinf_numeric;
  v.expected_total = 3.0 * kPi * kPi / 10.0;
  return v;
}

std::vector<SmoothnessReport> pdf_smoothness() {
  // One-sided second-order differences; a slope that keeps growing as the
  // step shrinks is an infinite one-sided derivative.
  const auto left = [](double b, double h) {
    return (3.0 * gap_pdf_left(b) - 4.0 * gap_pdf(b - h) + gap_pdf(b - 2 * h)) / (2 * h);
  };
  const auto right = [](double b, double h) {
    return (-3.0 * gap_pdf_right(b) + 4.0 * gap_pdf(b + h) - gap_pdf(b + 2 * h)) / (2 * h);
  };
  constexpr double h = 1e-4;
  std::vector<SmoothnessReport> out;
  for (double b : breakpoint_values()) {
    SmoothnessReport s;
    s.point = b;
    s.left_derivative = left(b, h / 16);
    s.right_derivative = right(b, h / 16);
    s.unbounded = std::abs(left(b, h / 16)) > 2.0 * std::abs(left(b, h)) + 1.0 ||
                  std::abs(right(b, h / 16)) > 2.0 * std::abs(right(b, h)) + 1.0;
    s.differentiable = !s.unbounded && std::abs(s.left_derivative - s.right_derivative) < 1e-4;
    out.push_back(s);
  }
  return out;
}

}  // namespace golden_gaps::analytic
