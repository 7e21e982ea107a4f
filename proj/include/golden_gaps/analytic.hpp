#pragma once

// Closed-form limiting gap distribution of the golden L and its numeric
// cross-checks.
//
// For each zone Z of the section, cdf_partial(Z, alpha) is the (unnormalized)
// area of {(a, b) in Z : R(a, b) < alpha}. The probability cdf carries the
// density 2/phi of the invariant measure:
//
//   gap_cdf(alpha) = (2/phi) * sum_Z cdf_partial(Z, alpha).

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "golden_gaps/bcz.hpp"
#include "golden_gaps/golden.hpp"

namespace golden_gaps::analytic {

using bcz::Zone;

inline constexpr double kInvariantDensity = 2.0 / kPhi;

/// Li_2(x) on [0, 1]; throws std::domain_error outside.
double dilog(double x);
/// Inverse hyperbolic tangent; |x| < 1.
double ath(double x);
/// sqrt(1 - 4x); x <= 1/4.
double rfun(double x);

/// Breakpoints b_0 < ... < b_{n-1} on [0, inf); piece i covers [b_{i-1}, b_i)
/// with b_{-1} = 0 and b_n = inf.
class PiecewiseFunction {
 public:
  using Piece = std::function<double(double)>;

  PiecewiseFunction(std::vector<double> breakpoints, std::vector<Piece> pieces);

  double operator()(double x) const;
  std::size_t piece_index(double x) const;
  double evaluate_piece(std::size_t index, double x) const { return pieces_.at(index)(x); }
  /// Limits at x from the left and right pieces (equal away from breakpoints).
  double left_value(double x) const;
  double right_value(double x) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::size_t piece_count() const { return pieces_.size(); }

 private:
  std::vector<double> breakpoints_;
  std::vector<Piece> pieces_;
};

const PiecewiseFunction& cdf_partial_function(Zone zone);
const PiecewiseFunction& pdf_partial_function(Zone zone);

double cdf_partial(Zone zone, double alpha);
double pdf_partial(Zone zone, double alpha);

/// Area of the zone, the alpha -> infinity limit of cdf_partial.
double zone_area(Zone zone);

double gap_cdf(double alpha);
double gap_pdf(double alpha);
/// 1 - gap_cdf(alpha), evaluated without cancellation in the tail.
double gap_survival(double alpha);

/// One-sided limits of gap_cdf / gap_pdf at alpha.
double gap_cdf_left(double alpha);
double gap_cdf_right(double alpha);
double gap_pdf_left(double alpha);
double gap_pdf_right(double alpha);

/// Candidate non-smooth points {1, phi, 4/phi, phi^2, 4, phi^3, 4 phi, phi^4}.
std::vector<GoldenNumber> breakpoints();
std::vector<double> breakpoint_values();

/// Area of {(a, b) in zone : R(a, b) < alpha} by adaptive quadrature over a of
/// the closed-form length in b. alpha may be +infinity.
double area_oracle(Zone zone, double alpha, double tolerance = 1e-12);

/// Integral of R over the zone by quadrature.
double volume_quadrature(Zone zone, double tolerance = 1e-13);

/// Integral of gap_pdf over [lo, hi] (hi may be +infinity), split at breakpoints.
double pdf_integral(double lo, double hi, double tolerance = 1e-13);
/// First moment of the gap law by quadrature.
double gap_mean_quadrature(double tolerance = 1e-13);
/// (2/phi) * total volume = 3 pi^2 / (5 phi).
double gap_mean_closed_form();

struct VolumeReport {
  double v1 = 0, vphi = 0, vinf = 0, total = 0;
  double v1_numeric = 0, vphi_numeric = 0, vinf_numeric = 0, total_numeric = 0;
  double expected_total = 0;  // 3 pi^2 / 10

  double max_discrepancy() const;
};

VolumeReport volumes();

struct SmoothnessReport {
  double point = 0;
  double left_derivative = 0;
  double right_derivative = 0;
  /// A one-sided derivative is infinite (square-root onset).
  bool unbounded = false;
  bool differentiable = false;
};

/// One-sided derivatives of gap_pdf at each candidate breakpoint.
std::vector<SmoothnessReport> pdf_smoothness();

}  // namespace golden_gaps::analytic
