#pragma once

// The BCZ map of the golden L: first return of the horocycle flow to the
// section Omega = {(a, b): 0 < a <= 1, 1 - a phi < b <= 1}.
//
// Omega splits into three zones. On each zone the next saddle connection
// to cross the unit strip is the image of a fixed witness vector, which
// gives the return time R(a, b) and the return map T(a, b):
//
//   zone   witness    R(a, b)              T(a, b) before normalization
//   Z1     (phi,phi)  1/(a(a+b))           ((a+b) phi, a + b phi)
//   Zphi   (1,phi)    1/(a(a/phi + b))     (a + b phi, b)
//   Zinf   (0,1)      1/(ab)               (b, -a)
//
// The second coordinate is then shifted by k phi a' into (1 - a' phi, 1].

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "golden_gaps/gap_sample.hpp"
#include "golden_gaps/linalg.hpp"

namespace golden_gaps::bcz {

enum class Zone { One, Phi, Infinity };

std::string_view zone_name(Zone z);
GoldenVector witness(Zone z);

enum class Mode { Exact, Float };

/// Float steps whose decisions fall this close to a zone or section
/// boundary are recomputed in exact arithmetic.
inline constexpr double kBoundaryGuard = 1e-12;

struct ExactPoint {
  GoldenNumber a{1};
  GoldenNumber b{1};
  friend bool operator==(const ExactPoint&, const ExactPoint&) = default;
};

struct FloatPoint {
  double a = 1.0;
  double b = 1.0;
  friend bool operator==(const FloatPoint&, const FloatPoint&) = default;
};

bool in_omega(const ExactPoint& p);
bool in_omega(const FloatPoint& p);

/// Throws InvariantError for points outside Omega.
Zone classify(const ExactPoint& p);
Zone classify(const FloatPoint& p);

GoldenNumber return_time(const ExactPoint& p);
double return_time(const FloatPoint& p);

/// The integer k with b_raw + k phi a_new in (1 - phi a_new, 1]; a_new > 0.
mpz_class normalization_k(const GoldenNumber& a_new, const GoldenNumber& b_raw);

/// -floor((b_raw - 1) / (phi a_new)) for the zone of p, i.e. the ceiling of
/// the quotient normalization_k floors. It overshoots by one whenever the
/// quotient is not an integer. Kept only for comparison.
mpz_class ceiling_k(const ExactPoint& p);

ExactPoint apply_map(const ExactPoint& p);
FloatPoint apply_map(const FloatPoint& p);

/// Searches the three inverse branches. Throws InvariantError unless exactly
/// one preimage exists.
ExactPoint inverse_map(const ExactPoint& p);

/// Section coordinates of the golden L renormalized by diag(1/R, R):
/// a = 1/R, b = k phi / R with b in (1 - phi/R, 1].
ExactPoint section_point_for_radius(long radius);

/// Iterates T along the orbit of x_R in Z[phi] (coordinates scaled by R).
/// Exact and fast; overflow raises std::overflow_error.
class RadiusOrbit {
 public:
  explicit RadiusOrbit(long radius);

  long radius() const { return radius_; }
  const IntegerVector& scaled_state() const { return state_; }
  Zone zone() const { return zone_; }
  ExactPoint exact_point() const;
  FloatPoint point() const;
  double return_time() const;
  GoldenNumber exact_return_time() const;
  bool at_start() const { return state_ == start_; }

  void advance();

 private:
  void update_zone();

  long radius_;
  IntegerVector state_;
  IntegerVector start_;
  Zone zone_ = Zone::Infinity;
};

/// Return times along the orbit of x_R until the slopes reach 1; these are
/// the scaled gaps of the slope set with re <= R. Exact mode runs in
/// GoldenNumber arithmetic and stops when the cumulative time equals R^2;
/// float mode uses RadiusOrbit and stops once the cumulative time reaches
/// R^2 - 1/2 (every gap is at least 1).
GapSample gaps_via_bcz(long radius, Mode mode);

template <class Point>
struct PointTraits;

template <>
struct PointTraits<ExactPoint> {
  using Time = GoldenNumber;
};

template <>
struct PointTraits<FloatPoint> {
  using Time = double;
};

template <class Point>
struct OrbitTrace {
  std::vector<Point> points;
  std::vector<Zone> zones;
  std::vector<typename PointTraits<Point>::Time> return_times;
  /// Exact recurrence to the starting point was observed.
  bool closed = false;
  std::optional<std::size_t> period;
  /// Float steps recomputed exactly by the boundary guard.
  std::size_t guarded_steps = 0;
};

OrbitTrace<ExactPoint> orbit(const ExactPoint& start, std::size_t steps);
OrbitTrace<FloatPoint> orbit(const FloatPoint& start, std::size_t steps);

}  // namespace golden_gaps::bcz
