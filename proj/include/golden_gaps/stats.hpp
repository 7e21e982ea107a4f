#pragma once

// Empirical statistics of gap samples: histograms, empirical cdfs, KS
// distances, uniformity and h-spacing estimates.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "golden_gaps/bcz.hpp"
#include "golden_gaps/gap_sample.hpp"
#include "golden_gaps/lattice.hpp"

namespace golden_gaps::stats {

class Histogram {
 public:
  explicit Histogram(std::vector<double> edges);
  static Histogram uniform(double lo, double hi, std::size_t bins);

  /// Bins are [e_i, e_{i+1}), the last one closed.
  void add(double x);
  void add(std::span<const double> xs);
  /// Throws std::invalid_argument when the edges differ.
  void merge(const Histogram& other);

  const std::vector<double>& edges() const { return edges_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::size_t bins() const { return counts_.size(); }
  std::uint64_t total() const { return total_; }
  std::uint64_t underflow() const { return underflow_; }
  std::uint64_t overflow() const { return overflow_; }
  /// count / (total * width): comparable with a pdf.
  double density(std::size_t bin) const;
  double midpoint(std::size_t bin) const { return 0.5 * (edges_[bin] + edges_[bin + 1]); }

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  std::vector<double> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
};

/// Right-continuous step function of a sample.
class EmpiricalCdf {
 public:
  /// Throws std::invalid_argument on an empty sample.
  explicit EmpiricalCdf(std::vector<double> values);
  explicit EmpiricalCdf(const GapSample& sample) : EmpiricalCdf(sample.gaps) {}

  double operator()(double x) const;
  /// Value just below x.
  double left_limit(double x) const;
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& sorted_values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// sup |F_n - F| for a continuous nondecreasing F, attained at the jumps.
double ks_distance(const EmpiricalCdf& empirical, const std::function<double(double)>& reference);
/// Two-sample sup distance.
double ks_distance(const EmpiricalCdf& lhs, const EmpiricalCdf& rhs);

/// KS distance of points in [0, 1] from the uniform law.
double uniformity_test(std::vector<double> points);
double uniformity_test(const lattice::SlopeSet& slopes);

/// Slopes of the sector recovered from gaps in slope order: s_0 = 0 and
/// s_{i+1} = s_i + g_i / R^2. Used where enumeration is too large.
std::vector<double> slopes_from_gaps(const GapSample& sample);

/// Reproducible uniform doubles: std::mt19937_64 seeded with (seed, stream).
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

/// Uniform (area) sample on Omega: a = sqrt(u), b uniform in (1 - a phi, 1].
bcz::FloatPoint sample_omega(Rng& rng);

/// Number of independent RNG streams the Monte Carlo budget is split over;
/// fixed so results do not depend on the thread count.
inline constexpr std::size_t kStreams = 64;

/// Worker threads: hardware concurrency capped by GOLDEN_GAPS_THREADS.
std::size_t thread_count();

struct HSpacingQuery {
  std::vector<double> thresholds;  // t_1 .. t_h
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 1;
};

struct Estimate {
  double value = 0;
  double standard_error = 0;
  std::size_t samples = 0;
  std::size_t hits = 0;
};

/// Binomial estimate hits / n with its standard error.
Estimate binomial_estimate(std::size_t hits, std::size_t n);

/// m{x : R(T^j x) >= t_{j+1}, 0 <= j < h} by Monte Carlo.
Estimate h_spacing_mc(const HSpacingQuery& query);

/// Fraction of windows of h consecutive gaps with g_{i+j} >= t_{j+1}.
Estimate h_spacing_empirical(std::span<const double> gaps, std::span<const double> thresholds);

struct ChiSquareResult {
  double statistic = 0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 0;
  std::size_t pooled_cells = 0;
  std::size_t samples = 0;
};

/// Area of the grid cell [a0, a1] x [b0, b1] inside Omega.
double omega_cell_area(double a0, double a1, double b0, double b1);

/// Chi-square goodness of fit of points against the normalized area measure
/// of Omega on a grid over [0, 1] x [1 - phi, 1]. Cells with expected count
/// below 5 are pooled into one.
ChiSquareResult omega_uniformity(std::span<const bcz::FloatPoint> points, std::size_t grid = 20);

/// Pushes `samples` uniform points through T and tests the images.
ChiSquareResult measure_preservation(std::size_t samples, std::uint64_t seed, std::size_t grid = 20);

}  // namespace golden_gaps::stats
