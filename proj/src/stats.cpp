#include "golden_gaps/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

namespace golden_gaps::stats {

Histogram::Histogram(std::vector<double> edges) : edges_(std::move(edges)) {
  if (edges_.size() < 2) throw std::invalid_argument("Histogram: need at least two edges");
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    if (!(edges_[i] < edges_[i + 1])) throw std::invalid_argument("Histogram: edges must increase");
  }
  counts_.assign(edges_.size() - 1, 0);
}

Histogram Histogram::uniform(double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw std::invalid_argument("Histogram: need bins >= 1 and hi > lo");
  std::vector<double> edges(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) edges[i] = lo + (hi - lo) * double(i) / double(bins);
  edges.back() = hi;
  return Histogram(std::move(edges));
}

void Histogram::add(double x) {
  ++total_;
  if (x < edges_.front()) {
    ++underflow_;
  } else if (x > edges_.back()) {
    ++overflow_;
  } else if (x == edges_.back()) {
    ++counts_.back();
  } else {
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    ++counts_[std::size_t(it - edges_.begin()) - 1];
  }
}

void Histogram::add(std::span<const double> xs) {
  for (double x : xs) add(x);
}

void Histogram::merge(const Histogram& other) {
  if (edges_ != other.edges_) throw std::invalid_argument("Histogram::merge: edges differ");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
  underflow_ += other.underflow_;
  overflow_ += other.overflow_;
}

double Histogram::density(std::size_t bin) const {
  if (total_ == 0) return 0.0;
  return double(counts_.at(bin)) / (double(total_) * (edges_[bin + 1] - edges_[bin]));
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("EmpiricalCdf: empty sample");
  std::sort(values_.begin(), values_.end());
}

double EmpiricalCdf::operator()(double x) const {
  return double(std::upper_bound(values_.begin(), values_.end(), x) - values_.begin()) / double(values_.size());
}

double EmpiricalCdf::left_limit(double x) const {
  return double(std::lower_bound(values_.begin(), values_.end(), x) - values_.begin()) / double(values_.size());
}

double ks_distance(const EmpiricalCdf& empirical, const std::function<double(double)>& reference) {
  const std::vector<double>& v = empirical.sorted_values();
  const double n = double(v.size());
  double d = 0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double f = reference(v[i]);
    d = std::max({d, std::abs(f - double(i) / n), std::abs(double(j) / n - f)});
    i = j;
  }
  return d;
}

double ks_distance(const EmpiricalCdf& lhs, const EmpiricalCdf& rhs) {
  // Both are step functions; the sup is attained at a jump of either.
  double d = 0;
  for (const EmpiricalCdf* cdf : {&lhs, &rhs}) {
    for (double x : cdf->sorted_values()) d = std::max(d, std::abs(lhs(x) - rhs(x)));
  }
  return d;
}

double uniformity_test(std::vector<double> points) {
  if (points.empty()) throw std::invalid_argument("uniformity_test: empty point set");
  const EmpiricalCdf cdf(std::move(points));
  return ks_distance(cdf, [](double x) { return std::clamp(x, 0.0, 1.0); });
}

double uniformity_test(const lattice::SlopeSet& slopes) { return uniformity_test(slopes.to_doubles()); }

std::vector<double> slopes_from_gaps(const GapSample& sample) {
  const double scale = 1.0 / (double(sample.radius) * double(sample.radius));
  std::vector<double> out;
  out.reserve(sample.gaps.size() + 1);
  out.push_back(0.0);
  // Kahan summation keeps the last slope within rounding of 1.
  double sum = 0, carry = 0;
  for (double g : sample.gaps) {
    const double y = g - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    out.push_back(sum * scale);
  }
  return out;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream), std::uint32_t(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

bcz::FloatPoint sample_omega(Rng& rng) {
  const double a = std::sqrt(1.0 - rng.uniform());
  const double b = 1.0 - a * kPhi * rng.uniform();
  return {a, b};
}

std::size_t thread_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GOLDEN_GAPS_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min(n, std::size_t(cap));
    } catch (const std::exception&) {
      // Ignore malformed values.
    }
  }
  return n;
}

namespace {

// Splits `total` draws over kStreams streams and runs `work(rng, count)` for
// each, on up to thread_count() threads. Results are stored per stream so the
// outcome does not depend on scheduling.
template <class Result, class Work>
std::vector<Result> run_streams(std::size_t total, std::uint64_t seed, Work work) {
  std::vector<Result> results(kStreams);
  const auto run_one = [&](std::size_t stream) {
    const std::size_t count = total / kStreams + (stream < total % kStreams ? 1 : 0);
    Rng rng(seed, stream);
    results[stream] = work(rng, count);
  };
  const std::size_t threads = std::min(thread_count(), kStreams);
  if (threads <= 1) {
    for (std::size_t s = 0; s < kStreams; ++s) run_one(s);
    return results;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t s = t; s < kStreams; s += threads) run_one(s);
    });
  }
  for (std::thread& th : pool) th.join();
  return results;
}

}  // namespace

Estimate binomial_estimate(std::size_t hits, std::size_t n) {
  Estimate e;
  e.samples = n;
  e.hits = hits;
  if (n == 0) return e;
  e.value = double(hits) / double(n);
  e.standard_error = std::sqrt(e.value * (1.0 - e.value) / double(n));
  return e;
}

Estimate h_spacing_mc(const HSpacingQuery& query) {
  if (query.thresholds.empty()) throw std::invalid_argument("h_spacing_mc: need h >= 1 thresholds");
  for (double t : query.thresholds) {
    if (!(t > 0)) throw std::invalid_argument("h_spacing_mc: thresholds must be positive");
  }
  if (query.samples < 1000) throw std::invalid_argument("h_spacing_mc: need at least 1000 samples");
  const auto hits = run_streams<std::size_t>(query.samples, query.seed, [&](Rng& rng, std::size_t count) {
    std::size_t h = 0;
    for (std::size_t i = 0; i < count; ++i) {
      bcz::FloatPoint x = sample_omega(rng);
      bool ok = true;
      for (std::size_t j = 0; j < query.thresholds.size() && ok; ++j) {
        if (j > 0) x = bcz::apply_map(x);
        ok = bcz::return_time(x) >= query.thresholds[j];
      }
      h += ok ? 1 : 0;
    }
    return h;
  });
  std::size_t total = 0;
  for (std::size_t h : hits) total += h;
  return binomial_estimate(total, query.samples);
}

Estimate h_spacing_empirical(std::span<const double> gaps, std::span<const double> thresholds) {
  const std::size_t h = thresholds.size();
  if (h == 0) throw std::invalid_argument("h_spacing_empirical: need h >= 1 thresholds");
  if (gaps.size() < h) return binomial_estimate(0, 0);
  const std::size_t windows = gaps.size() - h + 1;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < windows; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < h && ok; ++j) ok = gaps[i + j] >= thresholds[j];
    hits += ok ? 1 : 0;
  }
  return binomial_estimate(hits, windows);
}

double omega_cell_area(double a0, double a1, double b0, double b1) {
  // Clip the rectangle by the half-plane b + a phi >= 1, then the shoelace
  // formula. The bounds a <= 1, b <= 1 are the grid's outer edges.
  struct P {
    double a, b;
  };
  const std::vector<P> rect{{a0, b0}, {a1, b0}, {a1, b1}, {a0, b1}};
  const auto g = [](const P& p) { return p.b + p.a * kPhi - 1.0; };
  std::vector<P> poly;
  for (std::size_t i = 0; i < rect.size(); ++i) {
    const P& cur = rect[i];
    const P& nxt = rect[(i + 1) % rect.size()];
    const double gc = g(cur), gn = g(nxt);
    if (gc >= 0) poly.push_back(cur);
    if ((gc >= 0) != (gn >= 0)) {
      const double t = gc / (gc - gn);
      poly.push_back({cur.a + t * (nxt.a - cur.a), cur.b + t * (nxt.b - cur.b)});
    }
  }
  double twice = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const P& p = poly[i];
    const P& q = poly[(i + 1) % poly.size()];
    twice += p.a * q.b - q.a * p.b;
  }
  return std::abs(twice) / 2.0;
}

ChiSquareResult omega_uniformity(std::span<const bcz::FloatPoint> points, std::size_t grid) {
  if (grid == 0) throw std::invalid_argument("omega_uniformity: grid must be positive");
  const double b_lo = 1.0 - kPhi;
  const double da = 1.0 / double(grid), db = kPhi / double(grid);
  std::vector<std::uint64_t> counts(grid * grid, 0);
  for (const bcz::FloatPoint& p : points) {
    const std::size_t i = std::min(grid - 1, std::size_t(std::max(0.0, p.a / da)));
    const std::size_t j = std::min(grid - 1, std::size_t(std::max(0.0, (p.b - b_lo) / db)));
    ++counts[i * grid + j];
  }
  const double n = double(points.size());
  const double area = kPhi / 2.0;
  ChiSquareResult out;
  out.samples = points.size();
  double pooled_expected = 0, pooled_observed = 0;
  std::size_t bins = 0;
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t j = 0; j < grid; ++j) {
      const double cell = omega_cell_area(i * da, (i + 1) * da, b_lo + j * db, b_lo + (j + 1) * db);
      const double expected = n * cell / area;
      const double observed = double(counts[i * grid + j]);
      if (expected < 5.0) {
        pooled_expected += expected;
        pooled_observed += observed;
        ++out.pooled_cells;
        continue;
      }
      out.statistic += (observed - expected) * (observed - expected) / expected;
      ++bins;
    }
  }
  if (pooled_expected > 0) {
    out.statistic += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) / pooled_expected;
    ++bins;
  } else if (pooled_observed > 0) {
    // Points where the measure puts none: certain rejection.
    out.statistic = std::numeric_limits<double>::infinity();
  }
  out.degrees_of_freedom = bins > 1 ? bins - 1 : 1;
  if (std::isinf(out.statistic)) {
    out.p_value = 0.0;
  } else {
    const boost::math::chi_squared_distribution<double> dist(double(out.degrees_of_freedom));
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  }
  return out;
}

ChiSquareResult measure_preservation(std::size_t samples, std::uint64_t seed, std::size_t grid) {
  const auto images =
      run_streams<std::vector<bcz::FloatPoint>>(samples, seed, [](Rng& rng, std::size_t count) {
        std::vector<bcz::FloatPoint> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(bcz::apply_map(sample_omega(rng)));
        return out;
      });
  std::vector<bcz::FloatPoint> all;
  all.reserve(samples);
  for (const auto& part : images) all.insert(all.end(), part.begin(), part.end());
  return omega_uniformity(all, grid);
}

}  // namespace golden_gaps::stats
