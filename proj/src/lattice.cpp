#include "golden_gaps/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace golden_gaps::lattice {

std::vector<GoldenMatrix> veech_generators() {
  const GoldenNumber phi = GoldenNumber::phi();
  const GoldenMatrix s{0, -1, 1, 0};
  const GoldenMatrix p{1, phi, 0, 1};
  const GoldenMatrix s_inv{0, 1, -1, 0};
  const GoldenMatrix p_inv{1, -phi, 0, 1};
  return {s, p, s_inv, p_inv};
}

namespace {

bool within_bound(const IntegerVector& v, long r_max, Pruning pruning) {
  const GoldenInteger r(r_max);
  if (pruning == Pruning::SupNorm) {
    return v.re <= r && -v.re <= r && v.im <= r && -v.im <= r;
  }
  // |v|^2 <= (2 phi r)^2 = 4 r^2 (1 + phi)
  const GoldenInteger norm2 = v.re * v.re + v.im * v.im;
  const GoldenInteger bound = GoldenInteger(4 * r_max * r_max) * GoldenInteger(1, 1);
  return norm2 <= bound;
}

// Exact comparison of slopes u.im/u.re < v.im/v.re for re > 0.
bool slope_less(const IntegerVector& u, const IntegerVector& v) { return u.im * v.re < v.im * u.re; }
bool slope_equal(const IntegerVector& u, const IntegerVector& v) { return u.im * v.re == v.im * u.re; }

}  // namespace

std::vector<IntegerVector> enumerate_integer_vectors(long r_max, Pruning pruning) {
  if (r_max < 1) throw std::invalid_argument("enumerate_vectors: r_max must be >= 1");

  std::vector<IntegerMatrix> generators;
  for (const GoldenMatrix& g : veech_generators()) generators.push_back(to_integer(g));

  const IntegerVector start{GoldenInteger(1), GoldenInteger(0)};
  std::unordered_set<IntegerVector> visited{start};
  std::vector<IntegerVector> frontier{start};
  std::vector<IntegerVector> next;
  while (!frontier.empty()) {
    next.clear();
    for (const IntegerVector& v : frontier) {
      for (const IntegerMatrix& g : generators) {
        const IntegerVector w = g * v;
        if (within_bound(w, r_max, pruning) && visited.insert(w).second) next.push_back(w);
      }
    }
    std::swap(frontier, next);
  }

  const GoldenInteger r(r_max);
  std::vector<IntegerVector> sector;
  for (const IntegerVector& v : visited) {
    if (v.re.sign() > 0 && v.im.sign() >= 0 && v.im <= v.re && v.re <= r) sector.push_back(v);
  }
  std::sort(sector.begin(), sector.end(), [](const IntegerVector& u, const IntegerVector& v) {
    if (slope_less(u, v)) return true;
    if (slope_less(v, u)) return false;
    return u.re < v.re;
  });
  // One representative per slope.
  sector.erase(std::unique(sector.begin(), sector.end(), slope_equal), sector.end());
  return sector;
}

std::vector<GoldenVector> enumerate_vectors(long r_max, Pruning pruning) {
  const std::vector<IntegerVector> raw = enumerate_integer_vectors(r_max, pruning);
  std::vector<GoldenVector> out;
  out.reserve(raw.size());
  for (const IntegerVector& v : raw) out.push_back(to_golden(v));
  return out;
}

std::vector<double> SlopeSet::to_doubles() const {
  std::vector<double> out;
  out.reserve(slopes.size());
  for (const GoldenNumber& s : slopes) out.push_back(s.to_double());
  return out;
}

SlopeSet slopes(long r_max) {
  SlopeSet out;
  out.radius = r_max;
  for (const IntegerVector& v : enumerate_integer_vectors(r_max)) {
    out.slopes.push_back(v.im.to_golden() / v.re.to_golden());
  }
  return out;
}

GapSample gaps_direct(long r_max) {
  if (r_max < 2) throw std::invalid_argument("gaps_direct: r_max must be >= 2");
  const SlopeSet s = slopes(r_max);
  GapSample out;
  out.radius = r_max;
  out.method = GapMethod::Direct;
  out.slope_count = s.count();
  std::vector<GoldenNumber> exact;
  exact.reserve(s.count());
  out.gaps.reserve(s.count());
  const GoldenNumber scale(r_max * r_max);
  for (std::size_t i = 0; i + 1 < s.count(); ++i) {
    exact.push_back(scale * (s.slopes[i + 1] - s.slopes[i]));
    out.gaps.push_back(exact.back().to_double());
  }
  out.exact_gaps = std::move(exact);
  return out;
}

}  // namespace golden_gaps::lattice
