#pragma once

// Saddle-connection vectors of the golden L: the orbit of (1, 0) under the
// Veech group, the (2,5,infinity) Hecke triangle group.

#include <cstddef>
#include <vector>

#include "golden_gaps/gap_sample.hpp"
#include "golden_gaps/linalg.hpp"

namespace golden_gaps::lattice {

/// S = [[0,-1],[1,0]], P = [[1,phi],[0,1]] and their inverses, in that order.
std::vector<GoldenMatrix> veech_generators();

enum class Pruning {
  /// Keep vectors with max(|re|, |im|) <= r_max. Complete: the nearest-integer
  /// reduction path of any orbit vector never leaves that box.
  SupNorm,
  /// Keep vectors with |v| <= 2 phi r_max; strictly larger search region.
  Euclidean,
};

/// Orbit vectors with 0 <= im <= re <= r_max, each once, sorted by slope.
std::vector<IntegerVector> enumerate_integer_vectors(long r_max, Pruning pruning = Pruning::SupNorm);

std::vector<GoldenVector> enumerate_vectors(long r_max, Pruning pruning = Pruning::SupNorm);

struct SlopeSet {
  long radius = 0;
  std::vector<GoldenNumber> slopes;  // strictly increasing, in [0, 1]

  std::size_t count() const { return slopes.size(); }
  std::vector<double> to_doubles() const;
};

SlopeSet slopes(long r_max);

/// Scaled consecutive slope differences; requires r_max >= 2.
GapSample gaps_direct(long r_max);

}  // namespace golden_gaps::lattice
