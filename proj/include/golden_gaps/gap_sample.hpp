#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "golden_gaps/golden.hpp"

namespace golden_gaps {

enum class GapMethod { Direct, Bcz };

constexpr std::string_view to_string(GapMethod m) { return m == GapMethod::Direct ? "direct" : "bcz"; }

/// Scaled slope gaps R^2 (s_{i+1} - s_i), in increasing slope order.
struct GapSample {
  long radius = 0;
  GapMethod method = GapMethod::Direct;
  std::size_t slope_count = 0;  // N(R); gaps.size() == slope_count - 1
  std::vector<double> gaps;
  /// Present when the producing path was exact.
  std::optional<std::vector<GoldenNumber>> exact_gaps;

  std::size_t size() const { return gaps.size(); }
};

}  // namespace golden_gaps
