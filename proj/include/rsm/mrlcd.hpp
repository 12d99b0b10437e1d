#pragma once

#include <vector>

#include "rsm/geometry.hpp"
#include "rsm/lcd.hpp"

namespace rsm {

struct BlockLcd {
  int block = 0;            // block index j (0-based)
  std::vector<int> indices; // the coordinate set Spread_lambda^j
  LcdBracket bracket;       // lcd of the normalized restriction
};

// Median regularized LCD report. The median over block values uses the
// upper-median convention: with the blocks sorted ascending, the value at
// 1-based position floor(m/2)+1, so at least ceil(m/2) blocks sit at or
// above it. Blocks that exceeded the search horizon order above every
// found bracket (an unstructured block has a large denominator); value ties
// (same status, |lo difference| <= bisect_tol) break by block index.
struct MrlcdReport {
  LcdBracket median_value;
  std::vector<BlockLcd> per_block;  // in block order
  std::vector<int> upper_half;      // blocks attaining at least the median
  std::vector<int> lower_half;      // blocks attaining at most the median
  int median_block = 0;             // the block realizing the median
};

MrlcdReport mrlcd(const UnitVector& v, const LcdParams& params, const SphereParams& sphere,
                  double lambda);

enum class Ternary { No, Yes, Indeterminate };

/// Whether the median bracket lies inside [D, 2D]. Indeterminate when the
/// bracket straddles a boundary or the median exceeded the horizon without
/// certifying an exit from the window.
Ternary level_set_member(const UnitVector& v, double D, const LcdParams& params,
                         const SphereParams& sphere, double lambda);
Ternary level_set_member(const LcdBracket& median, double D, double bisect_tol);

} // namespace rsm
