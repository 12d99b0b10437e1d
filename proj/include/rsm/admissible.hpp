#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rsm {

struct AdmissibilityReport {
  bool admissible = false;
  int violating_index = 0;  // 1-based component index, 0 when none
  std::string clause;       // "symmetry-range", "interval", "two-intervals", "cardinality"
  std::string detail;

  explicit operator bool() const { return admissible; }
};

/// Checks whether sets[0] x ... x sets[n-1] is an (N, n, K, delta)-admissible
/// product of integer sets:
///   - every component is origin-symmetric and contained in (-nN, nN),
///   - components with 1-based index i > delta*n are integer intervals of
///     size >= 2N+1,
///   - components with i <= delta*n are unions of two integer intervals of
///     total size >= 2N avoiding [-N, N],
///   - the product of the cardinalities is at most (K N)^n (log domain).
/// Reports the first violated clause.
AdmissibilityReport is_admissible(const std::vector<std::vector<std::int64_t>>& sets,
                                  std::int64_t N, double K, double delta);

} // namespace rsm
