#include "rsm/admissible.hpp"

#include <algorithm>
#include <cmath>

#include "rsm/errors.hpp"

namespace rsm {

namespace {

// Number of maximal runs of consecutive integers in a sorted unique list.
int count_intervals(const std::vector<std::int64_t>& sorted) {
  if (sorted.empty()) return 0;
  int runs = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] != sorted[i - 1] + 1) ++runs;
  return runs;
}

} // namespace

AdmissibilityReport is_admissible(const std::vector<std::vector<std::int64_t>>& sets,
                                  std::int64_t N, double K, double delta) {
  if (sets.empty()) throw parameter_error("is_admissible: need at least one component");
  if (N < 1) throw parameter_error("is_admissible: need N >= 1");
  if (!(K >= 1.0)) throw parameter_error("is_admissible: need K >= 1");
  if (!(delta >= 0.0) || delta > 1.0) throw parameter_error("is_admissible: need delta in [0,1]");

  const auto n = static_cast<std::int64_t>(sets.size());
  const std::int64_t range = n * N;

  AdmissibilityReport report;
  double log_product = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) {
    std::vector<std::int64_t> s = sets[static_cast<std::size_t>(i - 1)];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());

    report.violating_index = static_cast<int>(i);
    if (s.empty()) {
      report.clause = "symmetry-range";
      report.detail = "component is empty";
      return report;
    }
    for (std::int64_t x : s) {
      if (x <= -range || x >= range) {
        report.clause = "symmetry-range";
        report.detail = "element " + std::to_string(x) + " outside (-nN, nN)";
        return report;
      }
      if (!std::binary_search(s.begin(), s.end(), -x)) {
        report.clause = "symmetry-range";
        report.detail = "missing mirror of element " + std::to_string(x);
        return report;
      }
    }

    const int intervals = count_intervals(s);
    const auto size = static_cast<std::int64_t>(s.size());
    if (static_cast<double>(i) > delta * static_cast<double>(n)) {
      if (intervals != 1 || size < 2 * N + 1) {
        report.clause = "interval";
        report.detail = "need one integer interval of size >= " + std::to_string(2 * N + 1) +
                        ", got " + std::to_string(intervals) + " interval(s) of total size " +
                        std::to_string(size);
        return report;
      }
    } else {
      const bool hits_center =
          std::any_of(s.begin(), s.end(), [N](std::int64_t x) { return x >= -N && x <= N; });
      if (intervals > 2 || size < 2 * N || hits_center) {
        report.clause = "two-intervals";
        report.detail = "need <= 2 integer intervals of total size >= " + std::to_string(2 * N) +
                        " avoiding [-N, N]";
        return report;
      }
    }
    log_product += std::log(static_cast<double>(size));
  }

  if (log_product > static_cast<double>(n) * std::log(K * static_cast<double>(N)) + 1e-12) {
    report.violating_index = 0;
    report.clause = "cardinality";
    report.detail = "product of sizes exceeds (K N)^n";
    return report;
  }

  report.admissible = true;
  report.violating_index = 0;
  report.clause.clear();
  report.detail.clear();
  return report;
}

} // namespace rsm
