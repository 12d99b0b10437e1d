#include "rsm/mrlcd.hpp"

#include <algorithm>

#include "rsm/errors.hpp"

namespace rsm {

namespace {

int status_rank(const LcdBracket& b) { return b.found() ? 0 : 1; }

bool value_less(const LcdBracket& a, const LcdBracket& b) {
  if (status_rank(a) != status_rank(b)) return status_rank(a) < status_rank(b);
  return a.lo < b.lo;
}

bool value_tied(const LcdBracket& a, const LcdBracket& b, double tol) {
  return status_rank(a) == status_rank(b) && std::abs(a.lo - b.lo) <= tol;
}

} // namespace

MrlcdReport mrlcd(const UnitVector& v, const LcdParams& params, const SphereParams& sphere,
                  double lambda) {
  params.validate();
  const SpreadAssignment sa = spread_assignment(v, sphere, lambda);

  MrlcdReport report;
  report.per_block.reserve(sa.blocks.size());
  for (std::size_t j = 0; j < sa.blocks.size(); ++j) {
    BlockLcd entry;
    entry.block = static_cast<int>(j);
    entry.indices = sa.blocks[j];
    entry.bracket = lcd(restrict_normalized(v, entry.indices), params);
    report.per_block.push_back(std::move(entry));
  }

  const int m = static_cast<int>(report.per_block.size());
  std::vector<int> order(report.per_block.size());
  for (int j = 0; j < m; ++j) order[static_cast<std::size_t>(j)] = j;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ba = report.per_block[static_cast<std::size_t>(a)].bracket;
    const auto& bb = report.per_block[static_cast<std::size_t>(b)].bracket;
    if (value_less(ba, bb)) return true;
    if (value_less(bb, ba)) return false;
    return a < b; // deterministic tie-break by block index
  });

  const int median_pos = m / 2; // upper median (0-based)
  report.median_block = order[static_cast<std::size_t>(median_pos)];
  const LcdBracket median = report.per_block[static_cast<std::size_t>(report.median_block)].bracket;
  report.median_value = median;

  for (int pos = 0; pos < m; ++pos) {
    const int j = order[static_cast<std::size_t>(pos)];
    const auto& bracket = report.per_block[static_cast<std::size_t>(j)].bracket;
    const bool tied = value_tied(bracket, median, params.bisect_tol);
    if (pos >= median_pos || tied) report.upper_half.push_back(j);
    if (pos <= median_pos || tied) report.lower_half.push_back(j);
  }
  std::sort(report.upper_half.begin(), report.upper_half.end());
  std::sort(report.lower_half.begin(), report.lower_half.end());
  return report;
}

Ternary level_set_member(const LcdBracket& median, double D, double bisect_tol) {
  if (!(D >= 1.0)) throw parameter_error("level_set_member: need D >= 1");
  (void)bisect_tol;
  if (!median.found()) {
    // Value is only known to be >= lo.
    return median.lo > 2.0 * D ? Ternary::No : Ternary::Indeterminate;
  }
  if (median.lo >= D && median.hi <= 2.0 * D) return Ternary::Yes;
  if (median.hi < D || median.lo > 2.0 * D) return Ternary::No;
  return Ternary::Indeterminate;
}

Ternary level_set_member(const UnitVector& v, double D, const LcdParams& params,
                         const SphereParams& sphere, double lambda) {
  return level_set_member(mrlcd(v, params, sphere, lambda).median_value, D, params.bisect_tol);
}

} // namespace rsm
