#include "rsm/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rsm/anticonc.hpp"
#include "rsm/errors.hpp"

namespace rsm {

namespace {

// Max segment tree over phi(j) = prefix_mass(j) - (L/2) value(j), supporting
// "rightmost index in [l, r] with phi > x" queries in O(log n).
class MaxTree {
 public:
  explicit MaxTree(const std::vector<double>& values) {
    size_ = 1;
    while (size_ < values.size()) size_ *= 2;
    tree_.assign(2 * size_, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < values.size(); ++i) tree_[size_ + i] = values[i];
    for (std::size_t i = size_ - 1; i > 0; --i)
      tree_[i] = std::max(tree_[2 * i], tree_[2 * i + 1]);
  }

  // Rightmost j in [l, r] with value > x, or -1.
  long rightmost_above(std::size_t l, std::size_t r, double x) const {
    return descend(1, 0, size_ - 1, l, r, x);
  }

 private:
  long descend(std::size_t node, std::size_t lo, std::size_t hi, std::size_t l, std::size_t r,
               double x) const {
    if (r < lo || hi < l || tree_[node] <= x) return -1;
    if (lo == hi) return static_cast<long>(lo);
    const std::size_t mid = lo + (hi - lo) / 2;
    const long right = descend(2 * node + 1, mid + 1, hi, l, r, x);
    if (right >= 0) return right;
    return descend(2 * node, lo, mid, l, r, x);
  }

  std::size_t size_;
  std::vector<double> tree_;
};

} // namespace

ThresholdReport threshold_from_atoms(const AtomDistribution& d, double p, double L, double tol) {
  if (!(L >= 1.0)) throw parameter_error("threshold: L must be >= 1");
  if (!(tol > 0.0)) throw parameter_error("threshold: tol must be > 0");

  const auto& atoms = d.atoms();
  const std::size_t m = atoms.size();

  // prefix[j] = mass of atoms[0..j]; phi(j) = prefix[j] - (L/2) value_j and
  // psi(i) = prefix[i-1] - (L/2) value_i turn the run test
  // mass(i..j) > (L/2)(value_j - value_i) into phi(j) > psi(i).
  std::vector<double> prefix(m), phi(m);
  double acc = 0.0, comp = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double y = atoms[j].prob - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
    prefix[j] = acc;
    phi[j] = acc - 0.5 * L * atoms[j].value;
  }
  const MaxTree tree(phi);

  double best = 0.0;
  std::size_t best_i = 0, best_j = 0;
  std::size_t right_limit = 0;
  for (std::size_t i = 0; i < m; ++i) {
    // Runs wider than 2 contribute nothing inside (0,1).
    if (right_limit < i) right_limit = i;
    while (right_limit + 1 < m && atoms[right_limit + 1].value - atoms[i].value < 2.0)
      ++right_limit;
    const double psi = (i > 0 ? prefix[i - 1] : 0.0) - 0.5 * L * atoms[i].value;
    const long j = tree.rightmost_above(i, right_limit, psi);
    if (j < 0) continue;
    const double mass = prefix[static_cast<std::size_t>(j)] - (i > 0 ? prefix[i - 1] : 0.0);
    const double candidate = mass / L;
    if (candidate > best) {
      best = candidate;
      best_i = i;
      best_j = static_cast<std::size_t>(j);
    }
  }

  ThresholdReport report;
  report.p = p;
  report.L = L;
  report.value = std::min(best, 1.0);
  if (report.value > 0.0) {
    const double gap_half = 0.5 * (atoms[best_j].value - atoms[best_i].value);
    ThresholdCertificate cert;
    cert.t_star = std::max(gap_half, report.value - 0.5 * tol);
    cert.levy_at_t_star = levy_exact(d, cert.t_star).value;
    report.certificate = cert;
  }
  return report;
}

ThresholdReport threshold(const UnitVector& x, double p, double L, double tol) {
  const auto& coords = x.coords();
  const AtomDistribution d = weighted_sum_atoms(
      std::span<const double>(coords.data(), static_cast<std::size_t>(coords.size())),
      EntryLaw::signed_bernoulli(p));
  return threshold_from_atoms(d, p, L, tol);
}

MedianThresholdReport median_threshold(const UnitVector& v, double p, double L,
                                       const SphereParams& sphere, double lambda, double tol) {
  const SpreadAssignment sa = spread_assignment(v, sphere, lambda);

  MedianThresholdReport report;
  std::vector<ThresholdReport> reports;
  reports.reserve(sa.blocks.size());
  for (const auto& block : sa.blocks) {
    reports.push_back(threshold(restrict_normalized(v, block), p, L, tol));
    report.per_block.push_back(reports.back().value);
  }

  const int m = static_cast<int>(reports.size());
  std::vector<int> order(reports.size());
  for (int j = 0; j < m; ++j) order[static_cast<std::size_t>(j)] = j;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double va = report.per_block[static_cast<std::size_t>(a)];
    const double vb = report.per_block[static_cast<std::size_t>(b)];
    if (va != vb) return va < vb;
    return a < b;
  });

  const int median_pos = m / 2; // upper median, as for the median LCD
  report.median_block = order[static_cast<std::size_t>(median_pos)];
  report.median = reports[static_cast<std::size_t>(report.median_block)];
  const double median_value = report.median.value;
  for (int pos = 0; pos < m; ++pos) {
    const int j = order[static_cast<std::size_t>(pos)];
    const bool tied = std::abs(report.per_block[static_cast<std::size_t>(j)] - median_value) <= tol;
    if (pos >= median_pos || tied) report.upper_half.push_back(j);
    if (pos <= median_pos || tied) report.lower_half.push_back(j);
  }
  std::sort(report.upper_half.begin(), report.upper_half.end());
  std::sort(report.lower_half.begin(), report.lower_half.end());
  return report;
}

} // namespace rsm
