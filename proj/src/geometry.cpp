#include "rsm/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "rsm/errors.hpp"

namespace rsm {

UnitVector::UnitVector(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0) throw parameter_error("unit vector must have dimension >= 1");
  const double norm = coords_.norm();
  if (std::abs(norm - 1.0) > 1e-12)
    throw parameter_error("unit vector norm is " + std::to_string(norm));
}

UnitVector UnitVector::normalized(Eigen::VectorXd v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw parameter_error("cannot normalize zero or non-finite vector");
  return UnitVector(v / norm);
}

SphereParams::SphereParams(double c0_, double c1_, double c_spread_)
    : c0(c0_), c1(c1_), c_spread(c_spread_) {
  if (!(c0 > 0.0 && c0 < 1.0)) throw parameter_error("sphere params: c0 must lie in (0,1)");
  if (!(c1 > 0.0 && c1 < 1.0)) throw parameter_error("sphere params: c1 must lie in (0,1)");
  if (!(c_spread > 0.0 && c_spread < 0.2))
    throw parameter_error("sphere params: c_spread must lie in (0, 1/5)");
}

SphereParams SphereParams::with_default_spread(double c0, double c1) {
  return SphereParams(c0, c1, std::min(c1 * c1 / 8.0, 1.0 / 6.0));
}

double sparse_residual(const UnitVector& v, int k) {
  const int n = v.dim();
  if (k < 0 || k > n) throw parameter_error("sparse_residual: need 0 <= k <= n");
  std::vector<double> mags(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) mags[static_cast<std::size_t>(i)] = std::abs(v[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double sq = 0.0;
  for (int i = k; i < n; ++i) sq += mags[static_cast<std::size_t>(i)] * mags[static_cast<std::size_t>(i)];
  return std::sqrt(sq);
}

bool is_compressible(const UnitVector& v, const SphereParams& params) {
  const int k = static_cast<int>(std::ceil(params.c0 * v.dim()));
  return sparse_residual(v, std::min(k, v.dim())) <= params.c1;
}

std::vector<int> qualifying_indices(const UnitVector& v, const SphereParams& params) {
  const double n = static_cast<double>(v.dim());
  const double lo = params.c1 / std::sqrt(2.0 * n);
  const double hi = 1.0 / std::sqrt(params.c0 * n);
  std::vector<int> out;
  for (int i = 0; i < v.dim(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag >= lo && mag <= hi) out.push_back(i);
  }
  return out;
}

SpreadAssignment spread_assignment(const UnitVector& v, const SphereParams& params,
                                   double lambda) {
  const int n = v.dim();
  // Block structure is defined for lambda up to c_spread; below c_spread/2
  // at least two blocks exist, above it a single block remains valid.
  if (!(lambda > 0.0) || lambda > params.c_spread)
    throw precondition_error("spread_assignment: need lambda in (0, c_spread]");
  const int block = static_cast<int>(std::ceil(lambda * n));
  if (static_cast<int>(std::floor(lambda * n)) < 1)
    throw precondition_error("spread_assignment: need floor(lambda n) >= 1");

  const std::vector<int> qualifying = qualifying_indices(v, params);
  const int spread_size = static_cast<int>(std::ceil(params.c_spread * n));
  if (static_cast<int>(qualifying.size()) < spread_size)
    throw structural_error("spread_assignment: only " + std::to_string(qualifying.size()) +
                           " qualifying indices, need " + std::to_string(spread_size) +
                           " (vector compressible or c_spread too large)");

  SpreadAssignment sa;
  sa.lambda = lambda;
  sa.spread.assign(qualifying.begin(), qualifying.begin() + spread_size);

  const int m = spread_size / block; // >= 1 since block <= spread_size
  const int covered_size = m * block;
  sa.covered.assign(sa.spread.begin(), sa.spread.begin() + covered_size);
  sa.blocks.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    sa.blocks.emplace_back(sa.covered.begin() + j * block, sa.covered.begin() + (j + 1) * block);
  return sa;
}

UnitVector restrict_normalized(const UnitVector& v, const std::vector<int>& indices) {
  if (indices.empty()) throw parameter_error("restrict_normalized: empty index set");
  Eigen::VectorXd sub(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) sub[static_cast<Eigen::Index>(i)] = v[indices[i]];
  return UnitVector::normalized(std::move(sub));
}

} // namespace rsm
