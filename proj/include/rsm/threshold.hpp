#pragma once

#include <optional>
#include <vector>

#include "rsm/atoms.hpp"
#include "rsm/geometry.hpp"

namespace rsm {

struct ThresholdCertificate {
  double t_star = 0.0;         // in (value - tol, value)
  double levy_at_t_star = 0.0; // concentration there, > L * t_star
};

// Largest width t in (0,1) at which the SignedBernoulli(p)-weighted sum is
// more concentrated than L*t; 0 when no width qualifies.
struct ThresholdReport {
  double value = 0.0; // in [0, 1)
  double p = 0.0;
  double L = 1.0;
  std::optional<ThresholdCertificate> certificate;
};

/// Exact threshold sup{ t in (0,1) : levy(sum_i b'_i x_i, t) > L t } by
/// breakpoint arithmetic over the exact atom law: a window of radius t
/// captures the run of atoms [i..j] iff 2t >= value_j - value_i, so each
/// run contributes the half-open width interval [gap/2, mass/L) and the sup
/// is the largest right endpoint over runs with nonempty contribution. tol
/// only positions the certificate witness; the value itself is exact.
ThresholdReport threshold(const UnitVector& x, double p, double L, double tol = 1e-9);

/// Same, for a precomputed atom law of the weighted sum.
ThresholdReport threshold_from_atoms(const AtomDistribution& d, double p, double L,
                                     double tol = 1e-9);

struct MedianThresholdReport {
  ThresholdReport median;            // report of the block realizing the median
  std::vector<double> per_block;     // threshold value per block, block order
  std::vector<int> upper_half;
  std::vector<int> lower_half;
  int median_block = 0;
};

/// Upper-median of per-block thresholds on normalized spread-block
/// restrictions; median conventions identical to the median regularized LCD
/// (ties by block index, tie tolerance tol).
MedianThresholdReport median_threshold(const UnitVector& v, double p, double L,
                                       const SphereParams& sphere, double lambda,
                                       double tol = 1e-9);

} // namespace rsm
