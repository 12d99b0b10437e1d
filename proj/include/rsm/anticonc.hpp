#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rsm/atoms.hpp"
#include "rsm/entry_law.hpp"

namespace rsm {

enum class EstimateMethod { Exact, MonteCarlo };

struct ConcentrationEstimate {
  double value = 0.0;                               // in [0, 1]
  EstimateMethod method = EstimateMethod::Exact;
  std::int64_t trials = 0;                          // Monte Carlo only
  double hoeffding_radius = 0.0;                    // Monte Carlo only, 99% confidence
};

/// Two-sided 99% Hoeffding radius sqrt(ln(2/0.01) / (2 trials)).
double hoeffding_radius_99(std::int64_t trials);

/// Largest mass any closed window [x - eps, x + eps] captures. The sup is
/// attained with the window's left edge at an atom, so a two-pointer sweep
/// over the sorted atoms is exact.
ConcentrationEstimate levy_exact(const AtomDistribution& d, double eps);

/// Monte Carlo concentration for laws without finite atom sets: the exact
/// sup of the empirical measure over closed windows (candidate centers with
/// the window edge at a sample are sufficient for that sup). Lower-bounds
/// the true concentration up to sampling error; the exact path is
/// authoritative where available.
ConcentrationEstimate levy_mc(std::span<const double> weights, const EntryLaw& law, double eps,
                              std::int64_t trials, std::uint64_t seed);

/// Product small-ball bound for a vector with independent coordinates whose
/// one-dimensional concentrations obey a_k * eps + b_k: returns
/// e^N * prod_k (a_k eps + b_k).
double tensorization_bound(std::span<const std::pair<double, double>> coeffs, double eps);

struct RogozinComponent {
  double r = 0.0;     // per-component width r_i > 0
  double levy = 0.0;  // concentration of component i at width r_i, in (0, 1]
};

/// Miroshnikov-Rogozin bound for a sum of independent variables:
/// C * r * (sum_i r_i^2 (1 - levy_i) / levy_i^2)^{-1/2}; +infinity when all
/// levy_i = 1. Requires r >= max r_i.
double rogozin_bound(std::span<const RogozinComponent> components, double r, double C);

/// Concentration bound for a spread-block sum S_J in terms of the median
/// regularized LCD: C * L * (eps / sqrt(J_size/n) + sqrt(lambda n / J_size) / mrlcd).
/// With clamp, the result is capped at 1.
double mrlcd_anticonc_bound(double eps, std::size_t J_size, std::size_t n, double lambda,
                            double L, double mrlcd, double C, bool clamp = false);

/// Esseen-type upper bound on the concentration of sum_i w_i b_i at the given
/// width: C * integral_{-2}^{2} prod_i |phi(theta w_i / radius)| dtheta, by
/// adaptive quadrature (relative tolerance 1e-8). The conventional constant
/// C defaults to 1.
double esseen_levy_bound(std::span<const double> weights, const EntryLaw& law, double radius,
                         double C = 1.0);

} // namespace rsm
