#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rsm/entry_law.hpp"
#include "rsm/errors.hpp"

namespace rsm {

struct RoundingChecks {
  double r1 = 0.0;             // max_i |y_i - y'_i| on the accepted attempt
  double r2_worst_ratio = 0.0; // max over the t-grid of LHS(t_{k+1}) / (mu t_k)
  double r3_ratio = 0.0;       // concentration ratio at width sqrt(n), rounded/original
};

struct RoundingResult {
  std::vector<std::int64_t> y_prime;
  int attempts = 0;
  bool certified = false;
  RoundingChecks checks;                // of the accepted (or best) attempt
  double C_cert = 0.0;
  double c_cert = 0.0;
  double r1_max_over_attempts = 0.0;    // across every attempt, not only the accepted one
};

/// Certification failed within the attempt budget; carries the best attempt
/// (smallest violation) and its check record.
class rounding_failure : public certification_error {
 public:
  rounding_failure(const std::string& message, RoundingResult best)
      : certification_error(message), best_(std::move(best)) {}
  const RoundingResult& best() const { return best_; }

 private:
  RoundingResult best_;
};

/// Randomized rounding of y to an integer vector preserving concentration
/// structure. Each attempt draws y'_i = floor(y_i) + Bernoulli(frac(y_i))
/// independently (integer coordinates stay fixed and consume no randomness),
/// then checks, with the exact atom law of sum_i b_i y'_i:
///   (R1) ||y - y'||_inf <= 1: holds by construction, recorded;
///   (R2) P[|sum b_i y'_i - psi| <= t] <= C_cert * mu * t for all t >= sqrt(n),
///        certified on the geometric grid {sqrt(n), 2 sqrt(n), ...}: both
///        sides are monotone between grid points, so comparing the left
///        side at t_{k+1} against the right side at t_k covers the whole
///        cell, and the grid extends until the right side passes 1;
///   (R3) levy(sum b_i y'_i, sqrt(n)) >= c_cert * levy(sum b_i y_i, sqrt(n)).
/// The first passing attempt is returned. Throws rounding_failure after
/// max_attempts (the guarantees hold for some absolute constants, not
/// necessarily the configured ones).
RoundingResult randomized_round(std::span<const double> y, const EntryLaw& law, double psi,
                                double mu, double C_cert, double c_cert, int max_attempts,
                                std::uint64_t seed);

/// Same procedure for the SignedBernoulli(p) law with (R2) strengthened to a
/// Levy concentration (sup over centers) at every width t >= sqrt(n); valid
/// because that law has a nonnegative characteristic function, which pins
/// the maximal concentration window near the origin.
RoundingResult levy_round(std::span<const double> y, double p, double mu, double C_cert,
                          double c_cert, int max_attempts, std::uint64_t seed);

/// Least mu with P[|sum b_i y_i - psi| <= t] <= mu t for all t >= sqrt(n)
/// (exact: the ratio steps only where atoms enter the window).
double least_mu(std::span<const double> y, const EntryLaw& law, double psi);

/// Valid mu for the Levy-form hypothesis levy(sum b_i y_i, t) <= mu t for
/// all t >= sqrt(n); computed on a fine geometric grid with monotone
/// interpolation, so it overshoots the least constant by at most 5%.
double least_mu_levy(std::span<const double> y, const EntryLaw& law);

} // namespace rsm
