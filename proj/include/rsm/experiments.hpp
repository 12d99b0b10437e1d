#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rsm/entry_law.hpp"
#include "rsm/geometry.hpp"
#include "rsm/lcd.hpp"

namespace rsm {

// Shared configuration for all experiment runners. Fields irrelevant to a
// given experiment are ignored by it. `threads` and `out` control execution
// and are not part of the experiment identity (they are excluded from the
// config echo inside reports, so serial and parallel runs of the same
// experiment produce byte-identical reports).
struct ExperimentConfig {
  std::string name;
  int n = 64;
  EntryLaw law = EntryLaw::rademacher();
  std::int64_t trials = 1000;
  std::uint64_t master_seed = 1;
  std::vector<double> eps_grid;

  double L = 1.0;
  double lambda = 0.125;
  double p = 0.1;
  SphereParams sphere{0.5, 0.5, 0.15};
  double K = 3.0;
  LcdParams lcd;

  double u = 0.0;              // quadratic-form center
  bool realized_u = false;     // use the realized value as center (degenerate sanity)
  double sigma = 1e-12;        // PerturbedRademacher scale where invertibility is needed
  int j_size = 0;              // decoupling |J|; 0 sweeps 1..n-1
  std::vector<double> r_grid;  // replacement width grid
  double ratio_cap = 100.0;    // replacement assertion cap
  bool with_threshold = false; // structure scan: also compute median thresholds
  double assert_fraction = 0.0; // structure scan: required win rate (0 = report only)

  int threads = 1;
  std::string out;

  void validate() const;
  nlohmann::json echo() const; // identity fields only (no threads/out)

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
};

struct ExperimentReport {
  nlohmann::json doc;  // full report (schema_version, config, trials, summary)
  std::string csv;     // summary table
  int exit_code = 0;   // 0 pass, 1 assertion violation
};

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double as_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Exact singularity probability of the symmetric sign ensemble by
/// exhaustive enumeration of the 2^{n(n+1)/2} upper triangles with integer
/// determinants. Capacity-capped at n = 5.
Rational singularity_exact(int n);

/// Empirical lower tail of the smallest singular value: per eps, the
/// fraction of trials with s_n <= eps/sqrt(n), with 99% Hoeffding radii and
/// the fitted constant in C eps^{1/8} above the eps=0 floor.
ExperimentReport run_sval_tail(const ExperimentConfig& cfg);

ExperimentReport run_singularity_exact(const ExperimentConfig& cfg);

/// Exact decoupling check: for seeded symmetric integer matrices the squared
/// concentration of the quadratic form is dominated by the small-ball
/// probability of the decoupled bilinear form with the explicit swap offset.
/// All probabilities are ratios of integer counts, so the comparison is
/// exact; any violation fails the run.
ExperimentReport run_decoupling_check(const ExperimentConfig& cfg);

/// Exact Rademacher-vs-SignedBernoulli(p) concentration ratios over a seeded
/// vector family and width grid; requires p <= (2-sqrt(2))/4.
ExperimentReport run_replacement_check(const ExperimentConfig& cfg);

/// Median-LCD structure scan of x0 = A^{-1}X / ||A^{-1}X|| against the
/// all-ones and uniform-random baselines.
ExperimentReport run_structure_scan(const ExperimentConfig& cfg);

/// Frequencies of the three denominator events for ||A^{-1}X|| against
/// ||A^{-1}||_HS, conditioned on ||A|| <= K sqrt(n). The Markov-type bullet
/// (rate of ||A^{-1}X|| <= eps^{-1/2} ||A^{-1}||_HS at least
/// 1 - eps * var(law) - radius) is asserted; the others are reported with
/// fitted constants.
ExperimentReport run_denominator_check(const ExperimentConfig& cfg);

/// Tail of the normalized quadratic form |<A^{-1}X, X> - u| /
/// sqrt(1 + ||A^{-1}X||^2) conditioned on ||A|| <= K sqrt(n), with the
/// row-distance consistency check on the bordered matrix.
ExperimentReport run_quadratic_smallball(const ExperimentConfig& cfg);

} // namespace rsm
