#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include <Eigen/Dense>

#include "rsm/anticonc.hpp"
#include "rsm/ensembles.hpp"
#include "rsm/errors.hpp"
#include "rsm/experiments.hpp"
#include "rsm/io.hpp"
#include "rsm/mrlcd.hpp"
#include "rsm/rng.hpp"
#include "rsm/threshold.hpp"
#include "experiments_detail.hpp"

namespace rsm {

namespace {

using detail::csv_row;

Eigen::VectorXd sample_vector(int n, const EntryLaw& law, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = law.sample(rng);
  return x;
}

// Relative-residual guard for linear solves; failing trials are skipped and
// counted, never silently dropped.
constexpr double kSolveResidualTol = 1e-8;

bool solve_checked(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, const Eigen::MatrixXd& a,
                   const Eigen::VectorXd& rhs, Eigen::VectorXd& out) {
  out = lu.solve(rhs);
  if (!out.allFinite()) return false;
  return (a * out - rhs).norm() <= kSolveResidualTol * std::max(1.0, rhs.norm());
}

} // namespace

ExperimentReport run_sval_tail(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.n > 512) throw capacity_error("sval tail: n capped at 512");
  if (cfg.trials > 1000000) throw capacity_error("sval tail: trials capped at 1e6");
  if (cfg.eps_grid.empty()) throw parameter_error("sval tail: eps_grid required");
  detail::Stopwatch watch;

  struct Row {
    std::uint64_t seed;
    double s_min, s_max;
  };
  std::vector<Row> rows(static_cast<std::size_t>(cfg.trials));
  detail::parallel_trials(cfg.trials, cfg.threads, [&](std::int64_t t) {
    const std::uint64_t seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
    const auto sample = sample_symmetric(cfg.n, cfg.law, seed);
    const auto sv = singular_extremes(sample);
    rows[static_cast<std::size_t>(t)] = {seed, sv.s_min, sv.s_max};
  });

  const double sqrt_n = std::sqrt(static_cast<double>(cfg.n));
  const double radius = hoeffding_radius_99(cfg.trials);
  std::vector<double> probs;
  probs.reserve(cfg.eps_grid.size());
  for (double eps : cfg.eps_grid) {
    std::int64_t hits = 0;
    for (const Row& r : rows) {
      // The numeric-zero guard makes the eps = 0 singularity event robust to
      // eigensolver roundoff; it is negligible against any eps > 0 here.
      const double cutoff = eps / sqrt_n + 1e-12 * std::max(1.0, r.s_max);
      if (r.s_min <= cutoff) ++hits;
    }
    probs.push_back(static_cast<double>(hits) / static_cast<double>(cfg.trials));
  }

  bool monotone = std::is_sorted(probs.begin(), probs.end());
  const double floor_prob = cfg.eps_grid.front() == 0.0 ? probs.front() : 0.0;
  double fitted_C = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double eps = cfg.eps_grid[i];
    if (eps > 0.0)
      fitted_C = std::max(fitted_C, std::max(0.0, probs[i] - floor_prob) / std::pow(eps, 0.125));
  }

  nlohmann::json trials_json = nlohmann::json::array();
  for (std::size_t t = 0; t < rows.size(); ++t)
    trials_json.push_back({{"trial", t}, {"seed", rows[t].seed},
                           {"s_min", rows[t].s_min}, {"s_max", rows[t].s_max}});

  std::string csv = "eps,probability,hoeffding_radius\n";
  nlohmann::json prob_json = nlohmann::json::array();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    csv_row(csv, cfg.eps_grid[i], probs[i], radius);
    prob_json.push_back({{"eps", cfg.eps_grid[i]}, {"probability", probs[i]}});
  }

  ExperimentReport report;
  report.doc = detail::report_envelope(cfg, "sval-tail");
  report.doc["trials"] = std::move(trials_json);
  report.doc["summary"] = {{"probabilities", prob_json},
                           {"hoeffding_radius", radius},
                           {"floor", floor_prob},
                           {"fitted_C", fitted_C},
                           {"monotone", monotone}};
  report.doc["pass"] = monotone;
  report.doc["wall_clock_ms"] = watch.elapsed_ms();
  report.csv = std::move(csv);
  report.exit_code = monotone ? 0 : 1;
  return report;
}

ExperimentReport run_structure_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.n > 256) throw capacity_error("structure scan: n capped at 256");
  detail::Stopwatch watch;

  LcdParams params = cfg.lcd;
  params.L = cfg.L;

  const UnitVector ones = UnitVector::normalized(Eigen::VectorXd::Ones(cfg.n));
  const MrlcdReport ones_report = mrlcd(ones, params, cfg.sphere, cfg.lambda);
  const EntryLaw matrix_law = EntryLaw::perturbed_rademacher(cfg.sigma);
  const EntryLaw vector_law = EntryLaw::rademacher();

  struct Row {
    bool solved = false;
    bool structural_ok = false;
    double x0_median_lo = 0.0;
    double random_median_lo = 0.0;
    double x0_threshold = -1.0;
    double random_threshold = -1.0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(cfg.trials));

  detail::parallel_trials(cfg.trials, cfg.threads, [&](std::int64_t t) {
    Row row;
    const std::uint64_t trial_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
    const auto a = sample_symmetric(cfg.n, matrix_law, derive_seed(trial_seed, 0));
    const Eigen::VectorXd x = sample_vector(cfg.n, vector_law, derive_seed(trial_seed, 1));

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a.entries);
    Eigen::VectorXd solution;
    row.solved = solve_checked(lu, a.entries, x, solution);
    if (row.solved) {
      Rng baseline_rng(derive_seed(trial_seed, 2));
      Eigen::VectorXd random_dir(cfg.n);
      for (int i = 0; i < cfg.n; ++i) random_dir[i] = baseline_rng.normal();
      try {
        const UnitVector x0 = UnitVector::normalized(solution);
        const UnitVector random_unit = UnitVector::normalized(random_dir);
        const MrlcdReport x0_report = mrlcd(x0, params, cfg.sphere, cfg.lambda);
        const MrlcdReport rand_report = mrlcd(random_unit, params, cfg.sphere, cfg.lambda);
        row.x0_median_lo = x0_report.median_value.lo;
        row.random_median_lo = rand_report.median_value.lo;
        if (cfg.with_threshold) {
          row.x0_threshold =
              median_threshold(x0, cfg.p, cfg.L, cfg.sphere, cfg.lambda).median.value;
          row.random_threshold =
              median_threshold(random_unit, cfg.p, cfg.L, cfg.sphere, cfg.lambda).median.value;
        }
        row.structural_ok = true;
      } catch (const structural_error&) {
        row.structural_ok = false;
      }
    }
    rows[static_cast<std::size_t>(t)] = row;
  });

  std::int64_t skipped_solve = 0, skipped_structural = 0, valid = 0;
  std::int64_t x0_beats_ones = 0, x0_beats_random = 0;
  nlohmann::json trials_json = nlohmann::json::array();
  std::string csv = "trial,solved,structural_ok,x0_median_lo,random_median_lo\n";
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const Row& row = rows[t];
    if (!row.solved) ++skipped_solve;
    else if (!row.structural_ok) ++skipped_structural;
    else {
      ++valid;
      if (row.x0_median_lo > ones_report.median_value.lo) ++x0_beats_ones;
      if (row.x0_median_lo > row.random_median_lo) ++x0_beats_random;
    }
    nlohmann::json rec{{"trial", t},
                       {"solved", row.solved},
                       {"structural_ok", row.structural_ok},
                       {"x0_median_lo", row.x0_median_lo},
                       {"random_median_lo", row.random_median_lo}};
    if (cfg.with_threshold) {
      rec["x0_median_threshold"] = row.x0_threshold;
      rec["random_median_threshold"] = row.random_threshold;
    }
    trials_json.push_back(std::move(rec));
    csv_row(csv, static_cast<std::int64_t>(t), static_cast<std::int64_t>(row.solved ? 1 : 0),
            static_cast<std::int64_t>(row.structural_ok ? 1 : 0), row.x0_median_lo,
            row.random_median_lo);
  }

  const double frac_ones =
      valid > 0 ? static_cast<double>(x0_beats_ones) / static_cast<double>(valid) : 0.0;
  const double frac_random =
      valid > 0 ? static_cast<double>(x0_beats_random) / static_cast<double>(valid) : 0.0;
  const bool pass = cfg.assert_fraction <= 0.0 || frac_ones >= cfg.assert_fraction;

  ExperimentReport report;
  report.doc = detail::report_envelope(cfg, "structure-scan");
  report.doc["trials"] = std::move(trials_json);
  report.doc["summary"] = {{"ones_median", ones_report.median_value},
                           {"valid_trials", valid},
                           {"skipped_solve", skipped_solve},
                           {"skipped_structural", skipped_structural},
                           {"fraction_exceeding_ones", frac_ones},
                           {"fraction_exceeding_random", frac_random}};
  report.doc["pass"] = pass;
  report.doc["wall_clock_ms"] = watch.elapsed_ms();
  report.csv = std::move(csv);
  report.exit_code = pass ? 0 : 1;
  return report;
}

ExperimentReport run_denominator_check(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.n > 256) throw capacity_error("denominator check: n capped at 256");
  if (cfg.eps_grid.empty()) throw parameter_error("denominator check: eps_grid required");
  detail::Stopwatch watch;

  struct Row {
    bool norm_event = false; // ||A|| <= K sqrt(n)
    bool solved = false;
    double inv_x_norm = 0.0;
    double hs_norm = 0.0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(cfg.trials));
  detail::parallel_trials(cfg.trials, cfg.threads, [&](std::int64_t t) {
    Row row;
    const std::uint64_t trial_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
    const auto a = sample_symmetric(cfg.n, cfg.law, derive_seed(trial_seed, 0));
    const Eigen::VectorXd x = sample_vector(cfg.n, cfg.law, derive_seed(trial_seed, 1));

    const auto sv = singular_extremes(a);
    row.norm_event = sv.s_max <= cfg.K * std::sqrt(static_cast<double>(cfg.n));
    if (row.norm_event) {
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(a.entries);
      Eigen::VectorXd solution;
      row.solved = solve_checked(lu, a.entries, x, solution);
      if (row.solved) {
        row.inv_x_norm = solution.norm();
        row.hs_norm = lu.inverse().norm(); // Frobenius = Hilbert-Schmidt
      }
    }
    rows[static_cast<std::size_t>(t)] = row;
  });

  std::int64_t conditioned = 0, skipped_solve = 0, excluded_norm = 0;
  std::vector<double> inv_norms;
  for (const Row& row : rows) {
    if (!row.norm_event) ++excluded_norm;
    else if (!row.solved) ++skipped_solve;
    else {
      ++conditioned;
      inv_norms.push_back(row.inv_x_norm);
    }
  }
  std::sort(inv_norms.begin(), inv_norms.end());

  nlohmann::json trials_json = nlohmann::json::array();
  for (std::size_t t = 0; t < rows.size(); ++t)
    trials_json.push_back({{"trial", t},
                           {"norm_event", rows[t].norm_event},
                           {"solved", rows[t].solved},
                           {"inv_x_norm", rows[t].inv_x_norm},
                           {"hs_norm", rows[t].hs_norm}});

  const double radius = hoeffding_radius_99(std::max<std::int64_t>(conditioned, 1));
  const double var = cfg.law.law_variance();
  bool pass = conditioned > 0;
  nlohmann::json eps_json = nlohmann::json::array();
  std::string csv = "eps,rate_upper,threshold_upper,rate_lower,fitted_C_lower\n";
  double fitted_C_lower = 0.0;
  for (double eps : cfg.eps_grid) {
    if (!(eps > 0.0)) throw parameter_error("denominator check: eps values must be > 0");
    std::int64_t upper_hits = 0, lower_hits = 0;
    for (const Row& row : rows) {
      if (!row.norm_event || !row.solved) continue;
      if (row.inv_x_norm <= row.hs_norm / std::sqrt(eps)) ++upper_hits;
      if (row.inv_x_norm >= eps * row.hs_norm) ++lower_hits;
    }
    const double rate_upper =
        conditioned > 0 ? static_cast<double>(upper_hits) / static_cast<double>(conditioned) : 0.0;
    const double rate_lower =
        conditioned > 0 ? static_cast<double>(lower_hits) / static_cast<double>(conditioned) : 0.0;
    // Markov: E ||A^{-1}X||^2 = var(law) ||A^{-1}||_HS^2, so the upper event
    // fails with probability at most eps * var; no unknown constant.
    const double threshold_upper = std::max(0.0, 1.0 - eps * var - radius);
    if (rate_upper < threshold_upper) pass = false;
    fitted_C_lower = std::max(fitted_C_lower, (1.0 - rate_lower) / eps);
    eps_json.push_back({{"eps", eps},
                        {"rate_upper", rate_upper},
                        {"threshold_upper", threshold_upper},
                        {"rate_lower", rate_lower}});
    csv_row(csv, eps, rate_upper, threshold_upper, rate_lower, fitted_C_lower);
  }

  ExperimentReport report;
  report.doc = detail::report_envelope(cfg, "denominator");
  report.doc["trials"] = std::move(trials_json);
  report.doc["summary"] = {{"conditioned_trials", conditioned},
                           {"excluded_norm_event", excluded_norm},
                           {"skipped_solve", skipped_solve},
                           {"hoeffding_radius", radius},
                           {"per_eps", eps_json},
                           {"law_variance", var},
                           {"min_inv_x_norm", inv_norms.empty() ? 0.0 : inv_norms.front()},
                           {"fitted_C_lower", fitted_C_lower}};
  report.doc["pass"] = pass;
  report.doc["wall_clock_ms"] = watch.elapsed_ms();
  report.csv = std::move(csv);
  report.exit_code = pass ? 0 : 1;
  return report;
}

ExperimentReport run_quadratic_smallball(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.n > 256) throw capacity_error("quadratic small-ball: n capped at 256");
  if (cfg.eps_grid.empty()) throw parameter_error("quadratic small-ball: eps_grid required");
  detail::Stopwatch watch;

  struct Row {
    bool norm_event = false;
    bool solved = false;
    double statistic = 0.0;
    double identity_gap = 0.0; // |direct - formula| on the bordered matrix
  };
  std::vector<Row> rows(static_cast<std::size_t>(cfg.trials));
  detail::parallel_trials(cfg.trials, cfg.threads, [&](std::int64_t t) {
    Row row;
    const std::uint64_t trial_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
    // The bordered (n+1) sample realizes A as its trailing minor, X as the
    // first column below the corner, and the corner as the identity center.
    const auto bordered =
        sample_symmetric(cfg.n + 1, EntryLaw::perturbed_rademacher(cfg.sigma),
                         derive_seed(trial_seed, 0));
    const Eigen::MatrixXd a = bordered.entries.block(1, 1, cfg.n, cfg.n);
    const Eigen::VectorXd x = bordered.entries.col(0).tail(cfg.n);

    const auto sv = singular_extremes(a);
    row.norm_event = sv.s_max <= cfg.K * std::sqrt(static_cast<double>(cfg.n));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    Eigen::VectorXd solution;
    row.solved = solve_checked(lu, a, x, solution);
    if (row.solved) {
      const double denom = std::sqrt(1.0 + solution.squaredNorm());
      const double quad = solution.dot(x);
      const double center = cfg.realized_u ? quad : cfg.u;
      row.statistic = std::abs(quad - center) / denom;

      const auto pair = quadratic_distance_identity(bordered.entries, 0);
      row.identity_gap = std::abs(pair.direct - pair.formula);
    }
    rows[static_cast<std::size_t>(t)] = row;
  });

  std::int64_t conditioned = 0, skipped = 0, identity_violations = 0;
  for (const Row& row : rows) {
    if (!row.solved) {
      ++skipped;
      continue;
    }
    if (row.identity_gap > 1e-8) ++identity_violations;
    if (row.norm_event) ++conditioned;
  }

  nlohmann::json trials_json = nlohmann::json::array();
  for (std::size_t t = 0; t < rows.size(); ++t)
    trials_json.push_back({{"trial", t},
                           {"norm_event", rows[t].norm_event},
                           {"solved", rows[t].solved},
                           {"statistic", rows[t].statistic},
                           {"identity_gap", rows[t].identity_gap}});

  const double radius = hoeffding_radius_99(std::max<std::int64_t>(conditioned, 1));
  nlohmann::json eps_json = nlohmann::json::array();
  std::string csv = "eps,probability\n";
  std::vector<double> probs;
  for (double eps : cfg.eps_grid) {
    std::int64_t hits = 0;
    for (const Row& row : rows)
      if (row.solved && row.norm_event && row.statistic <= eps) ++hits;
    const double prob =
        conditioned > 0 ? static_cast<double>(hits) / static_cast<double>(conditioned) : 0.0;
    probs.push_back(prob);
    eps_json.push_back({{"eps", eps}, {"probability", prob}});
    csv_row(csv, eps, prob);
  }
  const bool monotone = std::is_sorted(probs.begin(), probs.end());
  const double floor_prob = cfg.eps_grid.front() == 0.0 ? probs.front() : 0.0;
  double fitted_C = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (cfg.eps_grid[i] > 0.0)
      fitted_C = std::max(fitted_C,
                          std::max(0.0, probs[i] - floor_prob) / std::pow(cfg.eps_grid[i], 0.125));

  const bool pass = monotone && identity_violations == 0;
  ExperimentReport report;
  report.doc = detail::report_envelope(cfg, "quadratic");
  report.doc["trials"] = std::move(trials_json);
  report.doc["summary"] = {{"conditioned_trials", conditioned},
                           {"skipped_solve", skipped},
                           {"identity_violations", identity_violations},
                           {"hoeffding_radius", radius},
                           {"per_eps", eps_json},
                           {"fitted_C", fitted_C},
                           {"monotone", monotone}};
  report.doc["pass"] = pass;
  report.doc["wall_clock_ms"] = watch.elapsed_ms();
  report.csv = std::move(csv);
  report.exit_code = pass ? 0 : 1;
  return report;
}

} // namespace rsm
