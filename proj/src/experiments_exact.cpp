#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>

#include "rsm/anticonc.hpp"
#include "rsm/atoms.hpp"
#include "rsm/errors.hpp"
#include "rsm/experiments.hpp"
#include "rsm/rng.hpp"
#include "experiments_detail.hpp"

namespace rsm {

namespace {

using detail::csv_row;

// Fraction-free Gaussian elimination; exact for the tiny integer matrices
// enumerated here.
std::int64_t int_det(std::array<std::array<std::int64_t, 5>, 5> m, int n) {
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      int pivot = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

} // namespace

Rational singularity_exact(int n) {
  if (n < 1) throw parameter_error("singularity_exact: n must be >= 1");
  if (n > 5)
    throw capacity_error("singularity_exact: n capped at 5 (2^15 symmetric sign matrices)");
  const int bits = n * (n + 1) / 2;
  const std::uint64_t total = 1ULL << bits;

  std::uint64_t singular = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::array<std::array<std::int64_t, 5>, 5> m{};
    int bit = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const std::int64_t v = (mask >> bit) & 1 ? 1 : -1;
        m[i][j] = v;
        m[j][i] = v;
        ++bit;
      }
    }
    if (int_det(m, n) == 0) ++singular;
  }

  const std::uint64_t g = std::gcd(singular, total);
  return {g == 0 ? 0 : singular / g, g == 0 ? 1 : total / g};
}

ExperimentReport run_singularity_exact(const ExperimentConfig& cfg) {
  cfg.validate();
  detail::Stopwatch watch;
  const Rational prob = singularity_exact(cfg.n);

  ExperimentReport report;
  report.doc = detail::report_envelope(cfg, "singularity-exact");
  report.doc["summary"] = {{"n", cfg.n},
                           {"numerator", prob.num},
                           {"denominator", prob.den},
                           {"probability", prob.as_double()}};
  report.doc["pass"] = true;
  report.doc["wall_clock_ms"] = watch.elapsed_ms();
  report.csv = "n,numerator,denominator,probability\n";
  csv_row(report.csv, static_cast<std::int64_t>(cfg.n), static_cast<std::int64_t>(prob.num),
          static_cast<std::int64_t>(prob.den), prob.as_double());
  return report;
}

namespace {

struct DecouplingCase {
  std::int64_t trial = 0;
  int j_size = 0;
  double min_margin = 0.0; // min over eps of RHS - LHS^2
  bool violated = false;
};

// One seeded symmetric integer matrix; entries uniform on {-3..3}.
Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> sample_integer_symmetric(
    int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const auto v = static_cast<std::int64_t>(std::floor(rng.uniform01() * 7.0)) - 3;
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

DecouplingCase decoupling_case(
    const Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>& g, int k,
    const std::vector<double>& eps_grid, std::int64_t trial) {
  const int n = static_cast<int>(g.rows());
  const int c = n - k; // J = {0..k-1}, complement = {k..n-1}

  // Exact law of the quadratic form over the 2^n sign vectors.
  std::vector<std::int64_t> quad_values;
  quad_values.reserve(1ULL << n);
  std::vector<std::int64_t> x(static_cast<std::size_t>(n));
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (mask >> i) & 1 ? 1 : -1;
    std::int64_t q = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q += g(i, j) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
    quad_values.push_back(q);
  }
  std::sort(quad_values.begin(), quad_values.end());

  // Exact law of |2 (bilinear - offset)| over (x_J, x_c, x'_c); the copy
  // coordinates on J integrate out because the statistic ignores them.
  std::vector<std::int64_t> stat2;
  stat2.reserve((1ULL << k) * (1ULL << (2 * c)));
  std::vector<std::int64_t> xc(static_cast<std::size_t>(c)), xcp(static_cast<std::size_t>(c));
  std::vector<std::int64_t> w(static_cast<std::size_t>(k));
  for (std::uint64_t mc = 0; mc < (1ULL << c); ++mc) {
    for (int i = 0; i < c; ++i) xc[static_cast<std::size_t>(i)] = (mc >> i) & 1 ? 1 : -1;
    std::int64_t q_c = 0;
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j) q_c += g(k + i, k + j) * xc[static_cast<std::size_t>(i)] * xc[static_cast<std::size_t>(j)];
    for (std::uint64_t mcp = 0; mcp < (1ULL << c); ++mcp) {
      for (int i = 0; i < c; ++i) xcp[static_cast<std::size_t>(i)] = (mcp >> i) & 1 ? 1 : -1;
      std::int64_t q_cp = 0;
      for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j)
          q_cp += g(k + i, k + j) * xcp[static_cast<std::size_t>(i)] * xcp[static_cast<std::size_t>(j)];
      for (int i = 0; i < k; ++i) {
        std::int64_t acc = 0;
        for (int j = 0; j < c; ++j)
          acc += g(i, k + j) * (xc[static_cast<std::size_t>(j)] - xcp[static_cast<std::size_t>(j)]);
        w[static_cast<std::size_t>(i)] = acc;
      }
      const std::int64_t dq = q_cp - q_c;
      for (std::uint64_t mj = 0; mj < (1ULL << k); ++mj) {
        std::int64_t bilinear = 0;
        for (int i = 0; i < k; ++i)
          bilinear += ((mj >> i) & 1 ? 1 : -1) * w[static_cast<std::size_t>(i)];
        stat2.push_back(std::abs(2 * bilinear - dq));
      }
    }
  }
  std::sort(stat2.begin(), stat2.end());

  const auto lhs_total = static_cast<std::int64_t>(quad_values.size());
  const auto rhs_total = static_cast<std::int64_t>(stat2.size());

  DecouplingCase result{trial, k, std::numeric_limits<double>::infinity(), false};
  for (double eps : eps_grid) {
    // Every value involved is an integer, so a closed window of radius eps
    // admits exactly the differences up to floor(2 eps).
    const auto span = static_cast<std::int64_t>(std::floor(2.0 * eps));
    std::int64_t lhs_count = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < quad_values.size(); ++i) {
      while (j < quad_values.size() && quad_values[j] - quad_values[i] <= span) ++j;
      lhs_count = std::max(lhs_count, static_cast<std::int64_t>(j - i));
    }
    const auto rhs_count = static_cast<std::int64_t>(
        std::upper_bound(stat2.begin(), stat2.end(), span) - stat2.begin());

    // LHS^2 <= RHS as integers: lhs^2 * rhs_total <= rhs * lhs_total^2.
    const std::int64_t lhs_sq_scaled = lhs_count * lhs_count * rhs_total;
    const std::int64_t rhs_scaled = rhs_count * lhs_total * lhs_total;
    if (lhs_sq_scaled > rhs_scaled) result.violated = true;

    const double lhs = static_cast<double>(lhs_count) / static_cast<double>(lhs_total);
    const double rhs = static_cast<double>(rhs_count) / static_cast<double>(rhs_total);
    result.min_margin = std::min(result.min_margin, rhs - lhs * lhs);
  }
  return result;
}

} // namespace

ExperimentReport run_decoupling_check(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.n > 8) throw capacity_error("decoupling check: n capped at 8 (4^n pair enumeration)");
  if (cfg.j_size < 0 || cfg.j_size >= cfg.n)
    throw parameter_error("decoupling check: j_size must lie in [0, n-1]");
  detail::Stopwatch watch;

  std::vector<double> eps_grid = cfg.eps_grid;
  if (eps_grid.empty()) {
    for (int i = 0; i < 20; ++i) eps_grid.push_back(0.1 * cfg.n * i);
  }

  std::vector<int> j_sizes;
  if (cfg.j_size > 0) {
    j_sizes.push_back(cfg.j_size);
  } else {
    for (int k = 1; k < cfg.n; ++k) j_sizes.push_back(k);
  }

  std::vector<std::vector<DecouplingCase>> cases(static_cast<std::size_t>(cfg.trials));
  detail::parallel_trials(cfg.trials, cfg.threads, [&](std::int64_t t) {
    const auto g = sample_integer_symmetric(cfg.n, derive_seed(cfg.master_seed, static_cast<std::uint64_t>(t)));
    auto& slot = cases[static_cast<std::size_t>(t)];
    for (int k : j_sizes) slot.push_back(decoupling_case(g, k, eps_grid, t));
  });

  std::int64_t violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  nlohmann::json trials_json = nlohmann::json::array();
  std::string csv = "trial,j_size,min_margin,violated\n";
  for (const auto& slot : cases) {
    for (const auto& c : slot) {
      violations += c.violated ? 1 : 0;
      min_margin = std::min(min_margin, c.min_margin);
      trials_json.push_back({{"trial", c.trial},
                             {"j_size", c.j_size},
                             {"min_margin", c.min_margin},
                             {"violated", c.violated}});
      csv_row(csv, c.trial, static_cast<std::int64_t>(c.j_size), c.min_margin,
              static_cast<std::int64_t>(c.violated ? 1 : 0));
    }
  }

  ExperimentReport report;
  report.doc = detail::report_envelope(cfg, "decouple");
  report.doc["config"]["eps_grid"] = eps_grid;
  report.doc["trials"] = std::move(trials_json);
  report.doc["summary"] = {{"violations", violations}, {"min_margin", min_margin}};
  report.doc["pass"] = violations == 0;
  report.doc["wall_clock_ms"] = watch.elapsed_ms();
  report.csv = std::move(csv);
  report.exit_code = violations == 0 ? 0 : 1;
  return report;
}

ExperimentReport run_replacement_check(const ExperimentConfig& cfg) {
  cfg.validate();
  const double p_max = (2.0 - std::sqrt(2.0)) / 4.0;
  if (!(cfg.p > 0.0) || cfg.p > p_max)
    throw precondition_error("replacement check: p must lie in (0, (2-sqrt(2))/4]");
  detail::Stopwatch watch;

  std::vector<double> r_grid = cfg.r_grid;
  if (r_grid.empty()) {
    double r = 1e-4;
    for (int i = 0; i < 20; ++i, r *= std::pow(4.0 / 1e-4, 1.0 / 19.0)) r_grid.push_back(r);
  }

  const int dim_max = std::min(12, std::max(2, cfg.n));
  struct Row {
    std::int64_t trial;
    int dim;
    double max_ratio;
  };
  std::vector<Row> rows(static_cast<std::size_t>(cfg.trials));

  detail::parallel_trials(cfg.trials, cfg.threads, [&](std::int64_t t) {
    Rng rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(t)));
    const int dim = 2 + static_cast<int>(t % (dim_max - 1));
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng.normal();
    const UnitVector unit = UnitVector::normalized(v);

    const auto& coords = unit.coords();
    const std::span<const double> w(coords.data(), static_cast<std::size_t>(coords.size()));
    const AtomDistribution rad = weighted_sum_atoms(w, EntryLaw::rademacher());
    const AtomDistribution sb = weighted_sum_atoms(w, EntryLaw::signed_bernoulli(cfg.p));

    double max_ratio = 0.0;
    for (double r : r_grid) {
      const double a = levy_exact(rad, r).value;
      const double b = levy_exact(sb, r).value;
      max_ratio = std::max(max_ratio, a / b); // b > 0: the all-zero outcome has positive mass
    }
    rows[static_cast<std::size_t>(t)] = {t, dim, max_ratio};
  });

  double global_max = 0.0;
  std::int64_t violations = 0;
  nlohmann::json trials_json = nlohmann::json::array();
  std::string csv = "trial,dim,max_ratio\n";
  for (const auto& row : rows) {
    global_max = std::max(global_max, row.max_ratio);
    if (!(row.max_ratio <= cfg.ratio_cap) || !std::isfinite(row.max_ratio)) ++violations;
    trials_json.push_back({{"trial", row.trial}, {"dim", row.dim}, {"max_ratio", row.max_ratio}});
    csv_row(csv, row.trial, static_cast<std::int64_t>(row.dim), row.max_ratio);
  }

  ExperimentReport report;
  report.doc = detail::report_envelope(cfg, "replace");
  report.doc["config"]["r_grid"] = r_grid;
  report.doc["trials"] = std::move(trials_json);
  report.doc["summary"] = {{"max_ratio", global_max},
                           {"ratio_cap", cfg.ratio_cap},
                           {"violations", violations}};
  report.doc["pass"] = violations == 0;
  report.doc["wall_clock_ms"] = watch.elapsed_ms();
  report.csv = std::move(csv);
  report.exit_code = violations == 0 ? 0 : 1;
  return report;
}

} // namespace rsm
