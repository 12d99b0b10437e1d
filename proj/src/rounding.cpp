#include "rsm/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "rsm/anticonc.hpp"
#include "rsm/atoms.hpp"
#include "rsm/rng.hpp"

namespace rsm {

namespace {

constexpr int kMaxGridDoublings = 128;

std::vector<double> as_doubles(const std::vector<std::int64_t>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]);
  return out;
}

// Worst ratio LHS(t_{k+1}) / (mu t_k) over the doubling grid starting at
// sqrt(n), where lhs(t) is a nondecreasing step function bounded by 1.
// Once lhs saturates (up to float prob-sum slack) and C mu t covers 1, the
// unbounded tail is certified by LHS <= 1 <= C mu t, folded in as the final
// ratio 1/(mu t). A worst ratio <= C_cert is then equivalent to the
// continuum condition for all t >= sqrt(n).
template <typename Lhs>
double grid_worst_ratio(const Lhs& lhs, double mu, double sqrt_n, double C_cert) {
  double worst = 0.0;
  double t = sqrt_n;
  for (int k = 0; k < kMaxGridDoublings; ++k) {
    const double value = lhs(2.0 * t);
    worst = std::max(worst, value / (mu * t));
    if (value >= 1.0 - 1e-12 && C_cert * mu * t >= 1.0)
      return std::max(worst, 1.0 / (mu * t));
    t *= 2.0;
  }
  return std::numeric_limits<double>::infinity();
}

struct AttemptScore {
  double violation = std::numeric_limits<double>::infinity();
};

RoundingResult round_impl(std::span<const double> y, const EntryLaw& law, double mu,
                          double C_cert, double c_cert, int max_attempts, std::uint64_t seed,
                          bool levy_form, double psi) {
  if (y.empty()) throw parameter_error("randomized rounding: empty vector");
  if (!(mu > 0.0)) throw parameter_error("randomized rounding: mu must be > 0");
  if (!(C_cert > 0.0) || !(c_cert > 0.0) || c_cert > 1.0)
    throw parameter_error("randomized rounding: need C_cert > 0 and c_cert in (0,1]");
  if (max_attempts < 1) throw parameter_error("randomized rounding: max_attempts must be >= 1");
  if (!law.supported_in_unit_interval())
    throw precondition_error("randomized rounding: law must be supported in [-1,1]: " +
                             law.name());
  if (!law.has_exact_atoms())
    throw precondition_error("randomized rounding: checks need an exact atom law: " + law.name());

  const double sqrt_n = std::sqrt(static_cast<double>(y.size()));
  const AtomDistribution original = weighted_sum_atoms(y, law);
  const double levy_original = levy_exact(original, sqrt_n).value;

  Rng rng(seed);
  RoundingResult best;
  best.C_cert = C_cert;
  best.c_cert = c_cert;
  AttemptScore best_score;
  double r1_max = 0.0;

  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<std::int64_t> rounded(y.size());
    double r1 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double floor_i = std::floor(y[i]);
      const double frac = y[i] - floor_i;
      double value = floor_i;
      if (frac > 0.0 && rng.bernoulli(frac)) value += 1.0;
      rounded[i] = static_cast<std::int64_t>(value);
      r1 = std::max(r1, std::abs(y[i] - value));
    }
    r1_max = std::max(r1_max, r1);

    const AtomDistribution d = weighted_sum_atoms(as_doubles(rounded), law);
    const double worst_r2 = levy_form
        ? grid_worst_ratio([&](double t) { return levy_exact(d, t).value; }, mu, sqrt_n, C_cert)
        : grid_worst_ratio([&](double t) { return d.window_mass(psi, t); }, mu, sqrt_n, C_cert);
    const double levy_rounded = levy_exact(d, sqrt_n).value;
    const double r3 = levy_rounded / levy_original;

    RoundingResult result;
    result.y_prime = std::move(rounded);
    result.attempts = attempt;
    result.checks = {r1, worst_r2, r3};
    result.C_cert = C_cert;
    result.c_cert = c_cert;
    result.r1_max_over_attempts = r1_max;

    if (worst_r2 <= C_cert && r3 >= c_cert) {
      result.certified = true;
      return result;
    }

    const AttemptScore score{std::max(worst_r2 / C_cert, c_cert / r3)};
    if (score.violation < best_score.violation) {
      best_score = score;
      best = std::move(result);
    }
  }

  best.r1_max_over_attempts = r1_max;
  throw rounding_failure(
      "randomized rounding: no attempt of " + std::to_string(max_attempts) +
          " satisfied the checks (best worst-ratio " + std::to_string(best.checks.r2_worst_ratio) +
          " vs C=" + std::to_string(C_cert) + ", concentration ratio " +
          std::to_string(best.checks.r3_ratio) + " vs c=" + std::to_string(c_cert) + ")",
      best);
}

// Exact sup of ratio(t) = lhs(t)/t over t >= t0 for a step function lhs that
// jumps exactly at the given points: candidates are t0 and the jump points
// above it.
double sup_ratio_at_steps(const std::vector<double>& steps, double t0,
                          const std::function<double(double)>& lhs) {
  double best = lhs(t0) / t0;
  for (double t : steps)
    if (t > t0) best = std::max(best, lhs(t) / t);
  return best;
}

} // namespace

RoundingResult randomized_round(std::span<const double> y, const EntryLaw& law, double psi,
                                double mu, double C_cert, double c_cert, int max_attempts,
                                std::uint64_t seed) {
  return round_impl(y, law, mu, C_cert, c_cert, max_attempts, seed, /*levy_form=*/false, psi);
}

RoundingResult levy_round(std::span<const double> y, double p, double mu, double C_cert,
                          double c_cert, int max_attempts, std::uint64_t seed) {
  return round_impl(y, EntryLaw::signed_bernoulli(p), mu, C_cert, c_cert, max_attempts, seed,
                    /*levy_form=*/true, /*psi=*/0.0);
}

double least_mu(std::span<const double> y, const EntryLaw& law, double psi) {
  const double sqrt_n = std::sqrt(static_cast<double>(y.size()));
  const AtomDistribution d = weighted_sum_atoms(y, law);
  std::vector<double> steps;
  steps.reserve(d.size());
  for (const Atom& a : d.atoms()) steps.push_back(std::abs(a.value - psi));
  return sup_ratio_at_steps(steps, sqrt_n,
                            [&](double t) { return d.window_mass(psi, t); });
}

double least_mu_levy(std::span<const double> y, const EntryLaw& law) {
  const double sqrt_n = std::sqrt(static_cast<double>(y.size()));
  const AtomDistribution d = weighted_sum_atoms(y, law);
  const double diameter = d.max_value() - d.min_value();
  double mu = 0.0;
  double t = sqrt_n;
  // levy(t)/t <= levy(1.05 t)/t on [t, 1.05 t]; past the diameter the
  // concentration is 1 and the ratio decays, so 1/t_final covers the tail.
  while (t <= std::max(diameter, sqrt_n)) {
    mu = std::max(mu, levy_exact(d, 1.05 * t).value / t);
    t *= 1.05;
  }
  return std::max(mu, 1.0 / t);
}

} // namespace rsm
