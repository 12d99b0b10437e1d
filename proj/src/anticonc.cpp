#include "rsm/anticonc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rsm/errors.hpp"
#include "rsm/rng.hpp"

namespace rsm {

double hoeffding_radius_99(std::int64_t trials) {
  return std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(trials)));
}

ConcentrationEstimate levy_exact(const AtomDistribution& d, double eps) {
  if (!(eps >= 0.0)) throw parameter_error("levy_exact: eps must be >= 0");
  const auto& atoms = d.atoms();
  double best = 0.0;
  double mass = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) mass -= atoms[i - 1].prob;
    while (j < atoms.size() && atoms[j].value <= atoms[i].value + 2.0 * eps) {
      mass += atoms[j].prob;
      ++j;
    }
    best = std::max(best, mass);
  }
  return {std::min(best, 1.0), EstimateMethod::Exact, 0, 0.0};
}

ConcentrationEstimate levy_mc(std::span<const double> weights, const EntryLaw& law, double eps,
                              std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw parameter_error("levy_mc: trials must be >= 1");
  if (!(eps >= 0.0)) throw parameter_error("levy_mc: eps must be >= 0");

  Rng rng(seed);
  std::vector<double> sums(static_cast<std::size_t>(trials));
  for (auto& s : sums) {
    double acc = 0.0;
    for (double w : weights) acc += w * law.sample(rng);
    s = acc;
  }
  std::sort(sums.begin(), sums.end());

  std::size_t best = 0, j = 0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    while (j < sums.size() && sums[j] <= sums[i] + 2.0 * eps) ++j;
    best = std::max(best, j - i);
  }
  const double value = static_cast<double>(best) / static_cast<double>(trials);
  return {value, EstimateMethod::MonteCarlo, trials, hoeffding_radius_99(trials)};
}

double tensorization_bound(std::span<const std::pair<double, double>> coeffs, double eps) {
  if (!(eps >= 0.0)) throw parameter_error("tensorization_bound: eps must be >= 0");
  const double n = static_cast<double>(coeffs.size());
  double log_prod = 0.0;
  for (const auto& [a, b] : coeffs) {
    if (a < 0.0 || b < 0.0) throw parameter_error("tensorization_bound: coefficients must be >= 0");
    const double factor = a * eps + b;
    if (factor == 0.0) return 0.0;
    log_prod += std::log(factor);
  }
  return std::exp(n + log_prod);
}

double rogozin_bound(std::span<const RogozinComponent> components, double r, double C) {
  if (components.empty()) throw parameter_error("rogozin_bound: need at least one component");
  double max_r = 0.0;
  double denom = 0.0;
  for (const auto& c : components) {
    if (!(c.r > 0.0)) throw parameter_error("rogozin_bound: component widths must be > 0");
    if (!(c.levy > 0.0) || c.levy > 1.0)
      throw parameter_error("rogozin_bound: component concentrations must lie in (0,1]");
    max_r = std::max(max_r, c.r);
    denom += c.r * c.r * (1.0 - c.levy) / (c.levy * c.levy);
  }
  if (r < max_r)
    throw precondition_error("rogozin_bound: r must be >= max component width");
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return C * r / std::sqrt(denom);
}

double mrlcd_anticonc_bound(double eps, std::size_t J_size, std::size_t n, double lambda,
                            double L, double mrlcd, double C, bool clamp) {
  if (J_size == 0 || n == 0 || J_size > n)
    throw parameter_error("mrlcd_anticonc_bound: need 0 < J_size <= n");
  if (!(eps >= 0.0) || !(lambda > 0.0) || !(L > 0.0) || !(mrlcd > 0.0) || !(C > 0.0))
    throw parameter_error("mrlcd_anticonc_bound: parameters must be positive");
  const double frac = static_cast<double>(J_size) / static_cast<double>(n);
  const double value = C * L * (eps / std::sqrt(frac) +
                                std::sqrt(lambda * static_cast<double>(n) /
                                          static_cast<double>(J_size)) / mrlcd);
  return clamp ? std::min(value, 1.0) : value;
}

namespace {

// Adaptive Simpson with Richardson acceptance; throws on depth exhaustion.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  if (depth > 60) throw numeric_error("esseen_levy_bound: quadrature did not converge");
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double rel_tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = rel_tol * std::max(std::abs(whole), 1e-8);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 0);
}

} // namespace

double esseen_levy_bound(std::span<const double> weights, const EntryLaw& law, double radius,
                         double C) {
  if (!(radius > 0.0)) throw parameter_error("esseen_levy_bound: radius must be > 0");
  auto integrand = [&](double theta) {
    double prod = 1.0;
    for (double w : weights) prod *= law.char_fn_abs(theta * w / radius);
    return std::abs(prod);
  };
  // |phi| is even, so integrate the right half and double.
  return C * 2.0 * integrate(integrand, 0.0, 2.0, 1e-8);
}

} // namespace rsm
