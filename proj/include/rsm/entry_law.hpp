#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rsm/rng.hpp"

namespace rsm {

enum class LawKind {
  Rademacher,
  Gaussian,
  SignedBernoulli,
  Uniform,
  PerturbedRademacher,
};

// Catalog of centered entry laws. Every law has mean 0 and finite variance;
// construction validates parameters (parameter_error on violation).
struct EntryLaw {
  LawKind kind = LawKind::Rademacher;
  double mean = 0.0;      // Gaussian
  double variance = 1.0;  // Gaussian
  double p = 0.5;         // SignedBernoulli: law of Ber(p) - Ber'(p)
  double a = -1.0;        // Uniform support [a, b], a = -b
  double b = 1.0;
  double sigma = 0.0;     // PerturbedRademacher: Rademacher + N(0, sigma^2)

  static EntryLaw rademacher();
  static EntryLaw gaussian(double mean, double variance);
  static EntryLaw signed_bernoulli(double p);
  static EntryLaw uniform(double a, double b);
  static EntryLaw perturbed_rademacher(double sigma);

  double sample(Rng& rng) const;

  /// Variance of the law (Rademacher and Gaussian(0,1) are exactly 1).
  double law_variance() const;

  /// |phi(t)| where phi is the characteristic function.
  double char_fn_abs(double t) const;

  /// True for laws with a finite exact atom set (Rademacher, SignedBernoulli).
  bool has_exact_atoms() const;

  /// Atom set {(value, prob)} for exact laws; throws otherwise.
  std::vector<std::pair<double, double>> atoms() const;

  /// True if all mass lies in [-1, 1] (randomized rounding requires this).
  bool supported_in_unit_interval() const;

  std::string name() const;

  /// Parses "rademacher", "gaussian(1)", "gaussian(0,1)",
  /// "signed-bernoulli(0.1)", "uniform(-1,1)", "perturbed-rademacher(1e-12)".
  static EntryLaw parse(const std::string& text);
};

} // namespace rsm
