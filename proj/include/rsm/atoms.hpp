#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rsm/entry_law.hpp"

namespace rsm {

struct Atom {
  double value = 0.0;
  double prob = 0.0;
};

// Exact law of a discrete real random variable as sorted atoms.
//
// Invariants: values strictly increasing, probs > 0, probs sum to 1 within
// 1e-12. Values closer than merge_tolerance(v) = 1e-9 * max(1, |v|) are
// merged (floating-point sums of weights collide inexactly); the merged
// atom keeps the first (smallest) value of its group. The tolerance matters
// because concentration windows are closed, so boundary atoms count fully.
class AtomDistribution {
 public:
  AtomDistribution() = default;

  /// Sorts, merges near-duplicates, validates. Throws parameter_error if
  /// probabilities are invalid.
  static AtomDistribution from_atoms(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double min_value() const { return atoms_.front().value; }
  double max_value() const { return atoms_.back().value; }
  double max_prob() const;

  /// Total mass in the closed window [center - radius, center + radius].
  double window_mass(double center, double radius) const;

  /// "value,prob" CSV lines (shortest round-trip decimals).
  std::string to_csv() const;

  static double merge_tolerance(double value);

 private:
  std::vector<Atom> atoms_;
};

// Exact-enumeration caps for weighted_sum_atoms: 2^26 Rademacher sign
// patterns (as two 2^13 half-enumerations), 3^16 SignedBernoulli outcomes
// (as two 3^8 half-enumerations).
inline constexpr std::size_t kRademacherAtomCap = 26;
inline constexpr std::size_t kSignedBernoulliAtomCap = 16;

/// Exact law of sum_i b_i * weights[i] where the b_i are i.i.d. draws of
/// `law` (Rademacher or SignedBernoulli). Meet-in-the-middle: each half of
/// the weights is enumerated and merged, then the halves are combined by a
/// sorted convolution. Throws capacity_error above the caps.
AtomDistribution weighted_sum_atoms(std::span<const double> weights, const EntryLaw& law);

} // namespace rsm
