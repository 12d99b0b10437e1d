#include "rsm/atoms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>

#include "rsm/errors.hpp"

namespace rsm {

double AtomDistribution::merge_tolerance(double value) {
  return 1e-9 * std::max(1.0, std::abs(value));
}

AtomDistribution AtomDistribution::from_atoms(std::vector<Atom> atoms) {
  if (atoms.empty()) throw parameter_error("atom distribution must be nonempty");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.value < y.value; });

  AtomDistribution d;
  d.atoms_.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.value)) throw parameter_error("atom value not finite");
    if (!(a.prob > 0.0)) throw parameter_error("atom probability must be positive");
    if (!d.atoms_.empty() && a.value - d.atoms_.back().value <= merge_tolerance(d.atoms_.back().value)) {
      d.atoms_.back().prob += a.prob;
    } else {
      d.atoms_.push_back(a);
    }
  }

  // Kahan summation: plain accumulation over millions of atoms drifts past
  // the 1e-12 validation tolerance.
  double total = 0.0, comp = 0.0;
  for (const Atom& a : d.atoms_) {
    const double y = a.prob - comp;
    const double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw parameter_error("atom probabilities sum to " + std::to_string(total) + ", not 1");
  return d;
}

double AtomDistribution::max_prob() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m = std::max(m, a.prob);
  return m;
}

double AtomDistribution::window_mass(double center, double radius) const {
  const double lo = center - radius;
  const double hi = center + radius;
  auto first = std::lower_bound(atoms_.begin(), atoms_.end(), lo,
                                [](const Atom& a, double v) { return a.value < v; });
  double mass = 0.0;
  for (auto it = first; it != atoms_.end() && it->value <= hi; ++it) mass += it->prob;
  return mass;
}

namespace {

void append_shortest(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

// Enumerates the exact law of sum_i c_i w_i for c_i i.i.d. with the given
// small atom set. Direct product enumeration; callers keep sizes small.
std::vector<Atom> enumerate_half(std::span<const double> weights,
                                 const std::vector<std::pair<double, double>>& law_atoms) {
  std::vector<Atom> sums{{0.0, 1.0}};
  for (double w : weights) {
    std::vector<Atom> next;
    next.reserve(sums.size() * law_atoms.size());
    for (const Atom& s : sums)
      for (const auto& [value, prob] : law_atoms)
        next.push_back({s.value + value * w, s.prob * prob});
    sums = std::move(next);
  }
  return sums;
}

// Sorts and tolerance-merges a raw atom list without normalizing.
std::vector<Atom> sort_merge(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.value < y.value; });
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!merged.empty() &&
        a.value - merged.back().value <= AtomDistribution::merge_tolerance(merged.back().value)) {
      merged.back().prob += a.prob;
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

// Sorted convolution of two sorted atom lists via a k-way merge: stream the
// sums a_i + b_j in ascending order (one heap lane per a_i), merging
// near-duplicates on the fly so memory tracks the number of distinct sums.
std::vector<Atom> convolve_sorted(const std::vector<Atom>& a, const std::vector<Atom>& b) {
  struct Lane {
    double value;
    std::uint32_t i;
    std::uint32_t j;
  };
  auto cmp = [](const Lane& x, const Lane& y) { return x.value > y.value; };
  std::priority_queue<Lane, std::vector<Lane>, decltype(cmp)> heap(cmp);
  for (std::uint32_t i = 0; i < a.size(); ++i)
    heap.push({a[i].value + b[0].value, i, 0});

  std::vector<Atom> out;
  out.reserve(a.size() + b.size());
  while (!heap.empty()) {
    const Lane lane = heap.top();
    heap.pop();
    const double prob = a[lane.i].prob * b[lane.j].prob;
    if (!out.empty() &&
        lane.value - out.back().value <= AtomDistribution::merge_tolerance(out.back().value)) {
      out.back().prob += prob;
    } else {
      out.push_back({lane.value, prob});
    }
    if (lane.j + 1 < b.size())
      heap.push({a[lane.i].value + b[lane.j + 1].value, lane.i, lane.j + 1});
  }
  return out;
}

} // namespace

AtomDistribution weighted_sum_atoms(std::span<const double> weights, const EntryLaw& law) {
  if (!law.has_exact_atoms())
    throw parameter_error("weighted_sum_atoms: law has no finite atom set: " + law.name());
  const std::size_t cap =
      law.kind == LawKind::Rademacher ? kRademacherAtomCap : kSignedBernoulliAtomCap;
  if (weights.size() > cap)
    throw capacity_error("weighted_sum_atoms: dimension " + std::to_string(weights.size()) +
                         " exceeds exact cap " + std::to_string(cap) +
                         " for " + law.name() + "; use the Monte Carlo path");
  if (weights.empty()) return AtomDistribution::from_atoms({{0.0, 1.0}});

  const auto law_atoms = law.atoms();
  const std::size_t half = weights.size() / 2;
  std::vector<Atom> left = sort_merge(enumerate_half(weights.subspan(0, half), law_atoms));
  std::vector<Atom> right = sort_merge(enumerate_half(weights.subspan(half), law_atoms));
  return AtomDistribution::from_atoms(convolve_sorted(left, right));
}

std::string AtomDistribution::to_csv() const {
  std::string out = "value,prob\n";
  for (const Atom& a : atoms_) {
    append_shortest(out, a.value);
    out.push_back(',');
    append_shortest(out, a.prob);
    out.push_back('\n');
  }
  return out;
}

} // namespace rsm
