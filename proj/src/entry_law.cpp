#include "rsm/entry_law.hpp"

#include <cmath>
#include <sstream>

#include "rsm/errors.hpp"

namespace rsm {

EntryLaw EntryLaw::rademacher() {
  EntryLaw law;
  law.kind = LawKind::Rademacher;
  return law;
}

EntryLaw EntryLaw::gaussian(double mean, double variance) {
  if (mean != 0.0) throw parameter_error("gaussian: catalog laws are centered, mean must be 0");
  if (!(variance > 0.0) || !std::isfinite(variance))
    throw parameter_error("gaussian: variance must be positive and finite");
  EntryLaw law;
  law.kind = LawKind::Gaussian;
  law.mean = mean;
  law.variance = variance;
  return law;
}

EntryLaw EntryLaw::signed_bernoulli(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw parameter_error("signed_bernoulli: p must lie in (0,1)");
  EntryLaw law;
  law.kind = LawKind::SignedBernoulli;
  law.p = p;
  return law;
}

EntryLaw EntryLaw::uniform(double a, double b) {
  if (!(a < b)) throw parameter_error("uniform: need a < b");
  if (a != -b) throw parameter_error("uniform: catalog laws are centered, need a = -b");
  EntryLaw law;
  law.kind = LawKind::Uniform;
  law.a = a;
  law.b = b;
  return law;
}

EntryLaw EntryLaw::perturbed_rademacher(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw parameter_error("perturbed_rademacher: sigma must be >= 0");
  EntryLaw law;
  law.kind = LawKind::PerturbedRademacher;
  law.sigma = sigma;
  return law;
}

double EntryLaw::sample(Rng& rng) const {
  switch (kind) {
    case LawKind::Rademacher: return rng.rademacher();
    case LawKind::Gaussian: return std::sqrt(variance) * rng.normal();
    case LawKind::SignedBernoulli: return rng.signed_bernoulli(p);
    case LawKind::Uniform: return rng.uniform(a, b);
    case LawKind::PerturbedRademacher: {
      // Draw order fixed: sign first, then the perturbation.
      const double s = rng.rademacher();
      return s + sigma * rng.normal();
    }
  }
  throw parameter_error("sample: unknown law kind");
}

double EntryLaw::law_variance() const {
  switch (kind) {
    case LawKind::Rademacher: return 1.0;
    case LawKind::Gaussian: return variance;
    case LawKind::SignedBernoulli: return 2.0 * p * (1.0 - p);
    case LawKind::Uniform: return (b - a) * (b - a) / 12.0;
    case LawKind::PerturbedRademacher: return 1.0 + sigma * sigma;
  }
  throw parameter_error("law_variance: unknown law kind");
}

double EntryLaw::char_fn_abs(double t) const {
  switch (kind) {
    case LawKind::Rademacher: return std::abs(std::cos(t));
    case LawKind::Gaussian: return std::exp(-0.5 * variance * t * t);
    case LawKind::SignedBernoulli: {
      // phi(t) = 1 - 2q(1 - cos t) with q = p(1-p); nonnegative since q <= 1/4.
      const double q = p * (1.0 - p);
      return 1.0 - 2.0 * q * (1.0 - std::cos(t));
    }
    case LawKind::Uniform: {
      const double h = 0.5 * (b - a) * t;
      if (h == 0.0) return 1.0;
      return std::abs(std::sin(h) / h);
    }
    case LawKind::PerturbedRademacher:
      return std::abs(std::cos(t)) * std::exp(-0.5 * sigma * sigma * t * t);
  }
  throw parameter_error("char_fn_abs: unknown law kind");
}

bool EntryLaw::has_exact_atoms() const {
  return kind == LawKind::Rademacher || kind == LawKind::SignedBernoulli;
}

std::vector<std::pair<double, double>> EntryLaw::atoms() const {
  switch (kind) {
    case LawKind::Rademacher: return {{-1.0, 0.5}, {1.0, 0.5}};
    case LawKind::SignedBernoulli: {
      const double q = p * (1.0 - p);
      return {{-1.0, q}, {0.0, 1.0 - 2.0 * q}, {1.0, q}};
    }
    default: throw parameter_error("atoms: law has no finite atom set: " + name());
  }
}

bool EntryLaw::supported_in_unit_interval() const {
  switch (kind) {
    case LawKind::Rademacher:
    case LawKind::SignedBernoulli: return true;
    case LawKind::Uniform: return a >= -1.0 && b <= 1.0;
    default: return false;
  }
}

std::string EntryLaw::name() const {
  std::ostringstream os;
  switch (kind) {
    case LawKind::Rademacher: os << "rademacher"; break;
    case LawKind::Gaussian: os << "gaussian(" << mean << "," << variance << ")"; break;
    case LawKind::SignedBernoulli: os << "signed-bernoulli(" << p << ")"; break;
    case LawKind::Uniform: os << "uniform(" << a << "," << b << ")"; break;
    case LawKind::PerturbedRademacher: os << "perturbed-rademacher(" << sigma << ")"; break;
  }
  return os.str();
}

namespace {

std::vector<double> parse_args(const std::string& text, std::size_t open) {
  if (text.back() != ')') throw parameter_error("law: missing ')' in '" + text + "'");
  std::vector<double> args;
  std::string body = text.substr(open + 1, text.size() - open - 2);
  std::istringstream is(body);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      args.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw parameter_error("law: bad numeric argument '" + tok + "' in '" + text + "'");
    }
  }
  return args;
}

} // namespace

EntryLaw EntryLaw::parse(const std::string& text) {
  const std::size_t open = text.find('(');
  const std::string head = text.substr(0, open);
  std::vector<double> args;
  if (open != std::string::npos) args = parse_args(text, open);

  if (head == "rademacher") {
    if (!args.empty()) throw parameter_error("rademacher takes no arguments");
    return rademacher();
  }
  if (head == "gaussian") {
    if (args.size() == 1) return gaussian(0.0, args[0]);
    if (args.size() == 2) return gaussian(args[0], args[1]);
    throw parameter_error("gaussian takes (variance) or (mean,variance)");
  }
  if (head == "signed-bernoulli") {
    if (args.size() != 1) throw parameter_error("signed-bernoulli takes (p)");
    return signed_bernoulli(args[0]);
  }
  if (head == "uniform") {
    if (args.size() != 2) throw parameter_error("uniform takes (a,b)");
    return uniform(args[0], args[1]);
  }
  if (head == "perturbed-rademacher") {
    if (args.size() != 1) throw parameter_error("perturbed-rademacher takes (sigma)");
    return perturbed_rademacher(args[0]);
  }
  throw parameter_error("unknown law '" + text + "'");
}

} // namespace rsm
