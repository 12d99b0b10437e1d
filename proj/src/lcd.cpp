#include "rsm/lcd.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "rsm/errors.hpp"

namespace rsm {

void LcdParams::validate() const {
  if (!(L >= 1.0)) throw parameter_error("lcd params: L must be >= 1");
  if (!(grid_step > 0.0)) throw parameter_error("lcd params: grid_step must be > 0");
  if (!(bisect_tol > 0.0) || !(bisect_tol < grid_step))
    throw parameter_error("lcd params: need 0 < bisect_tol < grid_step");
  if (theta_max != 0.0 && !(theta_max > std::max(L, grid_step)))
    throw parameter_error("lcd params: horizon must exceed L and grid_step");
}

double LcdParams::default_theta_max(int dim, double L) {
  return std::max(10.0 * std::exp(dim / (12.0 * L * L)), L + 10.0);
}

double lattice_distance(std::span<const double> x, double theta) {
  if (!(theta >= 0.0)) throw parameter_error("lattice_distance: theta must be >= 0");
  double sq = 0.0;
  for (double xi : x) {
    const double d = std::remainder(theta * xi, 1.0); // y - round-half-even(y)
    sq += d * d;
  }
  return std::sqrt(sq);
}

double lattice_distance(const Eigen::VectorXd& x, double theta) {
  return lattice_distance(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
                          theta);
}

namespace {

struct GapFn {
  const Eigen::VectorXd& x;
  double L;

  double rhs(double theta) const {
    const double s = std::log(theta / L);
    return s > 0.0 ? L * std::sqrt(s) : 0.0;
  }
  double dist(double theta) const { return lattice_distance(x, theta); }
  double operator()(double theta) const { return dist(theta) - rhs(theta); }
};

// Growth floor for recursive splitting; below this width a cell is probed
// instead of split further.
constexpr double kProbeFraction = 0.25;

class Scanner {
 public:
  Scanner(const GapFn& f, double tol) : f_(f), probe_width_(kProbeFraction * tol) {}

  // Left-first search of [a, b] for the earliest strictly negative
  // evaluation. `fa` is f(a). Maintains the contiguity bookkeeping: cells
  // certified clear advance `frontier_` until the first unresolved sliver
  // freezes it at `gap_start_`.
  std::optional<double> visit(double a, double b, double fa) {
    if (fa < 0.0) return a;
    const double lower_bound = f_.dist(a) - (b - a) - f_.rhs(b);
    if (lower_bound > 0.0) {
      advance(b);
      return std::nullopt;
    }
    const double m = 0.5 * (a + b);
    if (b - a <= probe_width_ || m <= a || m >= b) {
      const double fm = f_(m);
      if (fm < 0.0) return m;
      const double fb = f_(b);
      if (fb < 0.0) return b;
      mark_gap(a);
      return std::nullopt;
    }
    const double fm = f_(m);
    if (auto hit = visit(a, m, fa)) return hit;
    return visit(m, b, fm);
  }

  // True if f >= 0 on [a, b] can be certified by recursive bounding.
  bool certify_nonneg(double a, double b) {
    const double lower_bound = f_.dist(a) - (b - a) - f_.rhs(b);
    if (lower_bound > 0.0) return true;
    const double m = 0.5 * (a + b);
    if (b - a <= 1e-3 * probe_width_ || m <= a || m >= b) return false;
    if (f_(m) < 0.0 || f_(a) < 0.0 || f_(b) < 0.0) return false;
    return certify_nonneg(a, m) && certify_nonneg(m, b);
  }

  double certified_lo(double fallback) const {
    if (gap_start_) return *gap_start_;
    return frontier_ > 0.0 ? frontier_ : fallback;
  }

 private:
  void advance(double b) {
    if (!gap_start_) frontier_ = std::max(frontier_, b);
  }
  void mark_gap(double a) {
    if (!gap_start_) gap_start_ = a;
  }

  const GapFn& f_;
  double probe_width_;
  double frontier_ = 0.0;
  std::optional<double> gap_start_;
};

} // namespace

LcdBracket lcd(const UnitVector& x, const LcdParams& params) {
  params.validate();
  const GapFn f{x.coords(), params.L};
  const double horizon = params.horizon_for(x.dim());
  const double inf_norm = x.coords().cwiseAbs().maxCoeff();
  const double start = std::max(params.L, 1.0 / (2.0 * inf_norm));

  if (start >= horizon) return {horizon, horizon, LcdStatus::ExceededHorizon};

  Scanner scanner(f, params.bisect_tol);
  std::optional<double> neg;
  double a = start;
  double fa = f(a);
  while (a < horizon) {
    const double b = std::min(a + params.grid_step, horizon);
    neg = scanner.visit(a, b, fa);
    if (neg) break;
    a = b;
    fa = f(a);
  }

  if (!neg) {
    const double lo = std::min(scanner.certified_lo(start), horizon);
    return {lo, horizon, LcdStatus::ExceededHorizon};
  }

  double lo = std::min(scanner.certified_lo(start), *neg);
  double hi = *neg;
  while (hi - lo > params.bisect_tol) {
    const double m = 0.5 * (lo + hi);
    if (m <= lo || m >= hi) break;
    if (f(m) < 0.0) {
      hi = m;
    } else if (scanner.certify_nonneg(lo, m)) {
      lo = m;
    } else {
      break; // near-flat stretch; return the honest wider bracket
    }
  }
  return {lo, hi, LcdStatus::Found};
}

} // namespace rsm
