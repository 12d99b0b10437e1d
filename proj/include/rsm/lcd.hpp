#pragma once

#include <Eigen/Core>
#include <span>

#include "rsm/geometry.hpp"

namespace rsm {

struct LcdParams {
  double L = 1.0;          // >= 1
  double theta_max = 0.0;  // search horizon; 0 selects the generic default
  double grid_step = 0.01; // coarse scan cell width (performance knob only)
  double bisect_tol = 1e-9;

  void validate() const;

  /// Horizon for a generic m-dimensional unit vector: its lattice distance
  /// hovers near sqrt(m/12), so the defining inequality first holds near
  /// theta = L exp(m/(12 L^2)); the default allows a 10x margin.
  static double default_theta_max(int dim, double L);

  double horizon_for(int dim) const {
    return theta_max > 0.0 ? theta_max : default_theta_max(dim, L);
  }
};

enum class LcdStatus { Found, ExceededHorizon };

// Certified enclosure of the least common denominator: the infimum of the
// region where the lattice-distance condition holds is >= lo (certified) and
// <= hi (the condition was evaluated to hold at hi). When no such point
// exists below the horizon, status is ExceededHorizon and lo carries the
// certified-clear prefix (hi = horizon).
struct LcdBracket {
  double lo = 0.0;
  double hi = 0.0;
  LcdStatus status = LcdStatus::Found;

  bool found() const { return status == LcdStatus::Found; }
};

/// sqrt(sum_i dist(theta x_i, Z)^2) with dist(y, Z) = |y - round(y)|,
/// round half to even.
double lattice_distance(std::span<const double> x, double theta);
double lattice_distance(const Eigen::VectorXd& x, double theta);

/// Certified bracket around
///   D_L(x) = inf{ theta > 0 : dist(theta x, Z^N) < L sqrt(log+(theta/L)) }.
///
/// The scanner walks cells [a, b] from max(L, 1/(2 ||x||_inf)) upward. On a
/// cell, every t in [a, b] obeys
///   f(t) = dist(t x, Z^N) - rhs(t) >= dist(a x, Z^N) - (b - a) - rhs(b),
/// because theta -> dist(theta x, Z^N) is 1-Lipschitz (||x||_2 = 1) and rhs
/// is nondecreasing, so a cell whose bound stays positive certifiably
/// contains no crossing; all other cells are split recursively until a
/// strictly negative evaluation appears, then the enclosing gap is bisected
/// to bisect_tol. The start point is exact: below L the right side is zero,
/// and below 1/(2 ||x||_inf) the distance equals theta itself, which can
/// never drop under L sqrt(log(theta/L)).
LcdBracket lcd(const UnitVector& x, const LcdParams& params);

} // namespace rsm
