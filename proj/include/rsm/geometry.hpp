#pragma once

#include <Eigen/Core>
#include <vector>

namespace rsm {

// Unit vector in R^n; construction enforces | ||v||_2 - 1 | <= 1e-12.
class UnitVector {
 public:
  explicit UnitVector(Eigen::VectorXd coords);

  /// Scales a nonzero vector to unit norm.
  static UnitVector normalized(Eigen::VectorXd v);

  const Eigen::VectorXd& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }

 private:
  Eigen::VectorXd coords_;
};

struct SphereParams {
  double c0 = 0.5;       // sparsity fraction, in (0,1)
  double c1 = 0.5;       // distance to sparse vectors, in (0,1)
  double c_spread = 0.0; // spread-set fraction, in (0,1/5)

  SphereParams() = default;
  SphereParams(double c0_, double c1_, double c_spread_);

  /// Constructive default c_spread = min(c1^2/8, 1/6): incompressible
  /// vectors have at least c1^2 n / 2 coordinates above c1/sqrt(2n) in
  /// magnitude, and at least (1-c0) n below 1/sqrt(c0 n), so this choice
  /// leaves at least 2*ceil(c_spread n) qualifying indices. Any positive
  /// constant with that property is admissible; this is one valid choice,
  /// exposed as a knob.
  static SphereParams with_default_spread(double c0, double c1);
};

// Deterministic spread structure of an incompressible vector. Indices are
// 0-based. All block choices depend only on the qualifying index set, n,
// and the parameters, never on the coordinate values themselves.
struct SpreadAssignment {
  std::vector<int> spread;              // ceil(c_spread n) qualifying indices
  double lambda = 0.0;
  std::vector<std::vector<int>> blocks; // disjoint runs of size ceil(lambda n)
  std::vector<int> covered;             // union of blocks, prefix of spread

  int block_size() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().size()); }
};

/// Euclidean norm of v with its k largest-magnitude coordinates removed:
/// the exact distance from v to the set of k-sparse vectors.
double sparse_residual(const UnitVector& v, int k);

/// True iff v lies within distance c1 of a ceil(c0 n)-sparse vector
/// (boundary closed: residual exactly c1 counts as compressible).
bool is_compressible(const UnitVector& v, const SphereParams& params);

/// Qualifying indices c1/sqrt(2n) <= |v_k| <= 1/sqrt(c0 n), in ascending
/// order (the deterministic tie-break).
std::vector<int> qualifying_indices(const UnitVector& v, const SphereParams& params);

/// Deterministic spread assignment: among qualifying indices the
/// lexicographically smallest ceil(c_spread n) form the spread set; the
/// first m * ceil(lambda n) of those (m maximal) are covered and split into
/// m consecutive blocks. Throws structural_error when fewer than
/// ceil(c_spread n) indices qualify (the vector was compressible or
/// c_spread is too large for these (c0, c1)).
SpreadAssignment spread_assignment(const UnitVector& v, const SphereParams& params, double lambda);

/// Normalized restriction v_I / ||v_I||_2 of v to the given index set.
UnitVector restrict_normalized(const UnitVector& v, const std::vector<int>& indices);

} // namespace rsm
