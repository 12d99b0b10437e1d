#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "rsm/entry_law.hpp"

namespace rsm {

// Random symmetric matrix with i.i.d. entries on and above the diagonal,
// mirrored below. Immutable after construction; regeneration with the same
// (n, law, seed) is bit-identical (entries are drawn row by row along the
// upper triangle, diagonal first in each row).
struct SymmetricMatrixSample {
  int n = 0;
  Eigen::MatrixXd entries;
  EntryLaw law;
  std::uint64_t seed = 0;
};

enum class SingularValueMethod { FullDecomposition, Bidiagonal };

struct SingularValueResult {
  double s_min = 0.0;
  double s_max = 0.0; // operator norm
  SingularValueMethod method = SingularValueMethod::FullDecomposition;
};

SymmetricMatrixSample sample_symmetric(int n, const EntryLaw& law, std::uint64_t seed);

/// Smallest and largest singular values. The default path takes absolute
/// eigenvalues of a full symmetric eigendecomposition (no squaring of the
/// condition number); the bidiagonal path runs a dense SVD for cross-checks.
SingularValueResult singular_extremes(const Eigen::MatrixXd& m,
                                      SingularValueMethod method =
                                          SingularValueMethod::FullDecomposition);
SingularValueResult singular_extremes(const SymmetricMatrixSample& m,
                                      SingularValueMethod method =
                                          SingularValueMethod::FullDecomposition);

/// Euclidean distance from row i (0-based) to the span of the other rows,
/// by orthogonal projection (rank-revealing QR of the other rows).
double distance_to_rowspan(const Eigen::MatrixXd& m, int i);

struct QuadraticDistancePair {
  double direct = 0.0;  // distance_to_rowspan(m, i)
  double formula = 0.0; // |<(A')^{-1} X, X> - a_ii| / sqrt(1 + ||(A')^{-1} X||^2)
};

/// Row-distance identity: evaluates both the projection distance and the
/// quadratic-form expression built from the minor A' (row/column i deleted)
/// and the off-diagonal column piece X. Throws precondition_error when the
/// minor is singular (a PerturbedRademacher law makes that almost surely
/// impossible).
QuadraticDistancePair quadratic_distance_identity(const Eigen::MatrixXd& m, int i);

/// Row-major CSV with shortest round-trip decimals.
std::string matrix_to_csv(const Eigen::MatrixXd& m);

} // namespace rsm
