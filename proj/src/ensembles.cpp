#include "rsm/ensembles.hpp"

#include <Eigen/Dense>
#include <charconv>
#include <cmath>

#include "rsm/errors.hpp"
#include "rsm/rng.hpp"

namespace rsm {

SymmetricMatrixSample sample_symmetric(int n, const EntryLaw& law, std::uint64_t seed) {
  if (n < 1) throw parameter_error("sample_symmetric: n must be >= 1");
  Rng rng(seed);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double x = law.sample(rng);
      m(i, j) = x;
      m(j, i) = x;
    }
  }
  return {n, std::move(m), law, seed};
}

namespace {

void require_square_finite(const Eigen::MatrixXd& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw parameter_error(std::string(who) + ": matrix must be square and nonempty");
  if (!m.allFinite()) throw numeric_error(std::string(who) + ": matrix has non-finite entries");
}

} // namespace

SingularValueResult singular_extremes(const Eigen::MatrixXd& m, SingularValueMethod method) {
  require_square_finite(m, "singular_extremes");
  SingularValueResult out;
  out.method = method;
  if (method == SingularValueMethod::FullDecomposition) {
    // Symmetric input: singular values are absolute eigenvalues.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd abs_ev = es.eigenvalues().cwiseAbs();
    out.s_min = abs_ev.minCoeff();
    out.s_max = abs_ev.maxCoeff();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    out.s_min = svd.singularValues().minCoeff();
    out.s_max = svd.singularValues().maxCoeff();
  }
  return out;
}

SingularValueResult singular_extremes(const SymmetricMatrixSample& m, SingularValueMethod method) {
  return singular_extremes(m.entries, method);
}

double distance_to_rowspan(const Eigen::MatrixXd& m, int i) {
  require_square_finite(m, "distance_to_rowspan");
  const int n = static_cast<int>(m.rows());
  if (i < 0 || i >= n) throw parameter_error("distance_to_rowspan: row index out of range");

  Eigen::MatrixXd others(n, n - 1); // columns are the other rows, transposed
  int c = 0;
  for (int r = 0; r < n; ++r) {
    if (r == i) continue;
    others.col(c++) = m.row(r).transpose();
  }
  const Eigen::VectorXd x = m.row(i).transpose();

  // Rank-revealing QR handles rank-deficient spans (repeated rows).
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(others);
  const auto rank = qr.rank();
  if (rank == 0) return x.norm();
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, rank);
  return (x - q * (q.transpose() * x)).norm();
}

QuadraticDistancePair quadratic_distance_identity(const Eigen::MatrixXd& m, int i) {
  require_square_finite(m, "quadratic_distance_identity");
  const int n = static_cast<int>(m.rows());
  if (i < 0 || i >= n) throw parameter_error("quadratic_distance_identity: row index out of range");
  if (n < 2) throw parameter_error("quadratic_distance_identity: need n >= 2");

  Eigen::MatrixXd minor(n - 1, n - 1);
  Eigen::VectorXd x(n - 1);
  int r = 0;
  for (int a = 0; a < n; ++a) {
    if (a == i) continue;
    x[r] = m(a, i);
    int c = 0;
    for (int b = 0; b < n; ++b) {
      if (b == i) continue;
      minor(r, c++) = m(a, b);
    }
    ++r;
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(minor);
  if (!lu.isInvertible())
    throw precondition_error("quadratic_distance_identity: minor deleting row/column " +
                             std::to_string(i) + " is singular");
  const Eigen::VectorXd y = lu.solve(x);

  QuadraticDistancePair out;
  out.formula = std::abs(y.dot(x) - m(i, i)) / std::sqrt(1.0 + y.squaredNorm());
  out.direct = distance_to_rowspan(m, i);
  return out;
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::string out;
  char buf[32];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      auto res = std::to_chars(buf, buf + sizeof(buf), m(r, c));
      if (c > 0) out.push_back(',');
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

} // namespace rsm
