#include <doctest.h>

#include <cmath>

#include "rsm/errors.hpp"
#include "rsm/geometry.hpp"
#include "oracles.hpp"

using namespace rsm;

TEST_SUITE("geometry") {

TEST_CASE("unit vector construction validates the norm") {
  Eigen::VectorXd v(2);
  v << 0.6, 0.8;
  CHECK_NOTHROW((void)UnitVector{v});
  v << 0.6, 0.9;
  CHECK_THROWS_AS((void)UnitVector{v}, parameter_error);
  CHECK_NOTHROW((void)UnitVector::normalized(v));
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS((void)UnitVector::normalized(zero), parameter_error);
}

TEST_CASE("sphere params validate ranges") {
  CHECK_THROWS_AS(SphereParams(0.0, 0.5, 0.1), parameter_error);
  CHECK_THROWS_AS(SphereParams(0.5, 1.0, 0.1), parameter_error);
  CHECK_THROWS_AS(SphereParams(0.5, 0.5, 0.25), parameter_error);
  const SphereParams def = SphereParams::with_default_spread(0.5, 0.5);
  CHECK(def.c_spread == doctest::Approx(1.0 / 32));
}

TEST_CASE("sparse residual on basis and flat vectors") {
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(8);
  e1[0] = 1.0;
  CHECK(sparse_residual(UnitVector(e1), 1) == 0.0);

  const UnitVector flat = UnitVector::normalized(Eigen::VectorXd::Ones(8));
  CHECK(sparse_residual(flat, 4) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("sparse residual equals the brute-force support minimum") {
  for (int n : {5, 8, 10}) {
    const UnitVector v{oracles::random_unit(n, 300 + static_cast<std::uint64_t>(n))};
    for (int k = 0; k <= n; ++k) {
      CHECK(sparse_residual(v, k) ==
            doctest::Approx(oracles::sparse_residual_bruteforce(v.coords(), k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sparse residual endpoints and monotonicity") {
  const UnitVector v{oracles::random_unit(9, 42)};
  CHECK(sparse_residual(v, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sparse_residual(v, 9) == 0.0);
  double prev = 2.0;
  for (int k = 0; k <= 9; ++k) {
    const double cur = sparse_residual(v, k);
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
}

TEST_CASE("compressibility of basis and flat vectors") {
  const SphereParams params(0.5, 0.5, 0.1);
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(8);
  e1[0] = 1.0;
  CHECK(is_compressible(UnitVector(e1), params));
  const UnitVector flat = UnitVector::normalized(Eigen::VectorXd::Ones(8));
  CHECK(!is_compressible(flat, params)); // residual 1/sqrt(2) > 1/2
}

TEST_CASE("compressibility boundary is closed") {
  // two equal coordinates, c0 so that one survives: pin c1 to the exact
  // residual, which must count as compressible under the closed convention
  Eigen::VectorXd v(2);
  v << 1.0, 1.0;
  const UnitVector unit = UnitVector::normalized(v);
  const double residual = sparse_residual(unit, 1);
  const SphereParams at_boundary(0.4, residual, 0.05); // ceil(0.8) = 1 coordinate kept
  CHECK(is_compressible(unit, at_boundary));
  const SphereParams below(0.4, residual - 1e-12, 0.05);
  CHECK(!is_compressible(unit, below));
}

TEST_CASE("flat 16-vector yields spread {0,1} and one block at lambda 1/8") {
  const UnitVector flat = UnitVector::normalized(Eigen::VectorXd::Ones(16));
  const SphereParams params(0.5, 0.5, 0.125);
  const SpreadAssignment sa = spread_assignment(flat, params, 0.125);
  CHECK(sa.spread == std::vector<int>{0, 1});
  REQUIRE(sa.blocks.size() == 1);
  CHECK(sa.blocks[0] == std::vector<int>{0, 1});
  CHECK(sa.covered == std::vector<int>{0, 1});
}

TEST_CASE("basis vector fails the spread structural requirement") {
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(16);
  e1[0] = 1.0;
  const SphereParams params(0.5, 0.5, 0.125);
  CHECK_THROWS_AS((void)spread_assignment(UnitVector(e1), params, 0.125), structural_error);
}

TEST_CASE("every spread index satisfies the magnitude window") {
  // c1 = 0.2: a random unit vector's residual past its top half sits near
  // 0.36, so the family is genuinely incompressible at this scale
  const int n = 64;
  const SphereParams params(0.5, 0.2, 0.15);
  int tested = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const UnitVector v{oracles::random_unit(n, 1000 + seed)};
    if (is_compressible(v, params)) continue;
    const SpreadAssignment sa = spread_assignment(v, params, 0.05);
    const double lo = params.c1 / std::sqrt(2.0 * n);
    const double hi = 1.0 / std::sqrt(params.c0 * n);
    // direct filter oracle
    std::vector<int> qualifying;
    for (int i = 0; i < n; ++i)
      if (std::abs(v[i]) >= lo && std::abs(v[i]) <= hi) qualifying.push_back(i);
    const std::size_t want = static_cast<std::size_t>(std::ceil(params.c_spread * n));
    REQUIRE(qualifying.size() >= want);
    CHECK(sa.spread == std::vector<int>(qualifying.begin(), qualifying.begin() + want));
    for (int k : sa.spread) {
      CHECK(std::abs(v[k]) >= lo);
      CHECK(std::abs(v[k]) <= hi);
    }
    ++tested;
  }
  CHECK(tested >= 15); // the family is overwhelmingly incompressible
}

TEST_CASE("incompressible vectors carry at least twice the spread count") {
  // constructive default c_spread, family up to n = 256
  for (int n : {32, 128, 256}) {
    const SphereParams params = SphereParams::with_default_spread(0.5, 0.2);
    int incompressible = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const UnitVector v{oracles::random_unit(n, 2000 + seed)};
      if (is_compressible(v, params)) continue;
      ++incompressible;
      const auto q = qualifying_indices(v, params);
      CHECK(q.size() >= 2 * static_cast<std::size_t>(std::ceil(params.c_spread * n)));
    }
    CHECK(incompressible == 10); // gaussian unit vectors resist 0.2-approximation
  }
}

TEST_CASE("block structure depends only on the qualifying set") {
  // Two vectors with identical qualifying index sets get identical blocks.
  const int n = 32;
  const SphereParams params(0.5, 0.5, 0.15);
  const UnitVector a{oracles::random_unit(n, 77)};
  Eigen::VectorXd tweaked = a.coords();
  // nudge magnitudes inside the window without leaving it
  const double lo = params.c1 / std::sqrt(2.0 * n), hi = 1.0 / std::sqrt(params.c0 * n);
  for (int i = 0; i < n; ++i) {
    const double m = std::abs(tweaked[i]);
    if (m > lo * 1.05 && m < hi * 0.95) tweaked[i] *= 1.01;
  }
  const UnitVector b = UnitVector::normalized(tweaked);
  const auto qa = qualifying_indices(a, params);
  const auto qb = qualifying_indices(b, params);
  REQUIRE(qa == qb);
  const auto sa = spread_assignment(a, params, 0.1);
  const auto sb = spread_assignment(b, params, 0.1);
  CHECK(sa.spread == sb.spread);
  CHECK(sa.blocks == sb.blocks);
}

TEST_CASE("lambda outside the admissible range is rejected") {
  const UnitVector flat = UnitVector::normalized(Eigen::VectorXd::Ones(16));
  const SphereParams params(0.5, 0.5, 0.125);
  CHECK_THROWS_AS((void)spread_assignment(flat, params, 0.2), precondition_error);
  CHECK_THROWS_AS((void)spread_assignment(flat, params, 0.01), precondition_error); // floor = 0
}

TEST_CASE("restrict_normalized extracts a unit block") {
  const UnitVector v{oracles::random_unit(10, 5)};
  const UnitVector r = restrict_normalized(v, {1, 4, 7});
  CHECK(r.dim() == 3);
  CHECK(r.coords().norm() == doctest::Approx(1.0).epsilon(1e-12));
  const double scale = v[1] / r[0];
  CHECK(v[4] / r[1] == doctest::Approx(scale).epsilon(1e-10));
}

} // TEST_SUITE
