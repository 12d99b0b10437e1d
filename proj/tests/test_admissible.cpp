#include <doctest.h>

#include <cstdint>
#include <vector>

#include "rsm/admissible.hpp"
#include "rsm/errors.hpp"

using namespace rsm;

namespace {

std::vector<std::int64_t> interval(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = lo; x <= hi; ++x) out.push_back(x);
  return out;
}

} // namespace

TEST_SUITE("admissible") {

TEST_CASE("full centered intervals with delta 0 are admissible") {
  const std::int64_t N = 4;
  std::vector<std::vector<std::int64_t>> sets(3, interval(-N, N));
  const auto r = is_admissible(sets, N, 3.0, 0.0);
  CHECK(static_cast<bool>(r));
}

TEST_CASE("a singleton violates the interval size clause") {
  const std::int64_t N = 2;
  std::vector<std::vector<std::int64_t>> sets{{0}, interval(-N, N)};
  const auto r = is_admissible(sets, N, 3.0, 0.0);
  CHECK(!r.admissible);
  CHECK(r.violating_index == 1);
  CHECK(r.clause == "interval");
}

TEST_CASE("two flanking intervals avoiding the center pass the early clause") {
  const std::int64_t N = 3;
  std::vector<std::int64_t> flank;
  for (std::int64_t x = -2 * N; x <= -N - 1; ++x) flank.push_back(x);
  for (std::int64_t x = N + 1; x <= 2 * N; ++x) flank.push_back(x);
  std::vector<std::vector<std::int64_t>> sets{flank, interval(-N, N), interval(-N, N)};
  const auto r = is_admissible(sets, N, 3.0, 1.0 / 3.0); // i = 1 <= delta*n = 1
  CHECK(static_cast<bool>(r));
}

TEST_CASE("early component touching the center band fails") {
  const std::int64_t N = 3;
  std::vector<std::vector<std::int64_t>> sets{interval(-N, N), interval(-N, N), interval(-N, N)};
  const auto r = is_admissible(sets, N, 3.0, 1.0 / 3.0);
  CHECK(!r.admissible);
  CHECK(r.violating_index == 1);
  CHECK(r.clause == "two-intervals");
}

TEST_CASE("asymmetric or out-of-range sets fail the first clause") {
  const std::int64_t N = 2;
  std::vector<std::vector<std::int64_t>> missing_mirror{{-2, -1, 0, 1, 2, 3}};
  auto r = is_admissible(missing_mirror, N, 3.0, 0.0);
  CHECK(!r.admissible);
  CHECK(r.clause == "symmetry-range");

  std::vector<std::vector<std::int64_t>> out_of_range{interval(-2 * N, 2 * N)};
  r = is_admissible(out_of_range, N, 3.0, 0.0); // range is (-nN, nN) = (-2, 2)
  CHECK(!r.admissible);
  CHECK(r.clause == "symmetry-range");
}

TEST_CASE("cardinality product is checked in the log domain") {
  const std::int64_t N = 4;
  // sizes 2N+1 = 9 each; (KN)^n with K = 2 gives 8^n < 9^n -> fail
  std::vector<std::vector<std::int64_t>> sets(4, interval(-N, N));
  auto r = is_admissible(sets, N, 2.0, 0.0);
  CHECK(!r.admissible);
  CHECK(r.clause == "cardinality");
  r = is_admissible(sets, N, 3.0, 0.0);
  CHECK(static_cast<bool>(r));
}

TEST_CASE("parameters are validated") {
  std::vector<std::vector<std::int64_t>> sets{interval(-1, 1)};
  CHECK_THROWS_AS((void)is_admissible(sets, 0, 3.0, 0.0), parameter_error);
  CHECK_THROWS_AS((void)is_admissible(sets, 1, 0.5, 0.0), parameter_error);
  CHECK_THROWS_AS((void)is_admissible({}, 1, 3.0, 0.0), parameter_error);
}

} // TEST_SUITE
