#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pptkit/permanent.hpp"

using namespace pptkit;
using fixtures::random_sign_matrix;

namespace {

IntMatrix random_int_matrix(std::mt19937_64& rng, int n, int lo, int hi) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = lo + static_cast<std::int64_t>(rng() % (hi - lo + 1));
  return m;
}

}  // namespace

TEST_CASE("small permanents") {
  CHECK(permanent(SignMatrix::ones(3, 3)) == 6);
  CHECK(permanent(SignMatrix::from_strings({"+-", "++"})) == 0);
  CHECK(permanent(fixtures::sigma2()) == 0);
  CHECK(permanent_naive(SignMatrix::from_strings({"-"})) == -1);
  CHECK(permanent_naive(SignMatrix::ones(2, 2)) == 2);
  CHECK(permanent_naive(SignMatrix::from_strings({"-++", "+-+", "++-"})) == -2);
  CHECK(permanent(SignMatrix::from_strings({"-++", "+-+", "++-"})) == -2);
  CHECK(permanent(fixtures::matrix_a()) == 8);
  CHECK(permanent(fixtures::matrix_b()) == 8);
  CHECK_THROWS_AS(permanent(SignMatrix::ones(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(permanent_naive(SignMatrix::ones(10, 10)), std::invalid_argument);
  CHECK_THROWS_AS(permanent(SignMatrix::ones(25, 25)), UnsupportedError);
}

TEST_CASE("permanent of the all-ones matrix is n! up to the Ryser limit") {
  for (int n = 1; n <= 16; ++n) CHECK(permanent(SignMatrix::ones(n, n)) == factorial(n));
  CHECK(permanent(SignMatrix::ones(22, 22)) == factorial(22));  // past the 64-bit range
}

TEST_CASE("Ryser agrees with the permutation sum and cofactor expansion") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto m = random_sign_matrix(rng, n, n);
    const BigInt p = permanent(m);
    REQUIRE(p == permanent_naive(m));
    if (n <= 6) REQUIRE(p == oracles::laplace_permanent(oracles::to_rows(m)));
    REQUIRE(p == permanent(m.transposed()));
    if (n <= kSmallPermanentMaxOrder) {
      REQUIRE(BigInt(permanent_small(m.entries().data(), n)) == p);
    }
  }
}

TEST_CASE("parallel Ryser matches the serial reference at sizes that take the threaded path") {
  std::mt19937_64 rng(22);
  for (int n : {14, 15, 16, 18}) {
    const auto m = random_sign_matrix(rng, n, n);
    CHECK(permanent(m) == reference::permanent_ryser(m));
  }
}

TEST_CASE("integer-matrix permanent") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(rng() % 7);
    const auto m = random_int_matrix(rng, n, -3, 3);
    std::vector<std::vector<long long>> rows(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rows[i][j] = m(i, j);
    REQUIRE(permanent(m) == oracles::laplace_permanent(rows));
    if (n >= 1) REQUIRE(permanent(m) == permanent_naive(m));
  }
}

TEST_CASE("addition formula") {
  SUBCASE("J2 + (-J2)") {
    IntMatrix a(2, {1, 1, 1, 1}), b(2, {-1, -1, -1, -1});
    CHECK(permanent_addition(a, b) == 0);
  }
  SUBCASE("B = 0 leaves per(A)") {
    std::mt19937_64 rng(24);
    const auto a = random_int_matrix(rng, 5, -2, 2);
    CHECK(permanent_addition(a, IntMatrix(5)) == permanent(a));
  }
  SUBCASE("J4 - 2P is a sign matrix") {
    std::mt19937_64 rng(25);
    for (int t = 0; t < 20; ++t) {
      IntMatrix j4(4, std::vector<std::int64_t>(16, 1));
      const auto p = random_int_matrix(rng, 4, 0, 1);
      IntMatrix minus2p(4);
      for (int i = 0; i < 4; ++i)
        for (int c = 0; c < 4; ++c) minus2p(i, c) = -2 * p(i, c);
      CHECK(permanent_addition(j4, minus2p) == permanent_naive(j4 + minus2p));
    }
  }
  SUBCASE("random pairs") {
    std::mt19937_64 rng(26);
    for (int t = 0; t < 100; ++t) {
      const int n = 1 + static_cast<int>(rng() % 6);
      const auto a = random_int_matrix(rng, n, -2, 2), b = random_int_matrix(rng, n, -2, 2);
      REQUIRE(permanent_addition(a, b) == permanent_naive(a + b));
    }
  }
  CHECK_THROWS_AS(permanent_addition(IntMatrix(2), IntMatrix(3)), std::invalid_argument);
}

TEST_CASE("sign flips under negation") {
  std::mt19937_64 rng(27);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto m = random_sign_matrix(rng, n, n);
    const int i = static_cast<int>(rng() % n);
    CHECK(permanent(m.with_row_negated(i)) == -permanent(m));
    CHECK(permanent(m.with_col_negated(i)) == -permanent(m));
  }
}
