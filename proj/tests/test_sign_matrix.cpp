#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pptkit/permanent.hpp"
#include "pptkit/sign_matrix.hpp"

using namespace pptkit;
using fixtures::random_sign_matrix;

namespace {

EquivalenceOp random_op(std::mt19937_64& rng, const SignMatrix& m) {
  const int r = m.rows(), c = m.cols();
  switch (rng() % 4) {
    case 0: return EquivalenceOp::swap_rows(static_cast<int>(rng() % r), static_cast<int>(rng() % r));
    case 1: return EquivalenceOp::swap_cols(static_cast<int>(rng() % c), static_cast<int>(rng() % c));
    case 2: return EquivalenceOp::negate_row(static_cast<int>(rng() % r));
    default: return EquivalenceOp::negate_col(static_cast<int>(rng() % c));
  }
}

SignMatrix scramble(std::mt19937_64& rng, SignMatrix m, int steps = 30) {
  for (int s = 0; s < steps; ++s) m = apply_op(m, random_op(rng, m));
  return m;
}

}  // namespace

TEST_CASE("construction and text form") {
  CHECK_THROWS_AS(SignMatrix(2, 2, {1, 1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SignMatrix(2, 2, {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SignMatrix(0, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(SignMatrix::from_strings({"+-", "+"}), std::invalid_argument);
  const auto m = SignMatrix::from_strings({"-+", "++"});
  CHECK(m.to_string() == "-+\n++");
  CHECK(m.minus_count() == 1);
  CHECK(m.transposed() == SignMatrix::from_strings({"-+", "++"}));
  CHECK(SignMatrix::from_strings({"--"}) < SignMatrix::from_strings({"-+"}));
}

TEST_CASE("associated matrix") {
  const auto m = associated_matrix({PartySet::from_indices({1}, 3), PartySet::from_indices({2}, 3),
                                    PartySet::from_indices({3}, 3), PartySet()},
                                   3);
  CHECK(m == SignMatrix::from_strings({"-++", "+-+", "++-", "+++"}));
  CHECK(associated_matrix({PartySet(), PartySet()}, 3) == SignMatrix::ones(2, 3));
  CHECK(associated_matrix({PartySet::from_indices({2}, 2), PartySet()}, 2) == SignMatrix::from_strings({"+-", "++"}));
  CHECK_THROWS_AS(associated_matrix({PartySet(0b100)}, 2), std::invalid_argument);
}

TEST_CASE("apply_op") {
  const auto s1 = fixtures::sigma1();
  CHECK(apply_op(s1, EquivalenceOp::negate_row(0)).row(0)[2] == -1);
  CHECK(apply_op(s1, EquivalenceOp::negate_row(0)) == SignMatrix::from_strings({"++--", "++++", "++++", "++++"}));
  const auto id = SignMatrix::from_strings({"-+++", "+-++", "++-+", "+++-"});
  CHECK(apply_op(id, EquivalenceOp::swap_cols(0, 1)) == SignMatrix::from_strings({"+-++", "-+++", "++-+", "+++-"}));
  CHECK(apply_op(apply_op(s1, EquivalenceOp::negate_col(2)), EquivalenceOp::negate_col(2)) == s1);
  CHECK_THROWS_AS(apply_op(s1, EquivalenceOp::negate_row(4)), std::out_of_range);
  CHECK_THROWS_AS(apply_op(s1, EquivalenceOp::swap_cols(0, -1)), std::out_of_range);
}

TEST_CASE("invariant profiles") {
  SUBCASE("sigma1") {
    const auto p = invariants(fixtures::sigma1());
    CHECK(p.mu == 2);
    CHECK(p.pi_r == 4);
    CHECK(p.rank == 2);
  }
  SUBCASE("matrix B is Hadamard") {
    const auto p = invariants(fixtures::matrix_b());
    CHECK(*p.abs_per == 8);
    CHECK(*p.abs_det == 16);
    CHECK(p.rank == 4);
    CHECK(p.pi_r == 4);
    CHECK(p.pi_c == 4);
    CHECK(p.row_gram_is_scalar);
  }
  SUBCASE("all ones") {
    const auto p = invariants(SignMatrix::ones(4, 4));
    CHECK(p.mu == 0);
    CHECK(p.pi_r == 4);
    CHECK(p.rank == 1);
    CHECK(*p.abs_per == 24);
  }
  SUBCASE("non-square") {
    const auto p = invariants(SignMatrix::from_strings({"-++", "+-+"}));
    CHECK_FALSE(p.abs_det.has_value());
    CHECK_FALSE(p.abs_per.has_value());
    CHECK(p.mu == 2);
    CHECK(p.col_minus == std::vector<int>{1, 1, 0});
  }
  SUBCASE("counting identities") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
      const auto m = random_sign_matrix(rng, 1 + rng() % 6, 1 + rng() % 6);
      const auto p = invariants(m);
      CHECK(p.mu == std::accumulate(p.row_minus.begin(), p.row_minus.end(), 0));
      CHECK(p.mu == std::accumulate(p.col_minus.begin(), p.col_minus.end(), 0));
      int even = 0;
      for (int x : p.row_minus) even += x % 2 == 0;
      CHECK(p.pi_r == even - (m.rows() - even));
    }
  }
}

TEST_CASE("the two same-profile 4x4 matrices are both Hadamard and equivalent") {
  // Both satisfy M M^T = 4 I, and every 4x4 Hadamard matrix lies in one class.
  const auto a = fixtures::matrix_a(), b = fixtures::matrix_b();
  CHECK(invariants(a).row_gram_is_scalar);
  CHECK(invariants(b).row_gram_is_scalar);
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK(reference::canonical_form_by_orbit(a) == reference::canonical_form_by_orbit(b));
  CHECK(oracles::orbit_bfs(a).count(b) == 1);
  CHECK(equivalent(a, b));
}

TEST_CASE("exact rank and determinant match rational elimination") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const int r = 1 + rng() % 7, c = 1 + rng() % 7;
    const auto m = random_sign_matrix(rng, r, c);
    const auto [rank, det] = oracles::rational_rank_det(m);
    REQUIRE(exact_rank(m) == rank);
    if (r == c) REQUIRE(oracles::Rational(exact_determinant(m)) == det);
  }
  CHECK_THROWS_AS(exact_determinant(SignMatrix::ones(2, 3)), std::invalid_argument);
  CHECK(exact_determinant(fixtures::matrix_a()) == -16);
}

TEST_CASE("invariants are preserved by every equivalence operation") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto m = random_sign_matrix(rng, n, n);
    const auto op = random_op(rng, m);
    const auto m2 = apply_op(m, op);
    const auto p = invariants(m), q = invariants(m2);
    CHECK(p.rank == q.rank);
    CHECK(*p.abs_det == *q.abs_det);
    CHECK(*p.abs_per == *q.abs_per);
    CHECK(p.row_gram_is_scalar == q.row_gram_is_scalar);
    if (n % 2 == 0) {
      // a line negation across the other axis flips every parity, so only |pi| survives
      CHECK(std::abs(p.pi_r) == std::abs(q.pi_r));
      CHECK(std::abs(p.pi_c) == std::abs(q.pi_c));
    }
    const bool swap = op.kind == EquivalenceOp::Kind::SwapRows || op.kind == EquivalenceOp::Kind::SwapCols;
    if (swap) CHECK(permanent(m) == permanent(m2));
    if (!swap) CHECK(permanent(m) == -permanent(m2));
  }
}

TEST_CASE("signed parity difference flips under a column negation") {
  const auto m = SignMatrix::ones(4, 4);
  CHECK(invariants(m).pi_r == 4);
  CHECK(invariants(m.with_col_negated(0)).pi_r == -4);
  CHECK(invariants(m.with_row_negated(0)).pi_r == 4);
}

TEST_CASE("canonical form equals the orbit minimum") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 60; ++t) {
    const int r = 1 + static_cast<int>(rng() % 3), c = 1 + static_cast<int>(rng() % 4);
    const auto m = random_sign_matrix(rng, r, c);
    const auto orbit = oracles::orbit_bfs(m);
    REQUIRE(canonical_form(m) == *orbit.begin());
  }
  for (int t = 0; t < 40; ++t) {
    const auto m = random_sign_matrix(rng, 4, 4);
    REQUIRE(canonical_form(m) == reference::canonical_form_by_orbit(m));
  }
}

TEST_CASE("canonical form is constant on orbits") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const int r = 1 + static_cast<int>(rng() % 7), c = 1 + static_cast<int>(rng() % 8);
    const auto m = random_sign_matrix(rng, r, c);
    const auto s = scramble(rng, m);
    REQUIRE(canonical_form(m) == canonical_form(s));
    REQUIRE(equivalent(m, s));
  }
  CHECK_THROWS_AS(canonical_form(SignMatrix::ones(8, 2)), UnsupportedError);
  CHECK_THROWS_AS(canonical_form(SignMatrix::ones(2, 33)), UnsupportedError);
}

TEST_CASE("known equivalences among the vanishing 4x4 matrices") {
  using fixtures::sigma1, fixtures::sigma2, fixtures::sigma3, fixtures::sigma4;
  CHECK(equivalent(sigma4(), sigma2().transposed()));
  CHECK(equivalent(sigma3().transposed(), sigma3()));
  CHECK_FALSE(equivalent(sigma1(), sigma1().transposed()));
  CHECK_FALSE(equivalent(sigma2(), sigma2().transposed()));
  CHECK(invariants(sigma1()).pi_r == 4);
  CHECK(invariants(sigma1().transposed()).pi_r == 0);
  CHECK(invariants(sigma2()).pi_r == 4);
  CHECK(invariants(sigma2().transposed()).pi_r == 0);
  for (int i = 0; i < 3; ++i) {
    const SignMatrix s[] = {sigma1(), sigma2(), sigma3()};
    CHECK(exact_rank(s[i]) == i + 2);
    CHECK(exact_rank(s[i].transposed()) == i + 2);
  }
  CHECK(equivalent(sigma1(), apply_op(sigma1(), EquivalenceOp::negate_row(2))));
  CHECK_FALSE(equivalent(SignMatrix::ones(2, 3), SignMatrix::ones(3, 2)));
}

TEST_CASE("reduce_minus") {
  CHECK(reduce_minus_threshold(3) == 3);
  CHECK(reduce_minus_threshold(4) == 6);
  CHECK(reduce_minus_threshold(5) == 9);
  CHECK(reduce_minus_threshold(6) == 15);
  CHECK_THROWS_AS(reduce_minus(SignMatrix::ones(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(reduce_minus(SignMatrix::ones(3, 4)), std::invalid_argument);

  const auto col = SignMatrix::from_strings({"-+++", "-+++", "-+++", "-+++"});
  CHECK_FALSE(reduce_minus(col).has_value());  // mu = 4 is below the n = 4 threshold 6
  const auto heavy = SignMatrix::from_strings({"--++", "--++", "--++", "-+++"});
  const auto r = reduce_minus(heavy);
  REQUIRE(r.has_value());
  CHECK(r->minus_count() < heavy.minus_count());

  const auto diag3 = SignMatrix::from_strings({"-++", "+-+", "++-"});
  const auto r3 = reduce_minus(diag3);
  REQUIRE(r3.has_value());
  CHECK(r3->minus_count() <= 2);
  CHECK(oracles::orbit_bfs(diag3).count(*r3) == 1);

  std::mt19937_64 rng(6);
  int fired = 0;
  for (int t = 0; t < 3000; ++t) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const auto m = random_sign_matrix(rng, n, n);
    const auto out = reduce_minus(m);
    CHECK(out.has_value() == (m.minus_count() >= reduce_minus_threshold(n)));
    if (out) {
      ++fired;
      REQUIRE(out->minus_count() < m.minus_count());
      REQUIRE(equivalent(*out, m));
    }
  }
  CHECK(fired > 100);
}
