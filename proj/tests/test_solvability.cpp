#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "pptkit/linalg.hpp"
#include "pptkit/permanent.hpp"
#include "pptkit/solvability.hpp"

using namespace pptkit;

namespace {

ProblemSpec spec_of(std::vector<int> dims, std::vector<std::pair<std::vector<int>, int>> cs) {
  ProblemSpec s;
  s.dims = std::move(dims);
  for (auto& [sub, k] : cs) s.constraints.push_back({PartySet::from_indices(sub, s.parties()), k, std::nullopt});
  return s;
}

ProblemSpec random_spec(std::mt19937_64& rng, int max_parties = 4) {
  ProblemSpec s;
  const int n = 2 + static_cast<int>(rng() % (max_parties - 1));
  for (int j = 0; j < n; ++j) s.dims.push_back(2 + static_cast<int>(rng() % 2));
  const int r = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < r; ++i)
    s.constraints.push_back({PartySet(rng() & PartySet::full(n).bits()), 1 + static_cast<int>(rng() % 3), std::nullopt});
  return s;
}

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(spec_of({2, 2}, {{{1}, 1}}).validate());
  CHECK_NOTHROW(spec_of({2, 2}, {}).validate());
  CHECK_THROWS_AS(spec_of({1, 2}, {{{1}, 1}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(spec_of({2, 2}, {{{1}, 0}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(spec_of({2, 2}, {{{1}, 5}}).validate(), std::invalid_argument);
  ProblemSpec bad = spec_of({2, 2}, {{{1}, 1}});
  bad.constraints[0].subset = PartySet(0b100);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = spec_of({2, 2}, {{{1}, 2}});
  bad.constraints[0].complement_basis = std::vector<ComplexVector>{ComplexVector::Zero(4)};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("reduce") {
  SUBCASE("complementary subsets merge") {
    const auto r = reduce(spec_of({2, 2, 2}, {{{1}, 1}, {{2, 3}, 1}}));
    REQUIRE(r.constraints.size() == 1);
    CHECK(r.constraints[0].codim == 2);
    CHECK(r.constraints[0].subset == PartySet::from_indices({1}, 3));
  }
  SUBCASE("equal subsets merge") {
    const auto r = reduce(spec_of({3, 3}, {{{}, 2}, {{}, 3}}));
    REQUIRE(r.constraints.size() == 1);
    CHECK(r.constraints[0].codim == 5);
  }
  SUBCASE("codim saturates at the ambient dimension") {
    const auto r = reduce(spec_of({2, 2}, {{{}, 3}, {{1, 2}, 3}}));
    REQUIRE(r.constraints.size() == 1);
    CHECK(r.constraints[0].codim == 4);
    CHECK(r.constraints[0].subset.empty());
  }
  SUBCASE("non-parallel family is unchanged") {
    const auto s = spec_of({2, 2, 2}, {{{1}, 1}, {{2}, 1}, {{}, 1}});
    const auto r = reduce(s);
    CHECK(r.subsets() == s.subsets());
    CHECK(r.codims() == s.codims());
  }
  SUBCASE("explicit bases intersect, conjugating the complementary side") {
    const Complex i1(0.0, 1.0);
    ComplexVector v = ComplexVector::Zero(4), w = ComplexVector::Zero(4);
    v[0] = 1.0;
    w[1] = i1;
    w[2] = 1.0;
    w /= std::sqrt(2.0);
    ProblemSpec s = spec_of({2, 2}, {{{1}, 1}, {{2}, 1}});
    s.constraints[0].complement_basis = std::vector<ComplexVector>{v};
    s.constraints[1].complement_basis = std::vector<ComplexVector>{w};
    const auto r = reduce(s);
    REQUIRE(r.constraints.size() == 1);
    CHECK(r.constraints[0].codim == 2);
    const auto& basis = *r.constraints[0].complement_basis;
    CHECK(is_orthonormal(basis));
    // conj(w) must lie in the merged span
    ComplexVector residual = w.conjugate();
    for (const auto& b : basis) residual -= b.dot(residual) * b;
    CHECK(residual.norm() < 1e-12);
  }
  SUBCASE("idempotent") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
      const auto s = random_spec(rng);
      const auto r = reduce(s);
      const auto rr = reduce(r);
      CHECK(rr.subsets() == r.subsets());
      CHECK(rr.codims() == r.codims());
      for (std::size_t a = 0; a < r.constraints.size(); ++a)
        for (std::size_t b = a + 1; b < r.constraints.size(); ++b) {
          CHECK_FALSE(r.constraints[a].subset == r.constraints[b].subset);
          CHECK_FALSE(r.constraints[a].subset == r.constraints[b].subset.complement(r.parties()));
        }
    }
  }
}

TEST_CASE("counts") {
  auto c = counts(fixtures::underdetermined_zero_class());
  CHECK(c.equations == 4);
  CHECK(c.unknowns == 5);
  c = counts(spec_of({2, 2}, {{{2}, 1}, {{}, 1}}));
  CHECK(c.equations == 2);
  CHECK(c.unknowns == 2);
  c = counts(spec_of({3, 3}, {{{}, 4}}));
  CHECK(c.equations == 4);
  CHECK(c.unknowns == 4);
}

TEST_CASE("verdict examples") {
  SUBCASE("under-determined with a vanishing class is inconclusive") {
    const auto v = verdict(fixtures::underdetermined_zero_class());
    CHECK(v.kind == VerdictKind::Inconclusive);
    CHECK_FALSE(v.basis.has_value());
    CHECK(v.diagnostics.n_equations == 4);
    CHECK(v.diagnostics.n_unknowns == 5);
    CHECK(v.diagnostics.sigma_rank == 3);
    CHECK(v.diagnostics.pk_is_zero);
  }
  SUBCASE("over-determined") {
    const auto v = verdict(spec_of({2, 2, 2}, {{{}, 4}}));
    CHECK(v.kind == VerdictKind::GenericallyEmpty);
    CHECK(v.basis == VerdictBasis::OverDetermined);
    CHECK(v.generic_only);
  }
  SUBCASE("two qubits with one conjugated constraint") {
    const auto v = verdict(spec_of({2, 2}, {{{2}, 1}, {{}, 1}}));
    CHECK(v.kind == VerdictKind::Inconclusive);
    CHECK(v.diagnostics.top_coefficient == 0);
  }
  SUBCASE("four-qubit vanishing square matrix") {
    const auto v = verdict(spec_of({2, 2, 2, 2}, {{{2, 4}, 1}, {{2}, 1}, {{4}, 1}, {{}, 1}}));
    CHECK(v.kind == VerdictKind::Inconclusive);
  }
  SUBCASE("critical trivial subset uses the count") {
    const auto v = verdict(spec_of({3, 3}, {{{}, 4}}));
    CHECK(v.kind == VerdictKind::ExistsNonzero);
    CHECK(v.basis == VerdictBasis::SegreCount);
  }
  SUBCASE("no constraints") {
    const auto v = verdict(spec_of({2, 3}, {}));
    CHECK(v.kind == VerdictKind::InfinitelyMany);
  }
}

TEST_CASE("three qubits never end inconclusive when N_E <= 3") {
  const std::vector<std::vector<int>> subsets{{}, {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
  std::mt19937_64 rng(32);
  for (int t = 0; t < 300; ++t) {
    ProblemSpec s;
    s.dims = {2, 2, 2};
    int left = 1 + static_cast<int>(rng() % 3);
    while (left > 0) {
      const int k = 1 + static_cast<int>(rng() % left);
      s.constraints.push_back({PartySet::from_indices(subsets[rng() % 8], 3), k, std::nullopt});
      left -= k;
    }
    const auto v = verdict(s);
    CHECK(v.kind != VerdictKind::Inconclusive);
    CHECK(v.kind != VerdictKind::GenericallyEmpty);
  }
}

TEST_CASE("generic_count") {
  CHECK(*generic_count(spec_of({3, 3}, {{{}, 4}})) == 6);
  CHECK(*generic_count(spec_of({2, 2}, {{{}, 2}})) == 2);
  CHECK(*generic_count(spec_of({2, 2, 2}, {{{}, 1}, {{}, 1}, {{1, 2, 3}, 1}})) == 6);
  CHECK(*generic_count(spec_of({2, 3, 4}, {{{}, 6}})) == 60);
  CHECK_FALSE(generic_count(spec_of({2, 2}, {{{1}, 2}})).has_value());
  CHECK_FALSE(generic_count(spec_of({2, 2}, {{{}, 1}})).has_value());
}

TEST_CASE("square qubit systems follow the permanent") {
  std::mt19937_64 rng(33);
  int checked = 0, vanishing = 0;
  for (int t = 0; t < 400; ++t) {
    const int n = 2 + static_cast<int>(rng() % 4);
    ProblemSpec s;
    s.dims.assign(n, 2);
    for (int i = 0; i < n; ++i) s.constraints.push_back({PartySet(rng() & PartySet::full(n).bits()), 1, std::nullopt});
    if (reduce(s).constraints.size() != s.constraints.size()) continue;
    ++checked;
    const BigInt per = permanent(associated_matrix(s.subsets(), n));
    const auto v = verdict(s);
    if (per != 0) {
      CHECK(v.kind == VerdictKind::ExistsNonzero);
      CHECK(v.basis == VerdictBasis::QubitPermanent);
    } else {
      ++vanishing;
      CHECK(v.kind == VerdictKind::Inconclusive);
    }
  }
  CHECK(checked > 100);
  CHECK(vanishing > 5);
}

TEST_CASE("verdict symmetries") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 200; ++t) {
    const auto s = random_spec(rng);
    const auto kind = verdict(s).kind;
    const int n = s.parties();

    auto shuffled = s;
    std::shuffle(shuffled.constraints.begin(), shuffled.constraints.end(), rng);
    CHECK(verdict(shuffled).kind == kind);

    auto complemented = s;
    auto& c = complemented.constraints[rng() % complemented.constraints.size()];
    c.subset = c.subset.complement(n);
    CHECK(verdict(complemented).kind == kind);

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ProblemSpec relabeled;
    relabeled.dims.resize(n);
    for (int j = 0; j < n; ++j) relabeled.dims[perm[j]] = s.dims[j];
    for (const auto& con : s.constraints) {
      std::uint64_t bits = 0;
      for (int j = 0; j < n; ++j)
        if (con.subset.contains(j)) bits |= std::uint64_t{1} << perm[j];
      relabeled.constraints.push_back({PartySet(bits), con.codim, std::nullopt});
    }
    CHECK(verdict(relabeled).kind == kind);

    const auto cnt = counts(reduce(s));
    if (cnt.equations <= cnt.unknowns) CHECK(kind != VerdictKind::GenericallyEmpty);
    if (cnt.equations > cnt.unknowns) CHECK(kind == VerdictKind::GenericallyEmpty);
  }
}
