#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pptkit/prodvec.hpp"
#include "pptkit/sign_matrix.hpp"
#include "pptkit/solvability.hpp"

namespace fixtures {

using pptkit::SignMatrix;

// 4x4 vanishing-permanent representatives.
inline SignMatrix sigma1() { return SignMatrix::from_strings({"--++", "++++", "++++", "++++"}); }
inline SignMatrix sigma2() { return SignMatrix::from_strings({"--++", "+--+", "++++", "++++"}); }
inline SignMatrix sigma3() { return SignMatrix::from_strings({"--++", "+-++", "++-+", "++++"}); }
inline SignMatrix sigma4() { return SignMatrix::from_strings({"--++", "++-+", "+++-", "++++"}); }

// Two 4x4 matrices sharing |per|, |det|, rank and parity counts.
inline SignMatrix matrix_a() { return SignMatrix::from_strings({"--++", "+--+", "-+-+", "++++"}); }
inline SignMatrix matrix_b() { return SignMatrix::from_strings({"++++", "+-+-", "++--", "+--+"}); }

// Five-qubit rows with rank 3: the first expands to zero, the second does not.
inline SignMatrix five_qubit_zero() { return SignMatrix::from_strings({"-++--", "+-+++", "++-++", "+++++"}); }
inline SignMatrix five_qubit_nonzero() { return SignMatrix::from_strings({"-++-+", "+-++-", "++-++", "+++++"}); }

// dims (2,2,4), subsets {1},{2},{3},{} each of codim 1: under-determined with P^k = 0.
inline pptkit::ProblemSpec underdetermined_zero_class() {
  pptkit::ProblemSpec s;
  s.dims = {2, 2, 4};
  for (auto sub : std::vector<std::vector<int>>{{1}, {2}, {3}, {}})
    s.constraints.push_back({pptkit::PartySet::from_indices(sub, 3), 1, std::nullopt});
  return s;
}

inline pptkit::ProblemSpec trivial_spec(std::vector<int> dims, int codim) {
  pptkit::ProblemSpec s;
  s.dims = std::move(dims);
  s.constraints.push_back({pptkit::PartySet(), codim, std::nullopt});
  return s;
}

inline pptkit::ComplexVector bell_even() {  // (|00> + |11>)/sqrt2
  pptkit::ComplexVector v = pptkit::ComplexVector::Zero(4);
  v[0] = v[3] = 1.0 / std::sqrt(2.0);
  return v;
}

inline pptkit::ComplexVector bell_odd() {  // (|01> - |10>)/sqrt2
  pptkit::ComplexVector v = pptkit::ComplexVector::Zero(4);
  v[1] = 1.0 / std::sqrt(2.0);
  v[2] = -1.0 / std::sqrt(2.0);
  return v;
}

inline pptkit::ComplexVector kron(const pptkit::ComplexVector& a, const pptkit::ComplexVector& b) {
  pptkit::ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

// Two qubits: psi_1 (x) conj(psi_2) orthogonal to bell_even and psi orthogonal to bell_odd.
inline std::vector<pptkit::SubspaceConstraint> two_qubit_empty_instance() {
  return {{pptkit::PartySet::from_indices({2}, 2), {bell_even()}}, {pptkit::PartySet(), {bell_odd()}}};
}

// Four qubits, complements spanned by products of the two Bell vectors.
inline std::vector<pptkit::SubspaceConstraint> four_qubit_empty_instance() {
  using pptkit::PartySet;
  const auto b1 = bell_even(), b2 = bell_odd();
  return {{PartySet::from_indices({2, 4}, 4), {kron(b1, b1)}},
          {PartySet::from_indices({2}, 4), {kron(b1, b2)}},
          {PartySet::from_indices({4}, 4), {kron(b2, b1)}},
          {PartySet(), {kron(b2, b2)}}};
}

inline SignMatrix random_sign_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::vector<std::int8_t> e(static_cast<std::size_t>(rows) * cols);
  for (auto& x : e) x = (rng() & 1U) ? -1 : 1;
  return SignMatrix(rows, cols, std::move(e));
}

inline pptkit::ComplexVector random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  pptkit::ComplexVector v(d);
  for (int a = 0; a < d; ++a) {
    const double re = g(rng);
    const double im = g(rng);
    v[a] = {re, im};
  }
  return v.normalized();
}

inline pptkit::ProductVector random_product(std::mt19937_64& rng, const std::vector<int>& dims) {
  pptkit::ProductVector p;
  for (int d : dims) p.factors.push_back(random_unit(rng, d));
  return p;
}

}  // namespace fixtures
