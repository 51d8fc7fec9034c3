#pragma once

#include <cstdint>
#include <vector>

#include "pptkit/sign_matrix.hpp"
#include "pptkit/types.hpp"

namespace pptkit {

/// Largest order accepted by the Ryser permanent.
inline constexpr int kRyserMaxOrder = 24;
/// Largest order accepted by the permutation-sum permanent.
inline constexpr int kNaiveMaxOrder = 9;

/// Square integer matrix used by the addition-formula check.
class IntMatrix {
 public:
  explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}
  IntMatrix(int n, std::vector<std::int64_t> entries);
  static IntMatrix from(const SignMatrix& m);

  int order() const { return n_; }
  std::int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  std::int64_t& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);

 private:
  int n_;
  std::vector<std::int64_t> a_;
};

/// Ryser inclusion-exclusion with Gray-code column subsets; the subset range
/// is split across OpenMP threads. Exact for n <= kRyserMaxOrder.
/// Throws std::invalid_argument if not square, UnsupportedError if too large.
BigInt permanent(const SignMatrix& m);

/// Sum over all n! permutations. Throws std::invalid_argument if not square
/// or n > kNaiveMaxOrder.
BigInt permanent_naive(const SignMatrix& m);
BigInt permanent_naive(const IntMatrix& m);

/// Ryser on a general integer matrix, serial, BigInt accumulation.
BigInt permanent(const IntMatrix& m);

/// Right-hand side of per(A + B) = sum_i sum_{|S|=|T|=i} per(A[S|T]) per(B(S|T)),
/// where A[S|T] keeps rows S and columns T and B(S|T) deletes them; empty
/// submatrices have permanent 1. Throws std::invalid_argument on a shape mismatch.
BigInt permanent_addition(const IntMatrix& a, const IntMatrix& b);

/// Order of the int64 fast path used by the classification sweeps.
inline constexpr int kSmallPermanentMaxOrder = 12;

/// Ryser in 64-bit arithmetic for a row-major +/-1 array of order n <= 12.
std::int64_t permanent_small(const std::int8_t* entries, int n);

namespace reference {
/// Single-threaded Ryser; the parallel kernel must agree with it bit for bit.
BigInt permanent_ryser(const SignMatrix& m);
}  // namespace reference

}  // namespace pptkit
