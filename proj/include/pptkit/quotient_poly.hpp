#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pptkit/sign_matrix.hpp"
#include "pptkit/types.hpp"

namespace pptkit {

/// Exponents (m_1, ..., m_n) of a monomial alpha_1^m_1 ... alpha_n^m_n.
using ExponentVector = std::vector<int>;

/// An element of Z[alpha_1, ..., alpha_n] / (alpha_1^d_1, ..., alpha_n^d_n).
///
/// Stored sparsely: mixed-radix monomial code -> nonzero coefficient. Products
/// drop a term as soon as any exponent reaches its bound, so the support never
/// exceeds prod d_j monomials.
class TruncatedPolynomial {
 public:
  /// The zero polynomial. Throws std::invalid_argument on empty or
  /// non-positive dims.
  explicit TruncatedPolynomial(std::vector<int> dims);

  static TruncatedPolynomial constant(std::vector<int> dims, const BigInt& c);
  /// sum_j coeffs[j] * alpha_j.
  static TruncatedPolynomial linear_form(std::vector<int> dims, std::span<const int> coeffs);

  const std::vector<int>& dims() const { return dims_; }
  int variables() const { return static_cast<int>(dims_.size()); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// 0 for exponent vectors outside the bounds or absent from the support.
  /// Throws std::invalid_argument if m has the wrong length.
  BigInt coeff(std::span<const int> m) const;
  /// Coefficient of prod_j alpha_j^(d_j - 1).
  BigInt top_coefficient() const;

  /// Terms in increasing monomial-code order.
  std::vector<std::pair<ExponentVector, BigInt>> terms() const;

  TruncatedPolynomial pow(unsigned e) const;

  friend TruncatedPolynomial operator+(const TruncatedPolynomial& a, const TruncatedPolynomial& b);
  friend TruncatedPolynomial operator*(const TruncatedPolynomial& a, const TruncatedPolynomial& b);
  friend bool operator==(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
    return a.dims_ == b.dims_ && a.terms_ == b.terms_;
  }

 private:
  std::uint64_t encode(std::span<const int> m) const;
  ExponentVector decode(std::uint64_t code) const;
  void require_same_ring(const TruncatedPolynomial& other) const;

  std::vector<int> dims_;
  std::vector<std::uint64_t> stride_;
  std::map<std::uint64_t, BigInt> terms_;
};

/// prod_i (sigma_i . alpha)^k_i reduced in the truncated ring.
/// Throws std::invalid_argument when sigma, k and dims disagree in size or
/// a k_i is negative.
TruncatedPolynomial expand_pk(const SignMatrix& sigma, std::span<const int> k, std::span<const int> dims);

/// Coefficient A^k_m by direct multinomial expansion, independent of the ring
/// arithmetic: sum over all splittings m_j = sum_i k_ij of
/// prod_i multinomial(k_i; k_i1..k_in) * prod_j sigma_ij^k_ij.
/// No exponent bounds are applied. Returns 0 when some m_j is negative.
/// Throws std::invalid_argument if |m| != |k| or the sizes disagree.
BigInt coeff_direct(const SignMatrix& sigma, std::span<const int> k, std::span<const int> m);

}  // namespace pptkit
