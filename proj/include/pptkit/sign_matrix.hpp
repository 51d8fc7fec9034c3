#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pptkit/types.hpp"

namespace pptkit {

/// An r x n matrix whose entries are all +1 or -1, stored row-major.
///
/// Row i of an associated matrix carries -1 exactly in the columns of the
/// parties conjugated by constraint i. The default ordering compares shape
/// first and then the row-major entry sequence with -1 < +1; canonical forms
/// are minimal under this order.
class SignMatrix {
 public:
  /// Throws std::invalid_argument if a dimension is < 1, the entry count is
  /// wrong, or an entry is not +1/-1.
  SignMatrix(int rows, int cols, std::vector<std::int8_t> entries);

  static SignMatrix ones(int rows, int cols);
  /// Rows written as strings of '+' and '-', e.g. {"-++", "+-+"}.
  static SignMatrix from_strings(const std::vector<std::string>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  int operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  std::span<const std::int8_t> entries() const { return entries_; }
  std::span<const std::int8_t> row(int i) const {
    return std::span<const std::int8_t>(entries_).subspan(static_cast<std::size_t>(i) * cols_, cols_);
  }

  SignMatrix transposed() const;
  SignMatrix with_row_negated(int i) const;
  SignMatrix with_col_negated(int j) const;
  SignMatrix with_rows_swapped(int a, int b) const;
  SignMatrix with_cols_swapped(int a, int b) const;

  /// Number of -1 entries.
  int minus_count() const;

  /// One line per row, '+'/'-' characters, rows separated by '\n', no trailing newline.
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const SignMatrix&, const SignMatrix&) = default;
  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<std::int8_t> entries_;
};

/// sigma_{i,j} = -1 iff party j is in subsets[i].
SignMatrix associated_matrix(const std::vector<PartySet>& subsets, int n);

/// Row/column swap or negation. Indices are 0-based.
struct EquivalenceOp {
  enum class Kind { SwapRows, SwapCols, NegateRow, NegateCol };
  Kind kind;
  int first;
  int second = 0;

  static EquivalenceOp swap_rows(int a, int b) { return {Kind::SwapRows, a, b}; }
  static EquivalenceOp swap_cols(int a, int b) { return {Kind::SwapCols, a, b}; }
  static EquivalenceOp negate_row(int i) { return {Kind::NegateRow, i, 0}; }
  static EquivalenceOp negate_col(int j) { return {Kind::NegateCol, j, 0}; }
};

/// Throws std::out_of_range for an index outside the matrix.
SignMatrix apply_op(const SignMatrix& m, const EquivalenceOp& op);

struct InvariantProfile {
  int mu = 0;
  std::vector<int> row_minus;
  std::vector<int> col_minus;
  int pi_r = 0;  // #rows with even minus count - #rows with odd minus count
  int pi_c = 0;
  int rank = 0;
  std::optional<BigInt> abs_det;  // square matrices only
  std::optional<BigInt> abs_per;  // square matrices only
  bool row_gram_is_scalar = false;  // M * M^T == cols * I
};

/// Sound but not complete: equal profiles do not imply equivalence.
InvariantProfile invariants(const SignMatrix& m);

/// Exact rank over the rationals (fraction-free Bareiss elimination).
int exact_rank(const SignMatrix& m);
/// Exact determinant; throws std::invalid_argument if not square.
BigInt exact_determinant(const SignMatrix& m);

/// Largest row count accepted by canonical_form.
inline constexpr int kCanonicalMaxRows = 7;
/// Largest column count accepted by canonical_form.
inline constexpr int kCanonicalMaxCols = 32;

/// Orbit-minimal representative under row/column swaps and negations.
///
/// For each signed row permutation the column part is solved exactly: the
/// first row can always be made all -1, which fixes every column sign, and
/// sorting the columns then minimizes the remaining rows. Throws
/// UnsupportedError beyond kCanonicalMaxRows x kCanonicalMaxCols.
SignMatrix canonical_form(const SignMatrix& m);

/// Transpose is not one of the allowed operations. Different shapes are
/// never equivalent.
bool equivalent(const SignMatrix& a, const SignMatrix& b);

/// The minus-sign reduction for square matrices of size n >= 3.
///
/// When mu(M) >= m*n - (m-1) for n = 2m+1, or mu(M) >= m*n - m for n = 2m,
/// returns an equivalent matrix with strictly fewer -1 entries, built by
/// negating an overweight line or by the row/column pairing over the rows
/// and columns carrying exactly m minus signs. Returns nullopt below the
/// threshold. Throws std::invalid_argument for non-square input or n < 3.
std::optional<SignMatrix> reduce_minus(const SignMatrix& m);

/// Minus-count threshold at or above which reduce_minus applies.
int reduce_minus_threshold(int n);

namespace reference {
/// Full orbit enumeration (r! n! 2^(r+n) elements). Test oracle for canonical_form.
SignMatrix canonical_form_by_orbit(const SignMatrix& m);
}  // namespace reference

}  // namespace pptkit
