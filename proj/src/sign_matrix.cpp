#include "pptkit/sign_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pptkit/permanent.hpp"

namespace pptkit {

SignMatrix::SignMatrix(int rows, int cols, std::vector<std::int8_t> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("sign matrix needs at least one row and column");
  if (entries_.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("sign matrix entry count does not match its shape");
  }
  for (auto e : entries_) {
    if (e != 1 && e != -1) throw std::invalid_argument("sign matrix entries must be +1 or -1");
  }
}

SignMatrix SignMatrix::ones(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("sign matrix needs at least one row and column");
  return SignMatrix(rows, cols, std::vector<std::int8_t>(static_cast<std::size_t>(rows) * cols, 1));
}

SignMatrix SignMatrix::from_strings(const std::vector<std::string>& rows) {
  if (rows.empty()) throw std::invalid_argument("sign matrix needs at least one row");
  const auto cols = rows.front().size();
  std::vector<std::int8_t> e;
  e.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("ragged sign matrix rows");
    for (char c : r) {
      if (c == '+') e.push_back(1);
      else if (c == '-') e.push_back(-1);
      else throw std::invalid_argument(std::string("unexpected character '") + c + "' in sign matrix");
    }
  }
  return SignMatrix(static_cast<int>(rows.size()), static_cast<int>(cols), std::move(e));
}

SignMatrix SignMatrix::transposed() const {
  std::vector<std::int8_t> t(entries_.size());
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t[static_cast<std::size_t>(j) * rows_ + i] = (*this)(i, j);
  return SignMatrix(cols_, rows_, std::move(t));
}

SignMatrix SignMatrix::with_row_negated(int i) const {
  if (i < 0 || i >= rows_) throw std::out_of_range("row index out of range");
  auto e = entries_;
  for (int j = 0; j < cols_; ++j) e[static_cast<std::size_t>(i) * cols_ + j] *= -1;
  return SignMatrix(rows_, cols_, std::move(e));
}

SignMatrix SignMatrix::with_col_negated(int j) const {
  if (j < 0 || j >= cols_) throw std::out_of_range("column index out of range");
  auto e = entries_;
  for (int i = 0; i < rows_; ++i) e[static_cast<std::size_t>(i) * cols_ + j] *= -1;
  return SignMatrix(rows_, cols_, std::move(e));
}

SignMatrix SignMatrix::with_rows_swapped(int a, int b) const {
  if (a < 0 || a >= rows_ || b < 0 || b >= rows_) throw std::out_of_range("row index out of range");
  auto e = entries_;
  for (int j = 0; j < cols_; ++j)
    std::swap(e[static_cast<std::size_t>(a) * cols_ + j], e[static_cast<std::size_t>(b) * cols_ + j]);
  return SignMatrix(rows_, cols_, std::move(e));
}

SignMatrix SignMatrix::with_cols_swapped(int a, int b) const {
  if (a < 0 || a >= cols_ || b < 0 || b >= cols_) throw std::out_of_range("column index out of range");
  auto e = entries_;
  for (int i = 0; i < rows_; ++i)
    std::swap(e[static_cast<std::size_t>(i) * cols_ + a], e[static_cast<std::size_t>(i) * cols_ + b]);
  return SignMatrix(rows_, cols_, std::move(e));
}

int SignMatrix::minus_count() const {
  return static_cast<int>(std::count(entries_.begin(), entries_.end(), std::int8_t{-1}));
}

std::string SignMatrix::to_string() const {
  std::string s;
  s.reserve(entries_.size() + rows_);
  for (int i = 0; i < rows_; ++i) {
    if (i) s += '\n';
    for (int j = 0; j < cols_; ++j) s += (*this)(i, j) > 0 ? '+' : '-';
  }
  return s;
}

SignMatrix associated_matrix(const std::vector<PartySet>& subsets, int n) {
  if (subsets.empty()) throw std::invalid_argument("associated matrix needs at least one subset");
  if (n < 1 || n > PartySet::kMaxParties) throw std::invalid_argument("party count out of range");
  std::vector<std::int8_t> e;
  e.reserve(subsets.size() * n);
  for (const auto& s : subsets) {
    if (s.bits() & ~PartySet::full(n).bits()) throw std::invalid_argument("subset index out of range");
    for (int j = 0; j < n; ++j) e.push_back(s.contains(j) ? -1 : 1);
  }
  return SignMatrix(static_cast<int>(subsets.size()), n, std::move(e));
}

SignMatrix apply_op(const SignMatrix& m, const EquivalenceOp& op) {
  switch (op.kind) {
    case EquivalenceOp::Kind::SwapRows: return m.with_rows_swapped(op.first, op.second);
    case EquivalenceOp::Kind::SwapCols: return m.with_cols_swapped(op.first, op.second);
    case EquivalenceOp::Kind::NegateRow: return m.with_row_negated(op.first);
    case EquivalenceOp::Kind::NegateCol: return m.with_col_negated(op.first);
  }
  throw std::invalid_argument("unknown equivalence operation");
}

namespace {

struct Echelon {
  int rank = 0;
  BigInt last_pivot = 1;
  int sign = 1;
};

// Fraction-free Gaussian elimination; every intermediate entry is a minor.
Echelon bareiss(const SignMatrix& m) {
  const int r = m.rows(), n = m.cols();
  std::vector<std::vector<BigInt>> a(r, std::vector<BigInt>(n));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);

  Echelon out;
  BigInt prev = 1;
  for (int col = 0; col < n && out.rank < r; ++col) {
    int p = out.rank;
    while (p < r && a[p][col] == 0) ++p;
    if (p == r) continue;
    if (p != out.rank) {
      std::swap(a[p], a[out.rank]);
      out.sign = -out.sign;
    }
    const int k = out.rank;
    for (int i = k + 1; i < r; ++i) {
      for (int j = col + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][col] - a[i][col] * a[k][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[k][col];
    ++out.rank;
  }
  out.last_pivot = prev;
  return out;
}

}  // namespace

int exact_rank(const SignMatrix& m) { return bareiss(m).rank; }

BigInt exact_determinant(const SignMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant needs a square matrix");
  const auto e = bareiss(m);
  if (e.rank < m.rows()) return 0;
  return e.sign * e.last_pivot;
}

InvariantProfile invariants(const SignMatrix& m) {
  InvariantProfile p;
  p.row_minus.assign(m.rows(), 0);
  p.col_minus.assign(m.cols(), 0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) {
        ++p.row_minus[i];
        ++p.col_minus[j];
        ++p.mu;
      }
  auto parity_balance = [](const std::vector<int>& counts) {
    int even = 0;
    for (int c : counts) even += (c % 2 == 0);
    return even - (static_cast<int>(counts.size()) - even);
  };
  p.pi_r = parity_balance(p.row_minus);
  p.pi_c = parity_balance(p.col_minus);
  p.rank = exact_rank(m);
  if (m.square()) {
    p.abs_det = abs(exact_determinant(m));
    p.abs_per = abs(permanent(m));
  }
  p.row_gram_is_scalar = true;
  for (int a = 0; a < m.rows() && p.row_gram_is_scalar; ++a)
    for (int b = 0; b < m.rows(); ++b) {
      int dot = 0;
      for (int j = 0; j < m.cols(); ++j) dot += m(a, j) * m(b, j);
      if (dot != (a == b ? m.cols() : 0)) {
        p.row_gram_is_scalar = false;
        break;
      }
    }
  return p;
}

SignMatrix canonical_form(const SignMatrix& m) {
  const int r = m.rows(), n = m.cols();
  if (r > kCanonicalMaxRows || n > kCanonicalMaxCols) {
    throw UnsupportedError("canonical form supports at most " + std::to_string(kCanonicalMaxRows) + " rows and " +
                           std::to_string(kCanonicalMaxCols) + " columns");
  }
  // Rows are encoded as bit strings, column 0 most significant, bit set for +1,
  // so integer comparison matches the entry order -1 < +1.
  std::vector<int> perm(r);
  std::vector<std::uint64_t> best, cand(r);
  std::vector<std::uint64_t> col_keys(n);
  std::vector<std::int8_t> row_sign(r);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::uint32_t neg = 0; neg < (1U << r); ++neg) {
      for (int k = 0; k < r; ++k) row_sign[k] = (neg >> k) & 1U ? -1 : 1;
      // Column j is negated iff that makes its entry in the first row -1.
      for (int j = 0; j < n; ++j) {
        const int col_sign = -row_sign[0] * m(perm[0], j);
        std::uint64_t key = 0;
        for (int k = 1; k < r; ++k) key = (key << 1) | (row_sign[k] * m(perm[k], j) * col_sign > 0 ? 1U : 0U);
        col_keys[j] = key;
      }
      std::sort(col_keys.begin(), col_keys.end());
      cand[0] = 0;
      for (int k = 1; k < r; ++k) {
        std::uint64_t row_bits = 0;
        const int shift = r - 1 - k;
        for (int j = 0; j < n; ++j) row_bits = (row_bits << 1) | ((col_keys[j] >> shift) & 1U);
        cand[k] = row_bits;
      }
      if (best.empty() || cand < best) best = cand;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::int8_t> e;
  e.reserve(static_cast<std::size_t>(r) * n);
  for (int k = 0; k < r; ++k)
    for (int j = 0; j < n; ++j) e.push_back((best[k] >> (n - 1 - j)) & 1U ? 1 : -1);
  return SignMatrix(r, n, std::move(e));
}

bool equivalent(const SignMatrix& a, const SignMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return canonical_form(a) == canonical_form(b);
}

int reduce_minus_threshold(int n) {
  const int m = n / 2;
  return n % 2 ? m * n - (m - 1) : m * n - m;
}

std::optional<SignMatrix> reduce_minus(const SignMatrix& input) {
  if (!input.square()) throw std::invalid_argument("reduce_minus needs a square matrix");
  const int n = input.rows();
  if (n < 3) throw std::invalid_argument("reduce_minus needs n >= 3");
  const int mu = input.minus_count();
  if (mu < reduce_minus_threshold(n)) return std::nullopt;

  const int half = n / 2;
  auto profile = invariants(input);
  auto checked = [&](SignMatrix out) -> std::optional<SignMatrix> {
    if (out.minus_count() >= mu) throw std::logic_error("minus reduction did not decrease the minus count");
    return out;
  };

  for (int j = 0; j < n; ++j)
    if (2 * profile.col_minus[j] > n) return checked(input.with_col_negated(j));
  for (int i = 0; i < n; ++i)
    if (2 * profile.row_minus[i] > n) return checked(input.with_row_negated(i));

  std::vector<int> rows_at_half, cols_at_half;
  for (int i = 0; i < n; ++i)
    if (profile.row_minus[i] == half) rows_at_half.push_back(i);
  for (int j = 0; j < n; ++j)
    if (profile.col_minus[j] == half) cols_at_half.push_back(j);

  auto plus_columns_in_row = [&](int i) {
    std::vector<int> out;
    for (int j : cols_at_half)
      if (input(i, j) > 0) out.push_back(j);
    return out;
  };

  if (n % 2 == 1) {
    for (int i : rows_at_half) {
      const auto js = plus_columns_in_row(i);
      if (js.size() >= 2) return checked(input.with_row_negated(i).with_col_negated(js[0]).with_col_negated(js[1]));
    }
  } else {
    // Negating a row of weight n/2 leaves mu unchanged; the flipped column then
    // carries n/2 + 1 minus signs and its negation drops mu by two.
    for (int i : rows_at_half) {
      const auto js = plus_columns_in_row(i);
      if (!js.empty()) return checked(input.with_row_negated(i).with_col_negated(js[0]));
    }
    SignMatrix out = input;
    for (int i : rows_at_half) out = out.with_row_negated(i);
    const auto after = invariants(out);
    for (int j = 0; j < n; ++j)
      if (2 * after.col_minus[j] > n) return checked(out.with_col_negated(j));
  }
  throw std::logic_error("minus reduction found no applicable move above the threshold");
}

namespace reference {

SignMatrix canonical_form_by_orbit(const SignMatrix& m) {
  const int r = m.rows(), n = m.cols();
  std::vector<int> rp(r), cp(n);
  std::optional<SignMatrix> best;
  std::vector<std::int8_t> e(static_cast<std::size_t>(r) * n);
  std::iota(rp.begin(), rp.end(), 0);
  do {
    std::iota(cp.begin(), cp.end(), 0);
    do {
      for (std::uint32_t rn = 0; rn < (1U << r); ++rn)
        for (std::uint32_t cn = 0; cn < (1U << n); ++cn) {
          for (int i = 0; i < r; ++i)
            for (int j = 0; j < n; ++j) {
              int v = m(rp[i], cp[j]);
              if ((rn >> i) & 1U) v = -v;
              if ((cn >> j) & 1U) v = -v;
              e[static_cast<std::size_t>(i) * n + j] = static_cast<std::int8_t>(v);
            }
          SignMatrix cand(r, n, e);
          if (!best || cand < *best) best = std::move(cand);
        }
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return *best;
}

}  // namespace reference

}  // namespace pptkit
