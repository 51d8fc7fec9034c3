#include "pptkit/permanent.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace pptkit {

IntMatrix::IntMatrix(int n, std::vector<std::int64_t> entries) : n_(n), a_(std::move(entries)) {
  if (n < 0 || a_.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("integer matrix entry count does not match its order");
  }
}

IntMatrix IntMatrix::from(const SignMatrix& m) {
  if (!m.square()) throw std::invalid_argument("integer matrix needs a square sign matrix");
  IntMatrix out(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("matrix order mismatch");
  IntMatrix out(a.n_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) out.a_[k] = a.a_[k] + b.a_[k];
  return out;
}

namespace {

using i128 = __int128;

BigInt to_big(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-out) : out;
}

void check_square(const SignMatrix& m, int max_order, const char* what) {
  if (!m.square()) throw std::invalid_argument(std::string(what) + " needs a square matrix");
  if (m.rows() > max_order) {
    throw UnsupportedError(std::string(what) + " supports order at most " + std::to_string(max_order));
  }
}

// Partial Ryser sum over Gray-code positions [lo, hi), position 0 (empty set) excluded.
// Each term is (-1)^|S| prod_i rowsum_i(S); the caller applies the global (-1)^n.
BigInt ryser_range(const SignMatrix& m, std::uint64_t lo, std::uint64_t hi) {
  const int n = m.rows();
  std::vector<std::int64_t> rowsum(n, 0);
  lo = std::max<std::uint64_t>(lo, 1);
  if (lo >= hi) return 0;

  std::uint64_t gray = lo ^ (lo >> 1);
  for (int j = 0; j < n; ++j)
    if ((gray >> j) & 1U)
      for (int i = 0; i < n; ++i) rowsum[i] += m(i, j);

  BigInt spill = 0;
  i128 acc = 0;
  auto add_term = [&] {
    i128 prod = 1;
    for (int i = 0; i < n && prod != 0; ++i) prod *= rowsum[i];
    if (std::popcount(gray) % 2) prod = -prod;
    i128 next;
    if (__builtin_add_overflow(acc, prod, &next)) {
      spill += to_big(acc);
      acc = prod;
    } else {
      acc = next;
    }
  };

  add_term();
  for (std::uint64_t k = lo + 1; k < hi; ++k) {
    const int j = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << j;
    const int delta = (gray & bit) ? -1 : 1;
    gray ^= bit;
    for (int i = 0; i < n; ++i) rowsum[i] += delta * m(i, j);
    add_term();
  }
  return spill + to_big(acc);
}

BigInt apply_global_sign(BigInt s, int n) { return n % 2 ? BigInt(-s) : s; }

}  // namespace

BigInt permanent(const SignMatrix& m) {
  check_square(m, kRyserMaxOrder, "permanent");
  const int n = m.rows();
  const std::uint64_t total = std::uint64_t{1} << n;
  if (n < 14) return apply_global_sign(ryser_range(m, 0, total), n);

  const int chunks = std::max(64, 4 * omp_get_max_threads());
  std::vector<BigInt> partial(chunks);
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < chunks; ++c) {
    const std::uint64_t lo = total / chunks * c;
    const std::uint64_t hi = c + 1 == chunks ? total : total / chunks * (c + 1);
    partial[c] = ryser_range(m, lo, hi);
  }
  return apply_global_sign(std::accumulate(partial.begin(), partial.end(), BigInt(0)), n);
}

namespace reference {

BigInt permanent_ryser(const SignMatrix& m) {
  check_square(m, kRyserMaxOrder, "permanent");
  const int n = m.rows();
  return apply_global_sign(ryser_range(m, 0, std::uint64_t{1} << n), n);
}

}  // namespace reference

BigInt permanent_naive(const IntMatrix& m) {
  const int n = m.order();
  if (n > kNaiveMaxOrder) throw std::invalid_argument("naive permanent supports order at most 9");
  if (n == 0) return 1;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt sum = 0;
  do {
    BigInt prod = 1;
    for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

BigInt permanent_naive(const SignMatrix& m) {
  if (!m.square()) throw std::invalid_argument("naive permanent needs a square matrix");
  if (m.rows() > kNaiveMaxOrder) throw std::invalid_argument("naive permanent supports order at most 9");
  const int n = m.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t sum = 0;
  do {
    int prod = 1;
    for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

BigInt permanent(const IntMatrix& m) {
  const int n = m.order();
  if (n == 0) return 1;
  if (n > kRyserMaxOrder) throw UnsupportedError("permanent supports order at most 24");
  std::vector<BigInt> rowsum(n, 0);
  BigInt sum = 0;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
    const int j = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << j;
    const bool removing = gray & bit;
    gray ^= bit;
    for (int i = 0; i < n; ++i) rowsum[i] += removing ? -m(i, j) : m(i, j);
    BigInt prod = 1;
    for (int i = 0; i < n; ++i) prod *= rowsum[i];
    if (std::popcount(gray) % 2) sum -= prod;
    else sum += prod;
  }
  return n % 2 ? BigInt(-sum) : sum;
}

namespace {

IntMatrix submatrix(const IntMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  IntMatrix out(static_cast<int>(rows.size()));
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) out(static_cast<int>(a), static_cast<int>(b)) = m(rows[a], cols[b]);
  return out;
}

}  // namespace

BigInt permanent_addition(const IntMatrix& a, const IntMatrix& b) {
  if (a.order() != b.order()) throw std::invalid_argument("addition formula needs matrices of equal order");
  const int n = a.order();
  if (n > 16) throw UnsupportedError("addition formula supports order at most 16");
  BigInt total = 0;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    std::vector<int> in_s, out_s;
    for (int i = 0; i < n; ++i) ((s >> i) & 1U ? in_s : out_s).push_back(i);
    for (std::uint32_t t = 0; t < (1U << n); ++t) {
      if (std::popcount(t) != std::popcount(s)) continue;
      std::vector<int> in_t, out_t;
      for (int j = 0; j < n; ++j) ((t >> j) & 1U ? in_t : out_t).push_back(j);
      total += permanent(submatrix(a, in_s, in_t)) * permanent(submatrix(b, out_s, out_t));
    }
  }
  return total;
}

std::int64_t permanent_small(const std::int8_t* e, int n) {
  std::int64_t rowsum[kSmallPermanentMaxOrder] = {};
  std::int64_t sum = 0;
  std::uint32_t gray = 0;
  for (std::uint32_t k = 1; k < (1U << n); ++k) {
    const int j = std::countr_zero(k);
    const std::uint32_t bit = 1U << j;
    const int delta = (gray & bit) ? -1 : 1;
    gray ^= bit;
    std::int64_t prod = 1;
    for (int i = 0; i < n; ++i) {
      rowsum[i] += delta * e[i * n + j];
      prod *= rowsum[i];
    }
    sum += (std::popcount(gray) & 1) ? -prod : prod;
  }
  return n % 2 ? -sum : sum;
}

}  // namespace pptkit
