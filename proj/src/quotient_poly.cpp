#include "pptkit/quotient_poly.hpp"

#include <numeric>
#include <stdexcept>

namespace pptkit {

TruncatedPolynomial::TruncatedPolynomial(std::vector<int> dims) : dims_(std::move(dims)) {
  total_dimension(dims_);  // validates and rejects overflow of the monomial code
  stride_.assign(dims_.size(), 1);
  for (int j = static_cast<int>(dims_.size()) - 2; j >= 0; --j) stride_[j] = stride_[j + 1] * dims_[j + 1];
}

TruncatedPolynomial TruncatedPolynomial::constant(std::vector<int> dims, const BigInt& c) {
  TruncatedPolynomial p(std::move(dims));
  if (c != 0) p.terms_.emplace(0, c);
  return p;
}

TruncatedPolynomial TruncatedPolynomial::linear_form(std::vector<int> dims, std::span<const int> coeffs) {
  TruncatedPolynomial p(std::move(dims));
  if (coeffs.size() != p.dims_.size()) throw std::invalid_argument("linear form length does not match dims");
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] != 0 && p.dims_[j] > 1) p.terms_.emplace(p.stride_[j], coeffs[j]);
  }
  return p;
}

std::uint64_t TruncatedPolynomial::encode(std::span<const int> m) const {
  std::uint64_t code = 0;
  for (std::size_t j = 0; j < m.size(); ++j) code += static_cast<std::uint64_t>(m[j]) * stride_[j];
  return code;
}

ExponentVector TruncatedPolynomial::decode(std::uint64_t code) const {
  ExponentVector m(dims_.size());
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    m[j] = static_cast<int>(code / stride_[j]);
    code %= stride_[j];
  }
  return m;
}

void TruncatedPolynomial::require_same_ring(const TruncatedPolynomial& other) const {
  if (dims_ != other.dims_) throw std::invalid_argument("polynomials live in different truncated rings");
}

BigInt TruncatedPolynomial::coeff(std::span<const int> m) const {
  if (m.size() != dims_.size()) throw std::invalid_argument("exponent vector length does not match dims");
  for (std::size_t j = 0; j < m.size(); ++j)
    if (m[j] < 0 || m[j] >= dims_[j]) return 0;
  const auto it = terms_.find(encode(m));
  return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt TruncatedPolynomial::top_coefficient() const {
  ExponentVector top(dims_.size());
  for (std::size_t j = 0; j < dims_.size(); ++j) top[j] = dims_[j] - 1;
  return coeff(top);
}

std::vector<std::pair<ExponentVector, BigInt>> TruncatedPolynomial::terms() const {
  std::vector<std::pair<ExponentVector, BigInt>> out;
  out.reserve(terms_.size());
  for (const auto& [code, c] : terms_) out.emplace_back(decode(code), c);
  return out;
}

TruncatedPolynomial operator+(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
  a.require_same_ring(b);
  TruncatedPolynomial out = a;
  for (const auto& [code, c] : b.terms_) {
    auto [it, inserted] = out.terms_.try_emplace(code, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

TruncatedPolynomial operator*(const TruncatedPolynomial& a, const TruncatedPolynomial& b) {
  a.require_same_ring(b);
  const std::size_t n = a.dims_.size();
  std::vector<ExponentVector> bexp;
  bexp.reserve(b.terms_.size());
  for (const auto& t : b.terms_) bexp.push_back(b.decode(t.first));

  TruncatedPolynomial out(a.dims_);
  for (const auto& [ca, va] : a.terms_) {
    const auto ea = a.decode(ca);
    std::size_t idx = 0;
    for (const auto& [cb, vb] : b.terms_) {
      const auto& eb = bexp[idx++];
      bool survives = true;
      for (std::size_t j = 0; j < n && survives; ++j) survives = ea[j] + eb[j] < a.dims_[j];
      if (!survives) continue;
      BigInt prod = va * vb;
      auto [it, inserted] = out.terms_.try_emplace(ca + cb, prod);
      if (!inserted) it->second += prod;
    }
  }
  std::erase_if(out.terms_, [](const auto& t) { return t.second == 0; });
  return out;
}

TruncatedPolynomial TruncatedPolynomial::pow(unsigned e) const {
  TruncatedPolynomial result = constant(dims_, 1);
  TruncatedPolynomial base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

TruncatedPolynomial expand_pk(const SignMatrix& sigma, std::span<const int> k, std::span<const int> dims) {
  if (static_cast<int>(k.size()) != sigma.rows()) throw std::invalid_argument("k length must equal the row count");
  if (static_cast<int>(dims.size()) != sigma.cols()) {
    throw std::invalid_argument("dims length must equal the column count");
  }
  std::vector<int> d(dims.begin(), dims.end());
  auto product = TruncatedPolynomial::constant(d, 1);
  std::vector<int> row(sigma.cols());
  for (int i = 0; i < sigma.rows() && !product.is_zero(); ++i) {
    if (k[i] < 0) throw std::invalid_argument("codimensions must be non-negative");
    if (k[i] == 0) continue;
    for (int j = 0; j < sigma.cols(); ++j) row[j] = sigma(i, j);
    product = product * TruncatedPolynomial::linear_form(d, row).pow(static_cast<unsigned>(k[i]));
  }
  return product;
}

namespace {

struct DirectExpansion {
  const SignMatrix& sigma;
  std::span<const int> k;
  std::vector<int> remaining;  // m_j still to be distributed
  std::vector<BigInt> fact;

  // Distributes k[i] over columns j.. of row i, then moves on to row i + 1.
  BigInt rows_from(int i) {
    if (i == sigma.rows()) {
      for (int r : remaining)
        if (r != 0) return 0;
      return 1;
    }
    return split(i, 0, k[i], fact[k[i]], 1);
  }

  BigInt split(int i, int j, int left, const BigInt& multinomial, int sign) {
    const int n = sigma.cols();
    if (j == n - 1) {
      if (left > remaining[j]) return 0;
      remaining[j] -= left;
      const int s = (sigma(i, j) < 0 && left % 2) ? -sign : sign;
      BigInt term = multinomial / fact[left] * s * rows_from(i + 1);
      remaining[j] += left;
      return term;
    }
    BigInt total = 0;
    const int cap = std::min(left, remaining[j]);
    for (int c = 0; c <= cap; ++c) {
      remaining[j] -= c;
      const int s = (sigma(i, j) < 0 && c % 2) ? -sign : sign;
      total += split(i, j + 1, left - c, multinomial / fact[c], s);
      remaining[j] += c;
    }
    return total;
  }
};

}  // namespace

BigInt coeff_direct(const SignMatrix& sigma, std::span<const int> k, std::span<const int> m) {
  if (static_cast<int>(k.size()) != sigma.rows() || static_cast<int>(m.size()) != sigma.cols()) {
    throw std::invalid_argument("coeff_direct: size mismatch between sigma, k and m");
  }
  const long long sk = std::accumulate(k.begin(), k.end(), 0LL);
  const long long sm = std::accumulate(m.begin(), m.end(), 0LL);
  if (sk != sm) throw std::invalid_argument("coeff_direct needs |m| == |k|");
  for (int v : k)
    if (v < 0) throw std::invalid_argument("codimensions must be non-negative");
  for (int v : m)
    if (v < 0) return 0;

  DirectExpansion ex{sigma, k, std::vector<int>(m.begin(), m.end()), {}};
  ex.fact.reserve(sk + 1);
  for (long long x = 0; x <= sk; ++x) ex.fact.push_back(factorial(static_cast<unsigned>(x)));
  return ex.rows_from(0);
}

}  // namespace pptkit
