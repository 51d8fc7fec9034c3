#include "pptkit/types.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace pptkit {

PartySet PartySet::from_indices(const std::vector<int>& one_based, int n) {
  if (n < 1 || n > kMaxParties) {
    throw std::invalid_argument("party count out of range: " + std::to_string(n));
  }
  std::uint64_t bits = 0;
  for (int j : one_based) {
    if (j < 1 || j > n) {
      throw std::invalid_argument("party index " + std::to_string(j) + " outside [1, " +
                                  std::to_string(n) + "]");
    }
    bits |= std::uint64_t{1} << (j - 1);
  }
  return PartySet(bits);
}

PartySet PartySet::full(int n) {
  return PartySet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

int PartySet::size() const { return std::popcount(bits_); }

std::vector<int> PartySet::indices() const {
  std::vector<int> out;
  for (int j = 0; j < 64; ++j) {
    if (contains(j)) out.push_back(j + 1);
  }
  return out;
}

std::string PartySet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int j : indices()) {
    if (!first) s += ",";
    s += std::to_string(j);
    first = false;
  }
  return s + "}";
}

bool PartySet::lex_less(PartySet a, PartySet b) {
  const auto ia = a.indices();
  const auto ib = b.indices();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

std::uint64_t total_dimension(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be non-empty");
  std::uint64_t d = 1;
  for (int dj : dims) {
    if (dj < 1) throw std::invalid_argument("local dimensions must be positive");
    if (d > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(dj)) {
      throw UnsupportedError("total dimension overflows 64 bits");
    }
    d *= static_cast<std::uint64_t>(dj);
  }
  return d;
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace pptkit
