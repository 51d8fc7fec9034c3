#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace pptkit {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Thrown when a request is well formed but outside the supported size range.
class UnsupportedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A subset of the parties {1, ..., n}. Party j (1-based) is bit j-1.
class PartySet {
 public:
  static constexpr int kMaxParties = 63;

  PartySet() = default;
  explicit PartySet(std::uint64_t bits) : bits_(bits) {}

  /// Builds a set from 1-based party indices; throws std::invalid_argument
  /// when an index falls outside [1, n].
  static PartySet from_indices(const std::vector<int>& one_based, int n);
  static PartySet full(int n);

  std::uint64_t bits() const { return bits_; }
  /// `party` is 0-based.
  bool contains(int party) const { return (bits_ >> party) & 1U; }
  bool empty() const { return bits_ == 0; }
  int size() const;

  PartySet complement(int n) const { return PartySet(full(n).bits_ & ~bits_); }
  PartySet symmetric_difference(PartySet other) const { return PartySet(bits_ ^ other.bits_); }

  /// Sorted 1-based indices.
  std::vector<int> indices() const;
  /// "{1,3}" style, "{}" for the empty set.
  std::string to_string() const;

  friend bool operator==(PartySet, PartySet) = default;

  /// Lexicographic order of the sorted 1-based index lists ({} < {1} < {1,2} < {2}).
  static bool lex_less(PartySet a, PartySet b);

 private:
  std::uint64_t bits_ = 0;
};

/// Product of the local dimensions. Throws std::invalid_argument on an empty
/// list or a non-positive entry and UnsupportedError on 64-bit overflow.
std::uint64_t total_dimension(const std::vector<int>& dims);

/// n! as an exact integer.
BigInt factorial(unsigned n);

}  // namespace pptkit
