#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pptkit/sign_matrix.hpp"

namespace pptkit {

enum class SweepMode {
  /// All 2^(n^2) matrices; complete. n <= 4.
  Exhaustive,
  /// First row and column fixed to +1, the other (n-1)^2 entries swept.
  /// Every class has such a representative, so this is complete for existence
  /// of vanishing permanents; it is not meant for counting classes. n <= 6.
  NormalizedSearch,
};

struct ClassificationResult {
  /// Sorted canonical forms of every vanishing-permanent matrix seen.
  std::vector<SignMatrix> classes;
  std::uint64_t examined = 0;
  std::uint64_t vanishing = 0;
  /// Vanishing matrices with an odd number of -1 entries.
  std::uint64_t vanishing_odd_mu = 0;
  bool complete = true;  // false when the budget cut the sweep short
};

inline constexpr int kExhaustiveMaxOrder = 4;
inline constexpr int kNormalizedMaxOrder = 6;

/// Classifies n x n +/-1 matrices with zero permanent up to equivalence.
/// `budget` caps the number of matrices examined (0 = no cap). The pattern
/// range is split across OpenMP threads; each thread keeps its own set of
/// canonical forms and the sets are merged by union.
/// Throws UnsupportedError outside the mode's size limit, std::invalid_argument for n < 1.
ClassificationResult classify_vanishing(int n, SweepMode mode, std::uint64_t budget = 0);

/// Sweep statistics grouped by minus count: mu -> (matrices, vanishing).
std::map<int, std::pair<std::uint64_t, std::uint64_t>> vanishing_by_minus_count(int n);

namespace reference {
/// Single-threaded sweep using the BigInt Ryser kernel.
ClassificationResult classify_vanishing(int n, SweepMode mode, std::uint64_t budget = 0);
}  // namespace reference

}  // namespace pptkit
