#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pptkit/sign_matrix.hpp"
#include "pptkit/types.hpp"

namespace pptkit {

/// One membership condition psi^{Gamma(subset)} in D, with k = dim D^perp.
struct Constraint {
  PartySet subset;
  int codim = 0;
  /// Orthonormal basis of D^perp in C^{prod d_j}, when the instance is explicit.
  std::optional<std::vector<ComplexVector>> complement_basis;
};

struct ProblemSpec {
  std::vector<int> dims;
  std::vector<Constraint> constraints;

  int parties() const { return static_cast<int>(dims.size()); }
  std::vector<PartySet> subsets() const;
  std::vector<int> codims() const;
  /// Throws std::invalid_argument on any broken invariant: dims >= 2,
  /// subsets inside [n], codims >= 1, basis sizes matching codim and d.
  void validate() const;
};

enum class VerdictKind { GenericallyEmpty, ExistsNonzero, InfinitelyMany, Inconclusive };

/// The rule that produced a verdict.
enum class VerdictBasis {
  OverDetermined,               // N_E > N_U: empty for generic subspaces
  CriticalTopCoefficient,       // N_E = N_U and the top coefficient of P^k is nonzero
  NonvanishingClass,            // N_E <= N_U and P^k is nonzero in the truncated ring
  UnderDeterminedNonvanishing,  // N_E < N_U and P^k nonzero: a positive-dimensional solution set
  UnderDeterminedFullRank,      // N_E < N_U and rank(Sigma) = r
  UnderDeterminedSmallCase,     // N_E < N_U with two parties, or three or four qubits
  QubitPermanent,               // critical qubit case with per(Sigma) != 0
  MersenneQubitCount,           // n = 2^k - 1 qubits and N_E <= n
  SegreCount,                   // all subsets trivial in the critical case
};

struct VerdictDiagnostics {
  int n_equations = 0;
  int n_unknowns = 0;
  int reduced_rows = 0;
  int sigma_rank = 0;
  BigInt top_coefficient = 0;
  bool pk_is_zero = false;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<VerdictBasis> basis;  // set iff kind != Inconclusive
  /// GenericallyEmpty only speaks about generic subspaces; explicit instances may still have solutions.
  bool generic_only = false;
  VerdictDiagnostics diagnostics;
};

std::string to_string(VerdictKind kind);
std::string to_string(VerdictBasis basis);

/// Merges constraints whose subsets are equal or complementary. The merged
/// constraint keeps the lexicographically smaller subset and codim
/// min(k_i + k_j, prod d_j). Explicit bases are combined as D_i cap D_j, with
/// D_j replaced by its entrywise conjugate when the subsets are complementary,
/// and the codim becomes the rank of the combined complement.
ProblemSpec reduce(const ProblemSpec& spec);

struct Counts {
  int equations = 0;  // N_E = sum k_i
  int unknowns = 0;   // N_U = sum (d_j - 1)
};

/// On the spec as given, without reduction.
Counts counts(const ProblemSpec& spec);

/// Strongest conclusion available for the reduced spec, tried in order:
/// over-determined, critical with nonzero top coefficient, under-determined
/// with nonzero P^k, under-determined with full row rank, small under-determined
/// cases, Mersenne qubit counts, and finally nonvanishing P^k when N_E <= N_U.
/// A vanishing P^k never yields a negative verdict.
Verdict verdict(const ProblemSpec& spec);

/// (sum (d_j - 1))! / prod (d_j - 1)! when, after reduction, a single
/// constraint with a trivial subset (empty or all parties) is left and the
/// system is critical; nullopt otherwise.
std::optional<BigInt> generic_count(const ProblemSpec& spec);

}  // namespace pptkit
