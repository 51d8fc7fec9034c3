#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pptkit/solvability.hpp"
#include "pptkit/types.hpp"

namespace pptkit {

/// |psi_1> (x) ... (x) |psi_n>, one unit vector per party.
///
/// Normalized representatives have unit factors whose first component with
/// modulus above 1e-12 is real and non-negative.
struct ProductVector {
  std::vector<ComplexVector> factors;

  int parties() const { return static_cast<int>(factors.size()); }
  std::vector<int> dims() const;
  /// Full tensor, party 1 slowest (row-major).
  ComplexVector tensor() const;
  /// Unit factors with the phase convention applied. Throws
  /// std::invalid_argument if a factor is zero.
  ProductVector normalized() const;
};

/// Requires D^perp basis vectors of length prod d_j; orthonormality is assumed.
struct SubspaceConstraint {
  PartySet subset;
  std::vector<ComplexVector> complement_basis;
};

struct SolverConfig {
  int restarts = 0;  // 0 selects default_restarts()
  int max_iterations = 200;
  double accept_threshold = 1e-14;  // squared residual
  double reject_threshold = 1e-8;
  double dedupe_tolerance = 1e-6;
  std::uint64_t seed = 0;
};

struct Solution {
  ProductVector psi;
  double residual = 0.0;
  int restart = 0;
};

/// Outcome of a multi-start solve. A residual floor well above zero is
/// evidence against a solution, never proof: the conjugated system is real
/// algebraic, so there is no complex intersection count to certify it.
struct SolveReport {
  std::vector<Solution> solutions;       // accepted runs in restart order
  std::vector<Solution> representatives; // one per distinct projective solution
  int distinct_count = 0;
  double residual_floor = 0.0;  // minimum final residual over all restarts
  int restarts_used = 0;
  int ambiguous = 0;            // runs ending between the accept and reject thresholds
  std::uint64_t seed = 0;
};

/// Conjugates the factors of the parties in `subset` and renormalizes.
ProductVector partial_conjugate(const ProductVector& psi, PartySet subset);

/// One constraint per spec constraint: codim complex Gaussian vectors,
/// orthonormalized. Deterministic in (spec, seed). Ignores any explicit
/// bases in the spec. Throws std::invalid_argument on an invalid spec.
std::vector<SubspaceConstraint> random_instance(const ProblemSpec& spec, std::uint64_t seed);

/// Constraints taken from the spec's explicit bases, orthonormalized.
/// Throws std::invalid_argument if a constraint has no basis.
std::vector<SubspaceConstraint> explicit_instance(const ProblemSpec& spec);

/// sum_i sum_{v in basis_i} |<v | psi^{Gamma(S_i)}>|^2 with psi normalized.
/// Throws std::invalid_argument on a dimension mismatch.
double residual(const ProductVector& psi, const std::vector<SubspaceConstraint>& constraints);

/// max over constraints and basis vectors of |<v | psi^{Gamma(S_i)}>|.
double max_overlap(const ProductVector& psi, const std::vector<SubspaceConstraint>& constraints);

/// max(500, 50 * generic count) when the count formula applies, else 500.
int default_restarts(const ProblemSpec& spec);

/// Multi-start Levenberg-Marquardt over products of unit spheres. Restarts
/// run in parallel; restart i draws from stream (seed, i), so the report is
/// identical for any thread count.
SolveReport solve(const std::vector<SubspaceConstraint>& constraints, const std::vector<int>& dims,
                  const SolverConfig& config);

/// psi ~ phi when prod_j |<psi_j|phi_j>| > 1 - tol (unit factors).
bool same_projective_point(const ProductVector& a, const ProductVector& b, double tol);

/// Number of classes under same_projective_point, scanning in the given order.
int count_distinct(const std::vector<ProductVector>& solutions, double tol);

namespace reference {
/// Single-threaded restart loop; must reproduce pptkit::solve exactly.
SolveReport solve(const std::vector<SubspaceConstraint>& constraints, const std::vector<int>& dims,
                  const SolverConfig& config);
}  // namespace reference

}  // namespace pptkit
