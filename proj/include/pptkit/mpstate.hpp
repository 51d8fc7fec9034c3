#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pptkit/prodvec.hpp"
#include "pptkit/solvability.hpp"
#include "pptkit/types.hpp"

namespace pptkit {

/// A Hermitian operator on C^{d_1} (x) ... (x) C^{d_n}, party 1 slowest.
///
/// The public constructor checks Hermiticity (1e-10, absolute) and rescales to
/// unit trace. Positivity is not required, so partial transposes of states
/// are DensityMatrix values too.
class DensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-10;

  /// Throws std::invalid_argument on a shape mismatch, a non-Hermitian matrix
  /// or a trace too close to zero to normalize.
  DensityMatrix(std::vector<int> dims, ComplexMatrix entries);

  /// Same checks, without rescaling the trace.
  static DensityMatrix unnormalized(std::vector<int> dims, ComplexMatrix entries);
  static DensityMatrix maximally_mixed(const std::vector<int>& dims);

  const std::vector<int>& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  Eigen::Index dimension() const { return entries_.rows(); }
  const ComplexMatrix& matrix() const { return entries_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

 private:
  DensityMatrix() = default;

  std::vector<int> dims_;
  ComplexMatrix entries_;
};

/// Swaps the local row and column indices of every party in S.
DensityMatrix partial_transpose(const DensityMatrix& rho, PartySet subset);

/// The 2^{n-1} subsets of [n] that omit party 1, in binary order of their
/// bit masks: {}, {2}, {3}, {2,3}, ...
std::vector<PartySet> canonical_subsets(int n);

struct PptReport {
  bool ppt = true;
  std::vector<std::pair<PartySet, double>> min_eigenvalues;  // per canonical subset
};

PptReport is_ppt(const DensityMatrix& rho, double tol = 1e-10);

struct SubsetRank {
  PartySet subset;
  int rank = 0;
  double min_eigenvalue = 0.0;
  /// Smallest kept and largest dropped singular value, both relative to the
  /// largest. 0 when nothing is dropped; 1 for `kept` when the matrix is zero.
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;
};

struct RankProfile {
  std::vector<SubsetRank> entries;  // canonical subsets, in canonical order
  std::int64_t sum_of_ranks = 0;
  std::int64_t bound = 0;
  double tolerance = 0.0;
};

/// 2^{n-1} prod d_j - sum (d_j - 1).
std::int64_t rank_sum_bound(const std::vector<int>& dims);

/// Numerical rank counts singular values above tol times the largest.
RankProfile rank_profile(const DensityMatrix& rho, double tol = 1e-9);

/// Orthonormal eigenvectors whose eigenvalues have modulus at most tol times
/// the largest modulus.
std::vector<ComplexVector> range_complement(const DensityMatrix& rho, double tol = 1e-9);

enum class EdgeStatus { NotApplicable, NotEdge, CandidateEdge, InconsistentWithRankBound };

std::string to_string(EdgeStatus status);

struct EdgeConfig {
  SolverConfig solver;
  double rank_tolerance = 1e-9;
  double ppt_tolerance = 1e-10;
};

struct EdgeReport {
  EdgeStatus status = EdgeStatus::NotApplicable;
  PptReport ppt;
  RankProfile profile;
  /// Codim profile of the range system; subsets with full-rank partial
  /// transposes contribute no constraint.
  ProblemSpec system;
  std::optional<Verdict> verdict;  // absent when the ring expansion is unsupported
  std::optional<SolveReport> solve;
  std::optional<Solution> witness;
};

/// Looks for psi with psi^{Gamma(S)} in the range of rho^{T(S)} for every
/// canonical S and compares the rank sum with rank_sum_bound. A
/// CandidateEdge status is evidence only.
EdgeReport edge_analysis(const DensityMatrix& rho, const EdgeConfig& config = {});

/// sum_m w_m |psi_m><psi_m| over the full tensors of the given product
/// vectors (normalized first). Throws std::invalid_argument when the weights
/// are not positive, do not sum to 1 within 1e-10, or the shapes disagree.
DensityMatrix build_separable(const std::vector<ProductVector>& vectors, const std::vector<double>& weights);

/// Random state: G G^dagger / tr with G a complex Gaussian d x rank matrix,
/// rank = d when omitted.
DensityMatrix random_state(const std::vector<int>& dims, std::uint64_t seed, std::optional<int> rank = std::nullopt);

namespace reference {
/// Elementwise loop over (row, col) with explicit digit decomposition.
DensityMatrix partial_transpose(const DensityMatrix& rho, PartySet subset);
RankProfile rank_profile(const DensityMatrix& rho, double tol = 1e-9);
}  // namespace reference

}  // namespace pptkit
