#include "pptkit/mpstate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "pptkit/rng.hpp"

namespace pptkit {

namespace {

void check_shape(const std::vector<int>& dims, const ComplexMatrix& m) {
  const auto total = static_cast<Eigen::Index>(total_dimension(dims));
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("local dimensions must be positive");
  if (m.rows() != total || m.cols() != total) {
    throw std::invalid_argument("matrix size does not match the product of dims");
  }
  if (!((m - m.adjoint()).cwiseAbs().maxCoeff() <= DensityMatrix::kHermitianTolerance)) {
    // NaN entries land here as well
    throw std::invalid_argument("matrix is not Hermitian within 1e-10");
  }
}

// Offset of the S-digits: sum over j in S of digit_j(x) * stride_j.
std::vector<Eigen::Index> subset_offsets(const std::vector<int>& dims, PartySet subset) {
  const auto total = static_cast<Eigen::Index>(total_dimension(dims));
  std::vector<Eigen::Index> out(static_cast<std::size_t>(total), 0);
  Eigen::Index stride = 1;
  for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
    if (subset.contains(j)) {
      for (Eigen::Index x = 0; x < total; ++x) out[x] += ((x / stride) % dims[j]) * stride;
    }
    stride *= dims[j];
  }
  return out;
}

Eigen::VectorXd abs_sorted_desc(const Eigen::VectorXd& eig) {
  Eigen::VectorXd s = eig.cwiseAbs();
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  return s;
}

SubsetRank rank_of(const DensityMatrix& pt, PartySet subset, double tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt.matrix(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& eig = es.eigenvalues();
  SubsetRank out;
  out.subset = subset;
  out.min_eigenvalue = eig.minCoeff();
  const Eigen::VectorXd s = abs_sorted_desc(eig);
  const double top = s[0];
  if (!(top > 0.0)) {
    out.smallest_kept = 1.0;
    return out;
  }
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double rel = s[i] / top;
    if (rel > tol) {
      ++out.rank;
      out.smallest_kept = rel;
    } else {
      out.largest_dropped = std::max(out.largest_dropped, rel);
    }
  }
  return out;
}

std::vector<ComplexVector> small_eigenvectors(const ComplexMatrix& m, double tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  const Eigen::VectorXd& eig = es.eigenvalues();
  const double top = eig.cwiseAbs().maxCoeff();
  std::vector<ComplexVector> out;
  for (Eigen::Index i = 0; i < eig.size(); ++i)
    if (std::abs(eig[i]) <= tol * top || top == 0.0) out.push_back(es.eigenvectors().col(i));
  return out;
}

}  // namespace

DensityMatrix::DensityMatrix(std::vector<int> dims, ComplexMatrix entries) {
  check_shape(dims, entries);
  const double tr = entries.trace().real();
  if (!(std::abs(tr) > 1e-300)) throw std::invalid_argument("trace is zero; cannot normalize");
  dims_ = std::move(dims);
  entries_ = std::move(entries);
  // already-normalized input (e.g. a written state read back) is kept bit-exact
  if (std::abs(tr - 1.0) > 1e-13) entries_ /= tr;
}

DensityMatrix DensityMatrix::unnormalized(std::vector<int> dims, ComplexMatrix entries) {
  check_shape(dims, entries);
  DensityMatrix out;
  out.dims_ = std::move(dims);
  out.entries_ = std::move(entries);
  return out;
}

DensityMatrix DensityMatrix::maximally_mixed(const std::vector<int>& dims) {
  const auto total = static_cast<Eigen::Index>(total_dimension(dims));
  return DensityMatrix(dims, ComplexMatrix::Identity(total, total));
}

DensityMatrix partial_transpose(const DensityMatrix& rho, PartySet subset) {
  if (subset.bits() & ~PartySet::full(rho.parties()).bits()) {
    throw std::invalid_argument("subset refers to a missing party");
  }
  const auto off = subset_offsets(rho.dims(), subset);
  const Eigen::Index total = rho.dimension();
  const ComplexMatrix& in = rho.matrix();
  ComplexMatrix out(total, total);
  // Column-major storage: walk columns in the outer loop.
#pragma omp parallel for schedule(static) if (total >= 64)
  for (Eigen::Index c = 0; c < total; ++c) {
    const Eigen::Index c_base = c - off[c];
    for (Eigen::Index r = 0; r < total; ++r) {
      out(r - off[r] + off[c], c_base + off[r]) = in(r, c);
    }
  }
  return DensityMatrix::unnormalized(rho.dims(), std::move(out));
}

std::vector<PartySet> canonical_subsets(int n) {
  if (n < 1 || n > PartySet::kMaxParties) throw std::invalid_argument("party count out of range");
  if (n > 21) throw UnsupportedError("more than 2^20 canonical subsets");
  std::vector<PartySet> out;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  out.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) out.emplace_back(m << 1);
  return out;
}

PptReport is_ppt(const DensityMatrix& rho, double tol) {
  const auto subsets = canonical_subsets(rho.parties());
  PptReport report;
  report.min_eigenvalues.resize(subsets.size());
  const auto count = static_cast<std::ptrdiff_t>(subsets.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const DensityMatrix pt = partial_transpose(rho, subsets[i]);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt.matrix(), Eigen::EigenvaluesOnly);
    report.min_eigenvalues[i] = {subsets[i], es.eigenvalues().minCoeff()};
  }
  for (const auto& [s, ev] : report.min_eigenvalues)
    if (ev < -tol) report.ppt = false;
  return report;
}

std::int64_t rank_sum_bound(const std::vector<int>& dims) {
  const auto total = total_dimension(dims);
  const int n = static_cast<int>(dims.size());
  if (n > 40 || total > (std::uint64_t{1} << 20)) throw UnsupportedError("rank bound out of range");
  std::int64_t bound = (std::int64_t{1} << (n - 1)) * static_cast<std::int64_t>(total);
  for (int d : dims) bound -= d - 1;
  return bound;
}

RankProfile rank_profile(const DensityMatrix& rho, double tol) {
  const auto subsets = canonical_subsets(rho.parties());
  RankProfile profile;
  profile.tolerance = tol;
  profile.bound = rank_sum_bound(rho.dims());
  profile.entries.resize(subsets.size());
  const auto count = static_cast<std::ptrdiff_t>(subsets.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    profile.entries[i] = rank_of(partial_transpose(rho, subsets[i]), subsets[i], tol);
  }
  for (const auto& e : profile.entries) profile.sum_of_ranks += e.rank;
  return profile;
}

std::vector<ComplexVector> range_complement(const DensityMatrix& rho, double tol) {
  return small_eigenvectors(rho.matrix(), tol);
}

std::string to_string(EdgeStatus status) {
  switch (status) {
    case EdgeStatus::NotApplicable: return "not-applicable";
    case EdgeStatus::NotEdge: return "not-edge";
    case EdgeStatus::CandidateEdge: return "candidate-edge";
    case EdgeStatus::InconsistentWithRankBound: return "inconsistent-with-rank-bound";
  }
  return "?";
}

EdgeReport edge_analysis(const DensityMatrix& rho, const EdgeConfig& config) {
  EdgeReport report;
  report.ppt = is_ppt(rho, config.ppt_tolerance);
  report.profile = rank_profile(rho, config.rank_tolerance);
  report.system.dims = rho.dims();
  if (!report.ppt.ppt) return report;

  std::vector<SubspaceConstraint> constraints;
  for (PartySet s : canonical_subsets(rho.parties())) {
    const DensityMatrix pt = partial_transpose(rho, s);
    auto kernel = small_eigenvectors(pt.matrix(), config.rank_tolerance);
    if (kernel.empty()) continue;
    report.system.constraints.push_back({s, static_cast<int>(kernel.size()), kernel});
    constraints.push_back({s, std::move(kernel)});
  }

  try {
    report.verdict = verdict(report.system);
  } catch (const UnsupportedError&) {
    report.verdict.reset();
  }

  SolverConfig solver = config.solver;
  if (solver.restarts <= 0) solver.restarts = 500;
  report.solve = solve(constraints, rho.dims(), solver);
  if (!report.solve->solutions.empty()) {
    report.witness = report.solve->solutions.front();
    report.status = EdgeStatus::NotEdge;
  } else if (report.profile.sum_of_ranks < report.profile.bound) {
    report.status = EdgeStatus::CandidateEdge;
  } else {
    report.status = EdgeStatus::InconsistentWithRankBound;
  }
  return report;
}

DensityMatrix build_separable(const std::vector<ProductVector>& vectors, const std::vector<double>& weights) {
  if (vectors.empty()) throw std::invalid_argument("no product vectors given");
  if (vectors.size() != weights.size()) throw std::invalid_argument("one weight per product vector is required");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw std::invalid_argument("weights must sum to 1 within 1e-10");
  const auto dims = vectors.front().dims();
  const auto total = static_cast<Eigen::Index>(total_dimension(dims));
  ComplexMatrix m = ComplexMatrix::Zero(total, total);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dims() != dims) throw std::invalid_argument("product vectors have different shapes");
    const ComplexVector t = vectors[i].normalized().tensor();
    m.noalias() += weights[i] * (t * t.adjoint());
  }
  return DensityMatrix::unnormalized(dims, std::move(m));
}

DensityMatrix random_state(const std::vector<int>& dims, std::uint64_t seed, std::optional<int> rank) {
  const auto total = static_cast<Eigen::Index>(total_dimension(dims));
  const Eigen::Index k = rank.value_or(static_cast<int>(total));
  if (k < 1 || k > total) throw std::invalid_argument("rank must lie in [1, prod d_j]");
  CounterRng rng(seed, 0x57a7e000ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(total, k);
  for (Eigen::Index c = 0; c < k; ++c)
    for (Eigen::Index r = 0; r < total; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  ComplexMatrix m = g * g.adjoint();
  m = (m + m.adjoint()).eval() * 0.5;
  return DensityMatrix(dims, std::move(m));
}

namespace reference {

DensityMatrix partial_transpose(const DensityMatrix& rho, PartySet subset) {
  const auto& dims = rho.dims();
  const int n = rho.parties();
  const Eigen::Index total = rho.dimension();
  ComplexMatrix out(total, total);
  std::vector<int> ri(n), ci(n);
  for (Eigen::Index r = 0; r < total; ++r) {
    for (Eigen::Index c = 0; c < total; ++c) {
      Eigen::Index x = r, y = c;
      for (int j = n - 1; j >= 0; --j) {
        ri[j] = static_cast<int>(x % dims[j]);
        ci[j] = static_cast<int>(y % dims[j]);
        x /= dims[j];
        y /= dims[j];
      }
      for (int j = 0; j < n; ++j)
        if (subset.contains(j)) std::swap(ri[j], ci[j]);
      Eigen::Index r2 = 0, c2 = 0;
      for (int j = 0; j < n; ++j) {
        r2 = r2 * dims[j] + ri[j];
        c2 = c2 * dims[j] + ci[j];
      }
      out(r2, c2) = rho(r, c);
    }
  }
  return DensityMatrix::unnormalized(dims, std::move(out));
}

RankProfile rank_profile(const DensityMatrix& rho, double tol) {
  RankProfile profile;
  profile.tolerance = tol;
  profile.bound = rank_sum_bound(rho.dims());
  for (PartySet s : canonical_subsets(rho.parties())) {
    profile.entries.push_back(rank_of(reference::partial_transpose(rho, s), s, tol));
    profile.sum_of_ranks += profile.entries.back().rank;
  }
  return profile;
}

}  // namespace reference

}  // namespace pptkit
