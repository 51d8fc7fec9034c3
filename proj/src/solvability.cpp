#include "pptkit/solvability.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pptkit/linalg.hpp"
#include "pptkit/quotient_poly.hpp"

namespace pptkit {

std::vector<PartySet> ProblemSpec::subsets() const {
  std::vector<PartySet> out;
  out.reserve(constraints.size());
  for (const auto& c : constraints) out.push_back(c.subset);
  return out;
}

std::vector<int> ProblemSpec::codims() const {
  std::vector<int> out;
  out.reserve(constraints.size());
  for (const auto& c : constraints) out.push_back(c.codim);
  return out;
}

void ProblemSpec::validate() const {
  if (dims.empty()) throw std::invalid_argument("dims must list at least one party");
  if (static_cast<int>(dims.size()) > PartySet::kMaxParties) throw std::invalid_argument("too many parties");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("every local dimension must be at least 2");
  const std::uint64_t total = total_dimension(dims);
  const auto allowed = PartySet::full(parties()).bits();
  for (const auto& c : constraints) {
    if (c.subset.bits() & ~allowed) throw std::invalid_argument("subset refers to a party outside [1, n]");
    if (c.codim < 1) throw std::invalid_argument("codim must be positive");
    if (static_cast<std::uint64_t>(c.codim) > total) throw std::invalid_argument("codim exceeds the total dimension");
    if (c.complement_basis) {
      if (static_cast<int>(c.complement_basis->size()) != c.codim) {
        throw std::invalid_argument("complement_basis size must equal codim");
      }
      for (const auto& v : *c.complement_basis)
        if (static_cast<std::uint64_t>(v.size()) != total) {
          throw std::invalid_argument("complement_basis vector has the wrong length");
        }
    }
  }
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::GenericallyEmpty: return "GenericallyEmpty";
    case VerdictKind::ExistsNonzero: return "ExistsNonzero";
    case VerdictKind::InfinitelyMany: return "InfinitelyMany";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(VerdictBasis basis) {
  switch (basis) {
    case VerdictBasis::OverDetermined: return "over-determined";
    case VerdictBasis::CriticalTopCoefficient: return "critical-top-coefficient";
    case VerdictBasis::NonvanishingClass: return "nonvanishing-class";
    case VerdictBasis::UnderDeterminedNonvanishing: return "under-determined-nonvanishing";
    case VerdictBasis::UnderDeterminedFullRank: return "under-determined-full-rank";
    case VerdictBasis::UnderDeterminedSmallCase: return "under-determined-small-case";
    case VerdictBasis::QubitPermanent: return "qubit-permanent";
    case VerdictBasis::MersenneQubitCount: return "mersenne-qubit-count";
    case VerdictBasis::SegreCount: return "segre-count";
  }
  return "?";
}

ProblemSpec reduce(const ProblemSpec& spec) {
  spec.validate();
  const int n = spec.parties();
  const auto total = total_dimension(spec.dims);
  ProblemSpec out{spec.dims, spec.constraints};
  auto& cs = out.constraints;

  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size();) {
      const bool same = cs[j].subset == cs[i].subset;
      const bool complementary = cs[j].subset == cs[i].subset.complement(n);
      if (!same && !complementary) {
        ++j;
        continue;
      }
      const bool keep_j = PartySet::lex_less(cs[j].subset, cs[i].subset);
      const Constraint& kept = keep_j ? cs[j] : cs[i];
      const Constraint& other = keep_j ? cs[i] : cs[j];

      Constraint merged;
      merged.subset = kept.subset;
      if (kept.complement_basis && other.complement_basis) {
        std::vector<ComplexVector> all = *kept.complement_basis;
        const auto extra = complementary ? conjugated(*other.complement_basis) : *other.complement_basis;
        all.insert(all.end(), extra.begin(), extra.end());
        merged.complement_basis = orthonormalize(all);
        merged.codim = static_cast<int>(merged.complement_basis->size());
      } else {
        merged.codim = static_cast<int>(std::min<std::uint64_t>(
            static_cast<std::uint64_t>(kept.codim) + static_cast<std::uint64_t>(other.codim), total));
      }
      cs[i] = std::move(merged);
      cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(j));
    }
  }
  return out;
}

Counts counts(const ProblemSpec& spec) {
  Counts c;
  for (const auto& k : spec.constraints) c.equations += k.codim;
  for (int d : spec.dims) c.unknowns += d - 1;
  return c;
}

namespace {

bool all_qubits(const std::vector<int>& dims) {
  return std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; });
}

bool is_mersenne(int n) { return n >= 3 && ((n + 1) & n) == 0; }

bool single_trivial_constraint(const ProblemSpec& reduced) {
  if (reduced.constraints.size() != 1) return false;
  const auto s = reduced.constraints.front().subset;
  return s.empty() || s == PartySet::full(reduced.parties());
}

Verdict conclude(Verdict v, VerdictKind kind, VerdictBasis basis) {
  v.kind = kind;
  v.basis = basis;
  v.generic_only = kind == VerdictKind::GenericallyEmpty;
  return v;
}

}  // namespace

Verdict verdict(const ProblemSpec& spec) {
  const ProblemSpec red = reduce(spec);
  const int n = red.parties();
  const int r = static_cast<int>(red.constraints.size());
  const Counts c = counts(red);

  Verdict v;
  auto& diag = v.diagnostics;
  diag.n_equations = c.equations;
  diag.n_unknowns = c.unknowns;
  diag.reduced_rows = r;

  std::optional<TruncatedPolynomial> pk;
  if (r == 0) {
    pk = TruncatedPolynomial::constant(red.dims, 1);
  } else {
    const SignMatrix sigma = associated_matrix(red.subsets(), n);
    diag.sigma_rank = exact_rank(sigma);
    if (c.equations <= c.unknowns) pk = expand_pk(sigma, red.codims(), red.dims);
  }
  if (pk) {
    diag.pk_is_zero = pk->is_zero();
    diag.top_coefficient = pk->top_coefficient();
  } else {
    diag.pk_is_zero = true;  // degree N_E exceeds the top degree N_U of the ring
  }

  if (c.equations > c.unknowns) return conclude(v, VerdictKind::GenericallyEmpty, VerdictBasis::OverDetermined);

  const bool qubits = all_qubits(red.dims);
  if (c.equations == c.unknowns && diag.top_coefficient != 0) {
    const auto ks = red.codims();
    const bool square_qubit = qubits && r == n && std::all_of(ks.begin(), ks.end(), [](int k) { return k == 1; });
    VerdictBasis basis = VerdictBasis::CriticalTopCoefficient;
    if (square_qubit) basis = VerdictBasis::QubitPermanent;
    else if (single_trivial_constraint(red)) basis = VerdictBasis::SegreCount;
    return conclude(v, VerdictKind::ExistsNonzero, basis);
  }
  if (c.equations < c.unknowns) {
    if (!diag.pk_is_zero) return conclude(v, VerdictKind::InfinitelyMany, VerdictBasis::UnderDeterminedNonvanishing);
    if (diag.sigma_rank == r) return conclude(v, VerdictKind::InfinitelyMany, VerdictBasis::UnderDeterminedFullRank);
    if (n == 2 || (qubits && (n == 3 || n == 4))) {
      return conclude(v, VerdictKind::InfinitelyMany, VerdictBasis::UnderDeterminedSmallCase);
    }
  }
  if (qubits && is_mersenne(n) && c.equations <= n) {
    return conclude(v, VerdictKind::ExistsNonzero, VerdictBasis::MersenneQubitCount);
  }
  if (!diag.pk_is_zero) return conclude(v, VerdictKind::ExistsNonzero, VerdictBasis::NonvanishingClass);
  return v;
}

std::optional<BigInt> generic_count(const ProblemSpec& spec) {
  const ProblemSpec red = reduce(spec);
  const Counts c = counts(red);
  if (!single_trivial_constraint(red) || c.equations != c.unknowns) return std::nullopt;
  BigInt count = factorial(static_cast<unsigned>(c.unknowns));
  for (int d : red.dims) count /= factorial(static_cast<unsigned>(d - 1));
  return count;
}

}  // namespace pptkit
