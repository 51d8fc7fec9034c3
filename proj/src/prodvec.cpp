#include "pptkit/prodvec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "pptkit/linalg.hpp"
#include "pptkit/rng.hpp"

namespace pptkit {

namespace {

constexpr double kPhaseCutoff = 1e-12;

void apply_phase_convention(ComplexVector& v) {
  for (Eigen::Index a = 0; a < v.size(); ++a) {
    const double mag = std::abs(v[a]);
    if (mag > kPhaseCutoff) {
      v *= std::conj(v[a]) / mag;
      v[a] = Complex(mag, 0.0);
      return;
    }
  }
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

}  // namespace

std::vector<int> ProductVector::dims() const {
  std::vector<int> d;
  d.reserve(factors.size());
  for (const auto& f : factors) d.push_back(static_cast<int>(f.size()));
  return d;
}

ComplexVector ProductVector::tensor() const {
  if (factors.empty()) throw std::invalid_argument("product vector has no factors");
  ComplexVector t = factors.front();
  for (std::size_t j = 1; j < factors.size(); ++j) t = kron(t, factors[j]);
  return t;
}

ProductVector ProductVector::normalized() const {
  ProductVector out = *this;
  for (auto& f : out.factors) {
    const double norm = f.norm();
    if (!(norm > 0.0)) throw std::invalid_argument("product vector factor is zero");
    f /= norm;
    apply_phase_convention(f);
  }
  return out;
}

ProductVector partial_conjugate(const ProductVector& psi, PartySet subset) {
  ProductVector out = psi;
  for (int j = 0; j < out.parties(); ++j)
    if (subset.contains(j)) out.factors[j] = out.factors[j].conjugate();
  return out.normalized();
}

namespace {

ComplexVector gaussian_vector(CounterRng& rng, Eigen::Index size) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(size);
  for (Eigen::Index a = 0; a < size; ++a) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[a] = Complex(re, im);
  }
  return v;
}

}  // namespace

std::vector<SubspaceConstraint> random_instance(const ProblemSpec& spec, std::uint64_t seed) {
  spec.validate();
  const auto total = static_cast<Eigen::Index>(total_dimension(spec.dims));
  std::vector<SubspaceConstraint> out;
  for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
    const auto& c = spec.constraints[i];
    CounterRng rng(seed, 0x5eed0000ULL + i);
    std::vector<ComplexVector> raw;
    for (int k = 0; k < c.codim; ++k) raw.push_back(gaussian_vector(rng, total));
    out.push_back({c.subset, orthonormalize(raw)});
  }
  return out;
}

std::vector<SubspaceConstraint> explicit_instance(const ProblemSpec& spec) {
  spec.validate();
  std::vector<SubspaceConstraint> out;
  for (const auto& c : spec.constraints) {
    if (!c.complement_basis) throw std::invalid_argument("constraint has no explicit complement_basis");
    out.push_back({c.subset, orthonormalize(*c.complement_basis)});
  }
  return out;
}

namespace {

void check_dims(const ProductVector& psi, const std::vector<SubspaceConstraint>& constraints) {
  const auto total = static_cast<Eigen::Index>(total_dimension(psi.dims()));
  for (const auto& c : constraints) {
    if (c.subset.bits() & ~PartySet::full(psi.parties()).bits()) {
      throw std::invalid_argument("constraint subset refers to a missing party");
    }
    for (const auto& v : c.complement_basis)
      if (v.size() != total) throw std::invalid_argument("constraint vector length does not match the product space");
  }
}

template <typename F>
void for_each_overlap(const ProductVector& psi, const std::vector<SubspaceConstraint>& constraints, F&& f) {
  check_dims(psi, constraints);
  const ProductVector unit = psi.normalized();
  for (const auto& c : constraints) {
    ProductVector phi = unit;
    for (int j = 0; j < phi.parties(); ++j)
      if (c.subset.contains(j)) phi.factors[j] = phi.factors[j].conjugate();
    const ComplexVector t = phi.tensor();
    for (const auto& v : c.complement_basis) f(v.dot(t));
  }
}

}  // namespace

double residual(const ProductVector& psi, const std::vector<SubspaceConstraint>& constraints) {
  double sum = 0.0;
  for_each_overlap(psi, constraints, [&](Complex z) { sum += std::norm(z); });
  return sum;
}

double max_overlap(const ProductVector& psi, const std::vector<SubspaceConstraint>& constraints) {
  double best = 0.0;
  for_each_overlap(psi, constraints, [&](Complex z) { best = std::max(best, std::abs(z)); });
  return best;
}

int default_restarts(const ProblemSpec& spec) {
  const auto count = generic_count(spec);
  if (!count || *count > 1'000'000) return 500;
  return std::max(500, 50 * count->convert_to<int>());
}

bool same_projective_point(const ProductVector& a, const ProductVector& b, double tol) {
  if (a.parties() != b.parties()) return false;
  const auto ua = a.normalized(), ub = b.normalized();
  double overlap = 1.0;
  for (int j = 0; j < ua.parties(); ++j) {
    if (ua.factors[j].size() != ub.factors[j].size()) return false;
    overlap *= std::abs(ua.factors[j].dot(ub.factors[j]));
  }
  return overlap > 1.0 - tol;
}

int count_distinct(const std::vector<ProductVector>& solutions, double tol) {
  std::vector<const ProductVector*> reps;
  for (const auto& s : solutions) {
    const bool seen = std::any_of(reps.begin(), reps.end(),
                                  [&](const ProductVector* r) { return same_projective_point(*r, s, tol); });
    if (!seen) reps.push_back(&s);
  }
  return static_cast<int>(reps.size());
}

namespace {

// Least-squares model over the real parameters (Re psi_j, Im psi_j) of every factor.
// Residual rows: Re/Im of <v|psi^Gamma(S)> for each basis vector, then |psi_j|^2 - 1.
class LeastSquaresModel {
 public:
  LeastSquaresModel(const std::vector<SubspaceConstraint>& constraints, const std::vector<int>& dims)
      : dims_(dims), n_(static_cast<int>(dims.size())) {
    total_ = static_cast<int>(total_dimension(dims));
    offset_.assign(n_ + 1, 0);
    for (int j = 0; j < n_; ++j) offset_[j + 1] = offset_[j] + 2 * dims_[j];
    digits_.resize(static_cast<std::size_t>(total_) * n_);
    for (int idx = 0; idx < total_; ++idx) {
      int rest = idx;
      for (int j = n_ - 1; j >= 0; --j) {
        digits_[static_cast<std::size_t>(idx) * n_ + j] = rest % dims_[j];
        rest /= dims_[j];
      }
    }
    for (const auto& c : constraints)
      for (const auto& v : c.complement_basis) {
        if (v.size() != total_) throw std::invalid_argument("constraint vector length does not match dims");
        rows_.push_back({c.subset, v.conjugate()});
      }
  }

  int parameters() const { return offset_[n_]; }
  int residuals() const { return 2 * static_cast<int>(rows_.size()) + n_; }

  ProductVector unpack(const Eigen::VectorXd& x) const {
    ProductVector psi;
    for (int j = 0; j < n_; ++j) {
      ComplexVector f(dims_[j]);
      for (int a = 0; a < dims_[j]; ++a) f[a] = Complex(x[offset_[j] + a], x[offset_[j] + dims_[j] + a]);
      psi.factors.push_back(std::move(f));
    }
    return psi;
  }

  void normalize(Eigen::VectorXd& x) const {
    for (int j = 0; j < n_; ++j) {
      auto seg = x.segment(offset_[j], 2 * dims_[j]);
      const double norm = seg.norm();
      if (norm > 0.0) seg /= norm;
    }
  }

  void evaluate(const Eigen::VectorXd& x, Eigen::VectorXd& f, Eigen::MatrixXd& jac) const {
    f.setZero(residuals());
    jac.setZero(residuals(), parameters());
    std::vector<ComplexVector> psi(n_), phi(n_);
    for (int j = 0; j < n_; ++j) {
      psi[j].resize(dims_[j]);
      for (int a = 0; a < dims_[j]; ++a) psi[j][a] = Complex(x[offset_[j] + a], x[offset_[j] + dims_[j] + a]);
    }
    std::vector<Complex> prefix(n_ + 1), suffix(n_ + 1);
    std::vector<ComplexVector> grad(n_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& [subset, vbar] = rows_[r];
      for (int j = 0; j < n_; ++j) {
        phi[j] = subset.contains(j) ? ComplexVector(psi[j].conjugate()) : psi[j];
        grad[j].setZero(dims_[j]);
      }
      Complex z = 0.0;
      for (int idx = 0; idx < total_; ++idx) {
        const Complex w = vbar[idx];
        if (w == Complex(0.0, 0.0)) continue;
        const int* dg = &digits_[static_cast<std::size_t>(idx) * n_];
        prefix[0] = 1.0;
        for (int j = 0; j < n_; ++j) prefix[j + 1] = prefix[j] * phi[j][dg[j]];
        suffix[n_] = 1.0;
        for (int j = n_ - 1; j >= 0; --j) suffix[j] = suffix[j + 1] * phi[j][dg[j]];
        z += w * prefix[n_];
        for (int j = 0; j < n_; ++j) grad[j][dg[j]] += w * prefix[j] * suffix[j + 1];
      }
      const int row = 2 * static_cast<int>(r);
      f[row] = z.real();
      f[row + 1] = z.imag();
      for (int j = 0; j < n_; ++j) {
        const Complex im_dir = subset.contains(j) ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
        for (int a = 0; a < dims_[j]; ++a) {
          const Complex d_re = grad[j][a];
          const Complex d_im = im_dir * grad[j][a];
          jac(row, offset_[j] + a) = d_re.real();
          jac(row + 1, offset_[j] + a) = d_re.imag();
          jac(row, offset_[j] + dims_[j] + a) = d_im.real();
          jac(row + 1, offset_[j] + dims_[j] + a) = d_im.imag();
        }
      }
    }
    const int base = 2 * static_cast<int>(rows_.size());
    for (int j = 0; j < n_; ++j) {
      const auto seg = x.segment(offset_[j], 2 * dims_[j]);
      f[base + j] = seg.squaredNorm() - 1.0;
      jac.row(base + j).segment(offset_[j], 2 * dims_[j]) = 2.0 * seg.transpose();
    }
  }

  Eigen::VectorXd random_start(CounterRng& rng) const {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd x(parameters());
    for (Eigen::Index p = 0; p < x.size(); ++p) x[p] = normal(rng);
    normalize(x);
    return x;
  }

 private:
  struct Row {
    PartySet subset;
    ComplexVector vbar;
  };
  std::vector<int> dims_;
  int n_;
  int total_ = 0;
  std::vector<int> offset_;
  std::vector<int> digits_;
  std::vector<Row> rows_;
};

Eigen::VectorXd levenberg_marquardt(const LeastSquaresModel& model, Eigen::VectorXd x, int max_iterations) {
  Eigen::VectorXd f, f_try;
  Eigen::MatrixXd jac, jac_try;
  model.evaluate(x, f, jac);
  double cost = f.squaredNorm();
  double lambda = 1e-3;
  int stalls = 0;
  const Eigen::Index p = x.size();

  for (int it = 0; it < max_iterations && cost > 1e-32; ++it) {
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * f;
    if (grad.norm() < 1e-30) break;
    bool improved = false;
    while (lambda < 1e12) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal().array() += lambda * (1.0 + normal.diagonal().array());
      const Eigen::VectorXd step = damped.ldlt().solve(-grad);
      Eigen::VectorXd x_try = x + step;
      model.normalize(x_try);
      model.evaluate(x_try, f_try, jac_try);
      const double cost_try = f_try.squaredNorm();
      if (cost_try < cost) {
        stalls = (cost - cost_try) < 1e-12 * cost ? stalls + 1 : 0;
        x = std::move(x_try);
        std::swap(f, f_try);
        std::swap(jac, jac_try);
        cost = cost_try;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved || stalls >= 3) break;
  }
  (void)p;
  return x;
}

struct RestartOutcome {
  ProductVector psi;
  double residual = std::numeric_limits<double>::infinity();
};

RestartOutcome run_restart(const LeastSquaresModel& model, const std::vector<SubspaceConstraint>& constraints,
                           const SolverConfig& config, int restart) {
  CounterRng rng(config.seed, static_cast<std::uint64_t>(restart));
  Eigen::VectorXd x = levenberg_marquardt(model, model.random_start(rng), config.max_iterations);
  RestartOutcome out;
  out.psi = model.unpack(x).normalized();
  out.residual = residual(out.psi, constraints);
  return out;
}

SolveReport assemble(std::vector<RestartOutcome> outcomes, const SolverConfig& config) {
  SolveReport report;
  report.seed = config.seed;
  report.restarts_used = static_cast<int>(outcomes.size());
  report.residual_floor = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    auto& o = outcomes[r];
    report.residual_floor = std::min(report.residual_floor, o.residual);
    if (o.residual < config.accept_threshold) {
      report.solutions.push_back({std::move(o.psi), o.residual, static_cast<int>(r)});
    } else if (o.residual <= config.reject_threshold) {
      ++report.ambiguous;
    }
  }
  for (const auto& s : report.solutions) {
    const bool seen = std::any_of(report.representatives.begin(), report.representatives.end(), [&](const Solution& r) {
      return same_projective_point(r.psi, s.psi, config.dedupe_tolerance);
    });
    if (!seen) report.representatives.push_back(s);
  }
  report.distinct_count = static_cast<int>(report.representatives.size());
  return report;
}

int effective_restarts(const SolverConfig& config) { return config.restarts > 0 ? config.restarts : 500; }

}  // namespace

SolveReport solve(const std::vector<SubspaceConstraint>& constraints, const std::vector<int>& dims,
                  const SolverConfig& config) {
  const LeastSquaresModel model(constraints, dims);
  const int restarts = effective_restarts(config);
  std::vector<RestartOutcome> outcomes(restarts);
#pragma omp parallel for schedule(dynamic, 8)
  for (int r = 0; r < restarts; ++r) outcomes[r] = run_restart(model, constraints, config, r);
  return assemble(std::move(outcomes), config);
}

namespace reference {

SolveReport solve(const std::vector<SubspaceConstraint>& constraints, const std::vector<int>& dims,
                  const SolverConfig& config) {
  const LeastSquaresModel model(constraints, dims);
  const int restarts = effective_restarts(config);
  std::vector<RestartOutcome> outcomes;
  outcomes.reserve(restarts);
  for (int r = 0; r < restarts; ++r) outcomes.push_back(run_restart(model, constraints, config, r));
  return assemble(std::move(outcomes), config);
}

}  // namespace reference

}  // namespace pptkit
