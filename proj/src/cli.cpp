#include "pptkit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pptkit/classify.hpp"
#include "pptkit/io.hpp"
#include "pptkit/mpstate.hpp"
#include "pptkit/permanent.hpp"
#include "pptkit/prodvec.hpp"
#include "pptkit/rng.hpp"
#include "pptkit/solvability.hpp"

namespace pptkit {

namespace {

struct Options {
  std::string input;
  std::string second;
  std::optional<std::string> out;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int restarts = 0;
  std::string mode = "exhaustive";
  int n = 0;
  std::uint64_t budget = 0;
  int samples = 1000;
};

class Report {
 public:
  explicit Report(const std::string& command) {
    line("schema", kReportSchema);
    line("command", command);
  }
  template <typename T>
  void line(const std::string& key, const T& value) {
    os_ << key << ": " << value << "\n";
  }
  void raw(const std::string& text) { os_ << text; }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::string join_dims(const std::vector<int>& dims) {
  std::string s;
  for (int d : dims) s += (s.empty() ? "" : " ") + std::to_string(d);
  return s;
}

void write_factors(Report& r, const ProductVector& psi, const std::string& indent) {
  for (int j = 0; j < psi.parties(); ++j) {
    std::string s;
    for (Eigen::Index a = 0; a < psi.factors[j].size(); ++a) s += (a ? " " : "") + format_complex(psi.factors[j][a]);
    r.line(indent + "factor " + std::to_string(j + 1), s);
  }
}

std::string cmd_verdict(const Options& o) {
  const ProblemSpec spec = parse_spec(read_text_file(o.input));
  const Verdict v = verdict(spec);
  Report r("verdict");
  r.line("kind", to_string(v.kind));
  r.line("basis", v.basis ? to_string(*v.basis) : "none");
  r.line("generic_only", yes_no(v.generic_only));
  r.line("N_E", v.diagnostics.n_equations);
  r.line("N_U", v.diagnostics.n_unknowns);
  r.line("rank", v.diagnostics.sigma_rank);
  r.line("reduced_rows", v.diagnostics.reduced_rows);
  r.line("top_coefficient", v.diagnostics.top_coefficient);
  r.line("pk_is_zero", yes_no(v.diagnostics.pk_is_zero));
  if (const auto count = generic_count(spec)) r.line("generic_count", *count);
  return r.str();
}

std::string cmd_solve(const Options& o) {
  const ProblemSpec spec = parse_spec(read_text_file(o.input));
  const bool explicit_bases =
      !spec.constraints.empty() &&
      std::all_of(spec.constraints.begin(), spec.constraints.end(), [](const Constraint& c) { return c.complement_basis.has_value(); });
  const auto constraints = explicit_bases ? explicit_instance(spec) : random_instance(spec, o.seed);
  SolverConfig cfg;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts > 0 ? o.restarts : default_restarts(spec);
  if (o.tol) cfg.accept_threshold = *o.tol;
  const SolveReport rep = solve(constraints, spec.dims, cfg);

  Report r("solve");
  r.line("seed", rep.seed);
  r.line("instance", explicit_bases ? "explicit" : "random");
  r.line("dims", join_dims(spec.dims));
  r.line("restarts", rep.restarts_used);
  r.line("accept_threshold", format_double(cfg.accept_threshold));
  r.line("accepted_runs", rep.solutions.size());
  r.line("ambiguous_runs", rep.ambiguous);
  r.line("distinct_count", rep.distinct_count);
  r.line("residual_floor", format_double(rep.residual_floor));
  if (const auto count = generic_count(spec)) r.line("generic_count", *count);
  for (std::size_t i = 0; i < rep.representatives.size(); ++i) {
    const auto& s = rep.representatives[i];
    r.line("solution " + std::to_string(i + 1), "");
    r.line("  residual", format_double(s.residual));
    r.line("  restart", s.restart);
    write_factors(r, s.psi, "  ");
  }
  return r.str();
}

std::string cmd_permanent(const Options& o) {
  const SignMatrix m = parse_sign_matrix(read_text_file(o.input));
  Report r("permanent");
  r.line("n", m.rows());
  r.line("permanent", permanent(m));
  return r.str();
}

std::string cmd_invariants(const Options& o) {
  const SignMatrix m = parse_sign_matrix(read_text_file(o.input));
  const InvariantProfile p = invariants(m);
  auto list = [](const std::vector<int>& v) {
    std::string s;
    for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s;
  };
  Report r("invariants");
  r.line("rows", m.rows());
  r.line("cols", m.cols());
  r.line("mu", p.mu);
  r.line("row_minus", list(p.row_minus));
  r.line("col_minus", list(p.col_minus));
  r.line("pi_r", p.pi_r);
  r.line("pi_c", p.pi_c);
  r.line("rank", p.rank);
  if (p.abs_det) r.line("abs_det", *p.abs_det);
  if (p.abs_per) r.line("abs_per", *p.abs_per);
  r.line("row_gram_scalar", yes_no(p.row_gram_is_scalar));
  return r.str();
}

std::string cmd_classify(const Options& o) {
  SweepMode mode;
  if (o.mode == "exhaustive") {
    mode = SweepMode::Exhaustive;
  } else if (o.mode == "normalized-search") {
    mode = SweepMode::NormalizedSearch;
  } else {
    throw CLI::ValidationError("--mode", "expected exhaustive or normalized-search");
  }
  const ClassificationResult res = classify_vanishing(o.n, mode, o.budget);
  Report r("classify");
  r.line("n", o.n);
  r.line("mode", o.mode);
  r.line("examined", res.examined);
  r.line("vanishing", res.vanishing);
  r.line("vanishing_odd_mu", res.vanishing_odd_mu);
  r.line("complete", yes_no(res.complete));
  r.line("classes", res.classes.size());
  for (const auto& m : res.classes) r.raw("\n" + format_sign_matrix(m));
  return r.str();
}

std::string cmd_equivalent(const Options& o) {
  const SignMatrix a = parse_sign_matrix(read_text_file(o.input));
  const SignMatrix b = parse_sign_matrix(read_text_file(o.second));
  Report r("equivalent");
  r.line("equivalent", yes_no(equivalent(a, b)));
  return r.str();
}

std::string cmd_edge(const Options& o) {
  const DensityMatrix rho = parse_density_matrix(read_text_file(o.input));
  EdgeConfig cfg;
  cfg.solver.seed = o.seed;
  cfg.solver.restarts = o.restarts > 0 ? o.restarts : 500;
  if (o.tol) cfg.rank_tolerance = *o.tol;
  const EdgeReport rep = edge_analysis(rho, cfg);

  Report r("edge");
  r.line("seed", o.seed);
  r.line("dims", join_dims(rho.dims()));
  r.line("status", to_string(rep.status));
  r.line("ppt", yes_no(rep.ppt.ppt));
  r.line("rank_tolerance", format_double(rep.profile.tolerance));
  for (std::size_t i = 0; i < rep.profile.entries.size(); ++i) {
    const auto& e = rep.profile.entries[i];
    r.line("subset " + e.subset.to_string(),
           "rank " + std::to_string(e.rank) + " min_eigenvalue " + format_double(e.min_eigenvalue) + " smallest_kept " +
               format_double(e.smallest_kept) + " largest_dropped " + format_double(e.largest_dropped));
  }
  r.line("sum_of_ranks", rep.profile.sum_of_ranks);
  r.line("bound", rep.profile.bound);
  r.line("below_bound", yes_no(rep.profile.sum_of_ranks < rep.profile.bound));
  if (rep.verdict) {
    r.line("verdict", to_string(rep.verdict->kind));
    r.line("N_E", rep.verdict->diagnostics.n_equations);
    r.line("N_U", rep.verdict->diagnostics.n_unknowns);
  }
  if (rep.solve) {
    r.line("restarts", rep.solve->restarts_used);
    r.line("accepted_runs", rep.solve->solutions.size());
    r.line("residual_floor", format_double(rep.solve->residual_floor));
  }
  if (rep.witness) {
    r.line("witness", "");
    r.line("  residual", format_double(rep.witness->residual));
    write_factors(r, rep.witness->psi, "  ");
  }
  return r.str();
}

std::string cmd_survey(const Options& o) {
  if (o.n < 1 || o.n > kRyserMaxOrder) throw UnsupportedError("survey supports 1 <= n <= " + std::to_string(kRyserMaxOrder));
  if (o.samples < 1 || o.samples > 10'000'000) throw std::invalid_argument("--samples must lie in [1, 1e7]");
  const int n = o.n;
  std::vector<BigInt> values(static_cast<std::size_t>(o.samples));
#pragma omp parallel for schedule(dynamic, 16)
  for (int s = 0; s < o.samples; ++s) {
    CounterRng rng(o.seed, static_cast<std::uint64_t>(s));
    std::vector<std::int8_t> e(static_cast<std::size_t>(n) * n);
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k % 64 == 0) bits = rng();
      e[k] = (bits >> (k % 64)) & 1U ? -1 : 1;
    }
    const BigInt p = permanent(SignMatrix(n, n, std::move(e)));
    values[s] = p < 0 ? BigInt(-p) : p;
  }
  std::map<BigInt, std::uint64_t> hist;
  for (const auto& v : values) ++hist[v];
  const auto zeros = hist.count(0) ? hist[0] : 0;

  Report r("survey");
  r.line("seed", o.seed);
  r.line("n", n);
  r.line("samples", o.samples);
  r.line("zero_count", zeros);
  r.line("zero_fraction", format_double(static_cast<double>(zeros) / o.samples));
  r.line("distinct_abs_per", hist.size());
  if (hist.size() <= 64) {
    for (const auto& [v, c] : hist) r.line("abs_per " + v.str(), c);
  } else {
    std::sort(values.begin(), values.end());
    for (int q : {0, 25, 50, 75, 100}) {
      const auto idx = static_cast<std::size_t>((values.size() - 1) * q / 100);
      r.line("abs_per_q" + std::to_string(q), values[idx]);
    }
  }
  return r.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solvability of partially conjugated product-vector systems, sign-matrix permanents and PPT rank profiles",
               "pptkit"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Write the report to this path"); };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "64-bit seed")->capture_default_str(); };

  auto* verdict_cmd = app.add_subcommand("verdict", "Solvability verdict for a problem spec");
  verdict_cmd->add_option("spec", o.input, "ProblemSpec JSON file")->required();
  add_out(verdict_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Multi-start numerical search for product-vector solutions");
  solve_cmd->add_option("spec", o.input, "ProblemSpec JSON file")->required();
  add_seed(solve_cmd);
  solve_cmd->add_option("--restarts", o.restarts, "Restart count (0 = default budget)");
  solve_cmd->add_option("--tol", o.tol, "Accept threshold on the squared residual");
  add_out(solve_cmd);

  auto* perm_cmd = app.add_subcommand("permanent", "Exact permanent of a +/-1 matrix");
  perm_cmd->add_option("matrix", o.input, "Sign-matrix file")->required();
  add_out(perm_cmd);

  auto* inv_cmd = app.add_subcommand("invariants", "Equivalence invariants of a +/-1 matrix");
  inv_cmd->add_option("matrix", o.input, "Sign-matrix file")->required();
  add_out(inv_cmd);

  auto* cls_cmd = app.add_subcommand("classify", "Classify n x n +/-1 matrices with vanishing permanent");
  cls_cmd->add_option("--n", o.n, "Matrix order")->required();
  cls_cmd->add_option("--mode", o.mode, "exhaustive | normalized-search")->capture_default_str();
  cls_cmd->add_option("--budget", o.budget, "Cap on matrices examined (0 = none)");
  add_out(cls_cmd);

  auto* eq_cmd = app.add_subcommand("equivalent", "Decide equivalence of two +/-1 matrices");
  eq_cmd->add_option("a", o.input, "First sign-matrix file")->required();
  eq_cmd->add_option("b", o.second, "Second sign-matrix file")->required();
  add_out(eq_cmd);

  auto* edge_cmd = app.add_subcommand("edge", "Range-criterion edge analysis of a density matrix");
  edge_cmd->add_option("state", o.input, "Density-matrix file")->required();
  add_seed(edge_cmd);
  edge_cmd->add_option("--restarts", o.restarts, "Solver restarts (default 500)");
  edge_cmd->add_option("--tol", o.tol, "Relative rank tolerance");
  add_out(edge_cmd);

  auto* survey_cmd = app.add_subcommand("survey", "Permanents of random +/-1 matrices");
  survey_cmd->add_option("--n", o.n, "Matrix order")->required();
  survey_cmd->add_option("--samples", o.samples, "Number of samples")->capture_default_str();
  add_seed(survey_cmd);
  add_out(survey_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParseError;
  }

  try {
    std::string report;
    if (*verdict_cmd) report = cmd_verdict(o);
    else if (*solve_cmd) report = cmd_solve(o);
    else if (*perm_cmd) report = cmd_permanent(o);
    else if (*inv_cmd) report = cmd_invariants(o);
    else if (*cls_cmd) report = cmd_classify(o);
    else if (*eq_cmd) report = cmd_equivalent(o);
    else if (*edge_cmd) report = cmd_edge(o);
    else if (*survey_cmd) report = cmd_survey(o);

    if (o.out) {
      std::ofstream f(*o.out, std::ios::binary);
      if (!f) {
        err << "error: cannot write " << *o.out << "\n";
        return kExitDomainError;
      }
      f << report;
    } else {
      out << report;
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const CLI::ValidationError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace pptkit
