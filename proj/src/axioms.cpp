#include "kronq/axioms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "kronq/partial_frobenius.hpp"
#include "kronq/random.hpp"
#include "kronq/svd.hpp"

namespace kronq {

namespace {

constexpr std::size_t kMaxDim = 6;
// Trace-scheme divisors with |tr A| below this fraction of ||A||_F are redrawn.
constexpr double kTraceFloor = 1e-3;

const std::array<Complex, 6> kScaleDraws = {Complex{2.0, 0.0},  Complex{-2.0, 0.0},
                                            Complex{0.5, 0.0},  Complex{-0.5, 0.0},
                                            Complex{0.0, 1.0},  Complex{1.0, 1.0}};

constexpr std::array<std::pair<Axiom, std::string_view>, 11> kAxiomNames = {{
    {Axiom::Q1, "Q1"},
    {Axiom::Q2a, "Q2a"},
    {Axiom::Q2b, "Q2b"},
    {Axiom::Q3, "Q3"},
    {Axiom::Q4, "Q4"},
    {Axiom::Q5, "Q5"},
    {Axiom::Q5R, "Q5R"},
    {Axiom::WeightConditions, "Wcond"},
    {Axiom::RealizationConditions, "Rcond"},
    {Axiom::Projection, "PROJ"},
    {Axiom::TraceVersusQ3, "TR-Q3"},
}};

Verdict verdict_of(double residual) {
  return residual <= kHoldsTolerance ? Verdict::holds : Verdict::fails;
}

double scalar_difference(Complex x, Complex y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

bool is_real_scalar(Complex k) { return k.imag() == 0.0; }

WeightRule weight_rule_of(const QuotientScheme& scheme) {
  switch (scheme.kind()) {
    case SchemeKind::weighted:
      return scheme.weight_rule();
    case SchemeKind::leopardi:
      return weights::leopardi;
    case SchemeKind::frobenius:
      return weights::frobenius;
    default:
      throw ConfigurationError("scheme '" + scheme.name() + "' is not a weighted average");
  }
}

const Realization& realization_of_scheme(const QuotientScheme& scheme) {
  if (!scheme.realization()) {
    throw ConfigurationError("scheme '" + scheme.name() + "' has no closed-form realization");
  }
  return *scheme.realization();
}

Matrix quotient(const QuotientScheme& scheme, const Matrix& A, const Matrix& M) {
  return left_quotient(scheme, A, M, factor_shape_of(A, M));
}

// --- evaluators: one residual per identity, shared by checks and replay ---

double eval_q1(const QuotientScheme& s, const Counterexample& in) {
  const Matrix& A = in.matrix("A");
  const Matrix& M = in.matrix("M");
  return relative_difference(transpose(quotient(s, A, M)), quotient(s, transpose(A), transpose(M)));
}

double eval_q2a(const QuotientScheme& s, const Counterexample& in) {
  const Matrix& A = in.matrix("A");
  const Matrix& M1 = in.matrix("M1");
  const Matrix& M2 = in.matrix("M2");
  const Complex k = in.scalar("k");
  const Matrix q1 = quotient(s, A, M1);
  const double additive = relative_difference(quotient(s, A, M1 + M2), q1 + quotient(s, A, M2));
  const double homogeneous = relative_difference(quotient(s, A, k * M1), k * q1);
  return std::max(additive, homogeneous);
}

double eval_q2b(const QuotientScheme& s, const Counterexample& in) {
  const Matrix& A = in.matrix("A");
  const Matrix& M = in.matrix("M");
  const Complex k = in.scalar("k");
  return relative_difference(quotient(s, k * A, M), quotient(s, A, M) / k);
}

double eval_q3(const QuotientScheme& s, const Counterexample& in) {
  const Matrix& A = in.matrix("A");
  const Matrix& B = in.matrix("B");
  const Matrix& M = in.matrix("M");
  const Matrix inner = quotient(s, B, M);
  return relative_difference(quotient(s, A, inner), quotient(s, kron(B, A), M));
}

double eval_q4(const QuotientScheme& s, const Counterexample& in) {
  const bool trace_witness = s.kind() == SchemeKind::trace && in.find_matrix("A_trace");
  const std::string suffix = trace_witness ? "_trace" : "";
  const Matrix& A = in.matrix("A" + suffix);
  const Matrix& C = in.matrix("C" + suffix);
  const Matrix& M1 = in.matrix("M1" + suffix);
  const Matrix& M2 = in.matrix("M2" + suffix);
  const Matrix lhs = quotient(s, A, M1) * quotient(s, C, M2);
  const Matrix AC = A * C;
  // (AC) ⊘ (M1 M2) is undefined when AC = 0, while the left side is not.
  if (nnz(AC) == 0) return lhs.is_zero() ? 0.0 : 1.0;
  return relative_difference(lhs, quotient(s, AC, M1 * M2));
}

double eval_q5(const QuotientScheme& s, const Counterexample& in) {
  const Matrix& A = in.matrix("A");
  const Matrix& M = in.matrix("M");
  return scalar_difference(trace(M), trace(A) * trace(quotient(s, A, M)));
}

double eval_w_transpose(const QuotientScheme& s, const Counterexample& in) {
  const WeightRule w = weight_rule_of(s);
  const Matrix& A = in.matrix("A");
  return relative_difference(w(transpose(A)), transpose(w(A)));
}

double eval_w_kron(const QuotientScheme& s, const Counterexample& in) {
  const WeightRule w = weight_rule_of(s);
  const Matrix& A = in.matrix("A");
  const Matrix& B = in.matrix("B");
  return relative_difference(w(kron(A, B)), kron(w(A), w(B)));
}

double eval_r_transpose(const QuotientScheme& s, const Counterexample& in) {
  const Realization& r = realization_of_scheme(s);
  const Matrix& A = in.matrix("A");
  return relative_difference(r.q_of(transpose(A)), transpose(r.q_of(A)));
}

double eval_r_scale(const QuotientScheme& s, const Counterexample& in) {
  const Realization& r = realization_of_scheme(s);
  const Matrix& A = in.matrix("A");
  const Complex k = in.scalar("k");
  return relative_difference(r.q_of(k * A), r.q_of(A) / k);
}

double eval_r_kron(const QuotientScheme& s, const Counterexample& in) {
  const Realization& r = realization_of_scheme(s);
  const Matrix& A = in.matrix("A");
  const Matrix& B = in.matrix("B");
  return relative_difference(r.q_of(kron(B, A)), kron(r.q_of(B), r.q_of(A)));
}

std::vector<Matrix> basis_from(const Counterexample& in) {
  std::vector<Matrix> basis;
  for (std::size_t j = 1;; ++j) {
    const Matrix* m = in.find_matrix("A" + std::to_string(j));
    if (m == nullptr) break;
    basis.push_back(*m);
  }
  if (basis.empty()) throw ConfigurationError("counterexample carries no basis");
  return basis;
}

Matrix realization_for_projection(const QuotientScheme& s, const Matrix& A) {
  if (auto q = realization_of(s, A)) return *q;
  return extract_realization(s, A);
}

double eval_proj_delta(const QuotientScheme& s, const Counterexample& in) {
  const std::vector<Matrix> basis = basis_from(in);
  double worst = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Matrix q = realization_for_projection(s, basis[j]);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const Complex expected = j == k ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(pfp_scalar(q, basis[k]) - expected));
    }
  }
  return worst;
}

double eval_proj_reconstruct(const QuotientScheme& s, const Counterexample& in) {
  const std::vector<Matrix> basis = basis_from(in);
  const Matrix& M = in.matrix("M");
  Matrix sum = Matrix::zeros(M.rows(), M.cols());
  for (const Matrix& A : basis) sum = sum + kron(A, quotient(s, A, M));
  const double norm = frobenius_norm(M);
  return norm == 0.0 ? frobenius_norm(sum) : frobenius_norm(M - sum) / norm;
}

double eval_tr_q3(const QuotientScheme&, const Counterexample& in) {
  const Matrix q_square = trace_realization(in.matrix("J4"));
  const Realization stand_in = frobenius_realization();
  const Matrix q_split =
      kron(stand_in.q_of(in.matrix("column")), stand_in.q_of(in.matrix("row")));
  return relative_difference(q_square, q_split);
}

using Evaluator = double (*)(const QuotientScheme&, const Counterexample&);

Evaluator evaluator_for(std::string_view check) {
  static const std::map<std::string, Evaluator, std::less<>> table = {
      {"Q1", eval_q1},
      {"Q2a", eval_q2a},
      {"Q2b", eval_q2b},
      {"Q3", eval_q3},
      {"Q4", eval_q4},
      {"Q5", eval_q5},
      {"Q5R", eval_q5},
      {"W-transpose", eval_w_transpose},
      {"W-kron", eval_w_kron},
      {"R-transpose", eval_r_transpose},
      {"R-scale", eval_r_scale},
      {"R-kron", eval_r_kron},
      {"PROJ-delta", eval_proj_delta},
      {"PROJ-reconstruct", eval_proj_reconstruct},
      {"TR-Q3", eval_tr_q3},
  };
  auto it = table.find(check);
  if (it == table.end()) throw ConfigurationError("unknown check '" + std::string(check) + "'");
  return it->second;
}

double evaluate(const QuotientScheme& scheme, const Counterexample& in) {
  return evaluator_for(in.check)(scheme, in);
}

// --- input generation ---

bool sparse_trial(const QuotientScheme& scheme, std::size_t trial) {
  return (scheme.kind() == SchemeKind::leopardi || scheme.kind() == SchemeKind::weighted) &&
         trial % 3 == 2;
}

Matrix draw_divisor(TrialRng& rng, std::size_t rows, std::size_t cols, bool need_trace,
                    bool sparse) {
  for (;;) {
    Matrix A = sparse ? rng.sparse_matrix(rows, cols) : rng.nonzero_matrix(rows, cols);
    if (need_trace && std::abs(trace(A)) < kTraceFloor * frobenius_norm(A)) continue;
    return A;
  }
}

struct Dims {
  std::size_t rows;
  std::size_t cols;
};

Dims draw_dims(TrialRng& rng, const DimBounds& bounds, std::size_t cap = kMaxDim) {
  const std::size_t hi = std::min(bounds.max_dim, cap);
  const std::size_t rows = rng.index(1, hi);
  const std::size_t cols = bounds.square ? rows : rng.index(1, hi);
  return {rows, cols};
}

class Accumulator {
 public:
  void add(double residual, const Counterexample& inputs) {
    if (!seen_ || residual > max_) {
      max_ = residual;
      worst_ = inputs;
    }
    seen_ = true;
  }
  double max() const { return max_; }
  bool seen() const { return seen_; }
  const std::optional<Counterexample>& worst() const { return worst_; }
  SubCheck sub_check(std::string name) const {
    return SubCheck{std::move(name), max_, verdict_of(max_)};
  }

 private:
  bool seen_ = false;
  double max_ = 0.0;
  std::optional<Counterexample> worst_;
};

void finish(AxiomReport& report, const Accumulator& overall) {
  report.max_residual = overall.max();
  report.verdict = verdict_of(overall.max());
  if (report.verdict == Verdict::fails) report.counterexample = overall.worst();
}

void validate_config(const CheckConfig& config) {
  if (config.trials == 0) throw ConfigurationError("trials must be at least 1");
  if (config.dims.max_dim < 1 || config.dims.max_dim > kMaxDim) {
    throw ConfigurationError("max_dim must lie in [1, " + std::to_string(kMaxDim) + "]");
  }
}

Counterexample draw_axiom_inputs(Axiom axiom, const QuotientScheme& scheme,
                                 const CheckConfig& config, std::size_t trial, TrialRng& rng) {
  const bool need_trace = scheme.kind() == SchemeKind::trace || axiom == Axiom::Q5R;
  const bool sparse = sparse_trial(scheme, trial);
  const bool kron_rhs = config.rhs == RhsMode::kronecker;
  const DimBounds& dims = config.dims;
  Counterexample in;
  in.check = std::string(axiom_name(axiom));

  switch (axiom) {
    case Axiom::Q1: {
      const Dims a = draw_dims(rng, dims);
      const Dims b = draw_dims(rng, dims);
      Matrix A = draw_divisor(rng, a.rows, a.cols, need_trace, sparse);
      Matrix M = kron_rhs ? kron(A, rng.matrix(b.rows, b.cols))
                          : rng.matrix(a.rows * b.rows, a.cols * b.cols);
      in.matrices = {{"A", std::move(A)}, {"M", std::move(M)}};
      break;
    }
    case Axiom::Q2a: {
      const Dims a = draw_dims(rng, dims);
      const Dims b = draw_dims(rng, dims);
      Matrix A = draw_divisor(rng, a.rows, a.cols, need_trace, sparse);
      Matrix M1 = kron_rhs ? kron(A, rng.matrix(b.rows, b.cols))
                           : rng.matrix(a.rows * b.rows, a.cols * b.cols);
      Matrix M2 = kron_rhs ? kron(A, rng.matrix(b.rows, b.cols))
                           : rng.matrix(a.rows * b.rows, a.cols * b.cols);
      Complex k = rng.entry();
      while (k == Complex{}) k = rng.entry();
      in.matrices = {{"A", std::move(A)}, {"M1", std::move(M1)}, {"M2", std::move(M2)}};
      in.scalars = {{"k", k}};
      break;
    }
    case Axiom::Q2b: {
      const Dims a = draw_dims(rng, dims);
      const Dims b = draw_dims(rng, dims);
      Matrix A = draw_divisor(rng, a.rows, a.cols, need_trace, sparse);
      Matrix M = kron_rhs ? kron(A, rng.matrix(b.rows, b.cols))
                          : rng.matrix(a.rows * b.rows, a.cols * b.cols);
      const Complex k = kScaleDraws[rng.index(0, kScaleDraws.size() - 1)];
      in.matrices = {{"A", std::move(A)}, {"M", std::move(M)}};
      in.scalars = {{"k", k}};
      break;
    }
    case Axiom::Q3: {
      const Dims a = draw_dims(rng, dims);
      const Dims b = draw_dims(rng, dims);
      const Dims c = draw_dims(rng, dims);
      Matrix A = draw_divisor(rng, a.rows, a.cols, need_trace, sparse);
      Matrix B = draw_divisor(rng, b.rows, b.cols, need_trace, sparse);
      Matrix M = kron_rhs ? kron(kron(B, A), rng.matrix(c.rows, c.cols))
                          : rng.matrix(b.rows * a.rows * c.rows, b.cols * a.cols * c.cols);
      in.matrices = {{"A", std::move(A)}, {"B", std::move(B)}, {"M", std::move(M)}};
      break;
    }
    case Axiom::Q4: {
      // A m x n, C n x p, M1 (m s) x (n t), M2 (n t) x (p u).
      const std::size_t hi = dims.max_dim;
      const std::size_t m = rng.index(1, hi);
      const std::size_t n = dims.square ? m : rng.index(1, hi);
      const std::size_t p = dims.square ? m : rng.index(1, hi);
      const std::size_t s = rng.index(1, hi);
      const std::size_t t = dims.square ? s : rng.index(1, hi);
      const std::size_t u = dims.square ? s : rng.index(1, hi);
      Matrix A = draw_divisor(rng, m, n, need_trace, sparse);
      Matrix C = draw_divisor(rng, n, p, need_trace, sparse);
      Matrix M1 = kron_rhs ? kron(A, rng.matrix(s, t)) : rng.matrix(m * s, n * t);
      Matrix M2 = kron_rhs ? kron(C, rng.matrix(t, u)) : rng.matrix(n * t, p * u);
      in.matrices = {
          {"A", std::move(A)}, {"C", std::move(C)}, {"M1", std::move(M1)}, {"M2", std::move(M2)}};
      break;
    }
    case Axiom::Q5:
    case Axiom::Q5R: {
      const Dims a = draw_dims(rng, dims);
      const Dims b = draw_dims(rng, dims);
      Matrix A = draw_divisor(rng, a.rows, a.rows, need_trace, sparse);
      Matrix M = kron_rhs ? kron(A, rng.matrix(b.rows, b.rows))
                          : rng.matrix(a.rows * b.rows, a.rows * b.rows);
      in.matrices = {{"A", std::move(A)}, {"M", std::move(M)}};
      break;
    }
    default:
      throw ConfigurationError("axiom " + std::string(axiom_name(axiom)) +
                               " is not checked by check_axiom");
  }
  return in;
}

std::size_t cap3(std::size_t d) { return std::min<std::size_t>(d, 3); }

}  // namespace

std::string_view axiom_name(Axiom axiom) {
  for (const auto& [a, name] : kAxiomNames) {
    if (a == axiom) return name;
  }
  return "?";
}

std::optional<Axiom> parse_axiom(std::string_view name) {
  for (const auto& [a, n] : kAxiomNames) {
    if (n == name) return a;
  }
  if (name == "Proj") return Axiom::Projection;
  return std::nullopt;
}

std::string_view verdict_name(Verdict v) { return v == Verdict::holds ? "holds" : "fails"; }

const Matrix* Counterexample::find_matrix(std::string_view name) const {
  for (const auto& [n, m] : matrices) {
    if (n == name) return &m;
  }
  return nullptr;
}

const Matrix& Counterexample::matrix(std::string_view name) const {
  if (const Matrix* m = find_matrix(name)) return *m;
  throw ConfigurationError("counterexample has no matrix '" + std::string(name) + "'");
}

Complex Counterexample::scalar(std::string_view name) const {
  for (const auto& [n, k] : scalars) {
    if (n == name) return k;
  }
  throw ConfigurationError("counterexample has no scalar '" + std::string(name) + "'");
}

const SubCheck* AxiomReport::find_check(std::string_view name) const {
  for (const SubCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

AxiomReport check_axiom(Axiom axiom, const QuotientScheme& scheme, const CheckConfig& config) {
  validate_config(config);
  if ((axiom == Axiom::Q5 || axiom == Axiom::Q5R) && !config.dims.square) {
    throw ConfigurationError(std::string(axiom_name(axiom)) + " needs square dims");
  }
  if (scheme.kind() == SchemeKind::trace && !config.dims.square) {
    throw ConfigurationError("the trace scheme needs square dims");
  }
  switch (axiom) {
    case Axiom::Q1:
    case Axiom::Q2a:
    case Axiom::Q2b:
    case Axiom::Q3:
    case Axiom::Q4:
    case Axiom::Q5:
    case Axiom::Q5R:
      break;
    default:
      throw ConfigurationError("axiom " + std::string(axiom_name(axiom)) +
                               " is not checked by check_axiom");
  }

  AxiomReport report;
  report.axiom = axiom;
  report.scheme = scheme.name();
  report.trials = config.trials;
  report.seed = config.seed;

  Accumulator overall;
  Accumulator real_k;
  Accumulator complex_k;
  std::size_t degenerate = 0;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    TrialRng rng(config.seed, trial);
    const Counterexample in = draw_axiom_inputs(axiom, scheme, config, trial, rng);
    const double residual = evaluate(scheme, in);
    overall.add(residual, in);
    if (axiom == Axiom::Q2b) {
      (is_real_scalar(in.scalar("k")) ? real_k : complex_k).add(residual, in);
    }
    if (scheme.kind() == SchemeKind::operator_norm) {
      for (const char* name : {"A", "B", "C"}) {
        if (const Matrix* d = in.find_matrix(name); d && has_degenerate_leading_value(svd(*d))) {
          ++degenerate;
        }
      }
    }
  }
  finish(report, overall);
  if (axiom == Axiom::Q2b) {
    if (real_k.seen()) report.checks.push_back(real_k.sub_check("real-k"));
    if (complex_k.seen()) report.checks.push_back(complex_k.sub_check("complex-k"));
  }
  if (degenerate > 0) {
    report.notes.push_back(std::to_string(degenerate) +
                           " divisor draws had a repeated leading singular value; quotient "
                           "values there follow the SVD convention");
  }
  return report;
}

AxiomReport check_weight_conditions(const WeightRule& w, const std::string& name,
                                    const CheckConfig& config) {
  validate_config(config);
  const QuotientScheme scheme = QuotientScheme::weighted(w, name);

  AxiomReport report;
  report.axiom = Axiom::WeightConditions;
  report.scheme = scheme.name();
  report.trials = config.trials;
  report.seed = config.seed;

  Accumulator transposed;
  Accumulator kronecker;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    TrialRng rng(config.seed, trial);
    const bool sparse = sparse_trial(scheme, trial);
    const Dims a = draw_dims(rng, config.dims);
    const Dims b = draw_dims(rng, config.dims, cap3(config.dims.max_dim));
    const Matrix A = draw_divisor(rng, a.rows, a.cols, false, sparse);
    const Matrix B = draw_divisor(rng, b.rows, b.cols, false, sparse);

    Counterexample t_in{"W-transpose", {{"A", A}}, {}};
    transposed.add(evaluate(scheme, t_in), t_in);
    Counterexample k_in{"W-kron", {{"A", A}, {"B", B}}, {}};
    kronecker.add(evaluate(scheme, k_in), k_in);
  }

  CheckConfig q3_config = config;
  q3_config.dims.max_dim = cap3(config.dims.max_dim);
  const AxiomReport q1 = check_axiom(Axiom::Q1, scheme, config);
  const AxiomReport q3 = check_axiom(Axiom::Q3, scheme, q3_config);

  const SubCheck t_check = transposed.sub_check("W-transpose");
  const SubCheck k_check = kronecker.sub_check("W-kron");
  report.checks = {t_check, k_check, SubCheck{"Q1", q1.max_residual, q1.verdict},
                   SubCheck{"Q3", q3.max_residual, q3.verdict}};
  report.iff_consistent = t_check.verdict == q1.verdict && k_check.verdict == q3.verdict;

  report.max_residual = std::max(transposed.max(), kronecker.max());
  report.verdict = verdict_of(report.max_residual);
  if (report.verdict == Verdict::fails) {
    report.counterexample =
        transposed.max() >= kronecker.max() ? transposed.worst() : kronecker.worst();
  }
  return report;
}

AxiomReport check_realization_conditions(const Realization& r, const CheckConfig& config) {
  validate_config(config);
  const QuotientScheme scheme = QuotientScheme::uniform(r);
  const bool need_trace = r.name == "trace";
  if (need_trace && !config.dims.square) {
    throw ConfigurationError("the trace realization needs square dims");
  }

  AxiomReport report;
  report.axiom = Axiom::RealizationConditions;
  report.scheme = scheme.name();
  report.trials = config.trials;
  report.seed = config.seed;

  Accumulator transposed;
  Accumulator scale_real;
  Accumulator scale_complex;
  Accumulator kronecker;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    TrialRng rng(config.seed, trial);
    const Dims a = draw_dims(rng, config.dims);
    const Dims b = draw_dims(rng, config.dims, cap3(config.dims.max_dim));
    const Matrix A = draw_divisor(rng, a.rows, a.cols, need_trace, false);
    const Matrix B = draw_divisor(rng, b.rows, b.cols, need_trace, false);
    const Complex k = kScaleDraws[rng.index(0, kScaleDraws.size() - 1)];

    Counterexample t_in{"R-transpose", {{"A", A}}, {}};
    transposed.add(evaluate(scheme, t_in), t_in);
    Counterexample s_in{"R-scale", {{"A", A}}, {{"k", k}}};
    (is_real_scalar(k) ? scale_real : scale_complex).add(evaluate(scheme, s_in), s_in);
    Counterexample k_in{"R-kron", {{"A", A}, {"B", B}}, {}};
    kronecker.add(evaluate(scheme, k_in), k_in);
  }

  CheckConfig q3_config = config;
  q3_config.dims.max_dim = cap3(config.dims.max_dim);
  const AxiomReport q1 = check_axiom(Axiom::Q1, scheme, config);
  const AxiomReport q2b = check_axiom(Axiom::Q2b, scheme, config);
  const AxiomReport q3 = check_axiom(Axiom::Q3, scheme, q3_config);

  report.checks.push_back(transposed.sub_check("R-transpose"));
  if (scale_real.seen()) report.checks.push_back(scale_real.sub_check("R-scale-real-k"));
  if (scale_complex.seen()) report.checks.push_back(scale_complex.sub_check("R-scale-complex-k"));
  report.checks.push_back(kronecker.sub_check("R-kron"));
  report.checks.push_back(SubCheck{"Q1", q1.max_residual, q1.verdict});
  for (const SubCheck& c : q2b.checks) {
    report.checks.push_back(SubCheck{"Q2b-" + c.name, c.max_residual, c.verdict});
  }
  report.checks.push_back(SubCheck{"Q3", q3.max_residual, q3.verdict});

  bool consistent = verdict_of(transposed.max()) == q1.verdict &&
                    verdict_of(kronecker.max()) == q3.verdict;
  if (const SubCheck* c = q2b.find_check("real-k"); c && scale_real.seen()) {
    consistent = consistent && verdict_of(scale_real.max()) == c->verdict;
  }
  if (const SubCheck* c = q2b.find_check("complex-k"); c && scale_complex.seen()) {
    consistent = consistent && verdict_of(scale_complex.max()) == c->verdict;
  }
  report.iff_consistent = consistent;

  // Complex k separates Q(A)/k from Q(A)/conj(k); it is reported but does not
  // enter the verdict.
  if (scale_complex.seen() && verdict_of(scale_complex.max()) == Verdict::fails) {
    report.notes.push_back("Q(kA) = Q(A)/k fails for complex k");
  }
  const std::array<const Accumulator*, 3> parts = {&transposed, &scale_real, &kronecker};
  const Accumulator* worst = parts[0];
  for (const Accumulator* p : parts) {
    if (p->seen() && p->max() > worst->max()) worst = p;
  }
  report.max_residual = worst->max();
  report.verdict = verdict_of(report.max_residual);
  if (report.verdict == Verdict::fails) report.counterexample = worst->worst();
  return report;
}

AxiomReport check_projection(std::span<const Matrix> basis, const QuotientScheme& scheme,
                             const CheckConfig& config) {
  validate_config(config);
  if (basis.empty()) throw ConfigurationError("projection check needs a basis");
  const std::size_t m = basis.front().rows();
  const std::size_t n = basis.front().cols();
  const std::size_t mn = m * n;
  for (const Matrix& A : basis) {
    if (A.rows() != m || A.cols() != n) {
      throw ConfigurationError("basis elements must share one shape");
    }
  }
  if (basis.size() != mn) {
    throw ConfigurationError("a basis of " + std::to_string(m) + "x" + std::to_string(n) +
                             " matrices needs " + std::to_string(mn) + " elements");
  }
  const Matrix stacked = Matrix::generate(mn, mn, [&](std::size_t r, std::size_t c) {
    return basis[c](r / n, r % n);
  });
  if (numerical_rank(stacked) < mn) {
    throw ConfigurationError("the given matrices do not span the " + std::to_string(m) + "x" +
                             std::to_string(n) + " matrices");
  }

  AxiomReport report;
  report.axiom = Axiom::Projection;
  report.scheme = scheme.name();
  report.trials = config.trials;
  report.seed = config.seed;

  Counterexample base{"PROJ-delta", {}, {}};
  for (std::size_t j = 0; j < basis.size(); ++j) {
    base.matrices.emplace_back("A" + std::to_string(j + 1), basis[j]);
  }
  Accumulator delta;
  delta.add(evaluate(scheme, base), base);

  Accumulator rebuilt;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    TrialRng rng(config.seed, trial);
    const std::size_t s = rng.index(1, config.dims.max_dim);
    const std::size_t t = config.dims.square ? s : rng.index(1, config.dims.max_dim);
    Counterexample in = base;
    in.check = "PROJ-reconstruct";
    in.matrices.emplace_back("M", rng.matrix(m * s, n * t));
    rebuilt.add(evaluate(scheme, in), in);
  }

  const SubCheck d_check = delta.sub_check("biorthonormal");
  const SubCheck r_check = rebuilt.sub_check("reconstruction");
  report.checks = {d_check, r_check};
  report.iff_consistent = d_check.verdict == r_check.verdict;
  report.max_residual = std::max(delta.max(), rebuilt.max());
  report.verdict = verdict_of(report.max_residual);
  if (report.verdict == Verdict::fails) {
    report.counterexample = rebuilt.max() >= delta.max() ? rebuilt.worst() : delta.worst();
  }
  return report;
}

std::vector<AxiomReport> demo_counterexamples() {
  std::vector<AxiomReport> out;

  // (a) Q4: A C = 0 leaves (AC) ⊘ (M1 M2) undefined while the left side is B1 B2.
  {
    const Matrix B1{{1.0, 2.0}, {3.0, 4.0}};
    const Matrix B2{{0.0, 1.0}, {1.0, 0.0}};
    const Matrix E12 = Matrix::unit(2, 2, 1, 2);
    // E_{1,2} has zero trace, so the trace scheme gets E_{1,1} E_{2,2} = 0 instead.
    const Matrix E11 = Matrix::unit(2, 2, 1, 1);
    const Matrix E22 = Matrix::unit(2, 2, 2, 2);
    Counterexample in{"Q4",
                      {{"A", E12},
                       {"C", E12},
                       {"M1", kron(E12, B1)},
                       {"M2", kron(E12, B2)},
                       {"A_trace", E11},
                       {"C_trace", E22},
                       {"M1_trace", kron(E11, B1)},
                       {"M2_trace", kron(E22, B2)}},
                      {}};
    AxiomReport r;
    r.axiom = Axiom::Q4;
    r.trials = 1;
    std::string names;
    Accumulator overall;
    for (const QuotientScheme& s : builtin_schemes()) {
      names += (names.empty() ? "" : ",") + s.name();
      const double residual = evaluate(s, in);
      r.checks.push_back(SubCheck{s.name(), residual, verdict_of(residual)});
      overall.add(residual, in);
    }
    r.scheme = names;
    finish(r, overall);
    r.notes.push_back("A C = 0, so (A C) ⊘ (M1 M2) is undefined while (A ⊘ M1)(C ⊘ M2) = B1 B2 != 0");
    out.push_back(std::move(r));
  }

  // (b) Q5 without restriction: tr A = 0 forces tr(A) tr(A ⊘ M) = 0 != tr M.
  {
    Counterexample in{"Q5", {{"A", Matrix::diagonal({1.0, -1.0})}, {"M", Matrix::identity(4)}}, {}};
    AxiomReport r;
    r.axiom = Axiom::Q5;
    r.trials = 1;
    std::string names;
    Accumulator overall;
    for (const QuotientScheme& s : builtin_schemes()) {
      if (s.kind() == SchemeKind::trace) continue;  // tr A = 0 lies outside its domain
      names += (names.empty() ? "" : ",") + s.name();
      const double residual = evaluate(s, in);
      r.checks.push_back(SubCheck{s.name(), residual, verdict_of(residual)});
      overall.add(residual, in);
    }
    r.scheme = names;
    finish(r, overall);
    r.notes.push_back("tr A = 0 and tr M = 4");
    out.push_back(std::move(r));
  }

  // (c) TR against Q3 on J_4 = J_2 ⊗ J_2 = (column of ones) ⊗ (row of ones).
  {
    const Matrix J4 = Matrix::constant(4, 4, 1.0);
    const Matrix J2 = Matrix::constant(2, 2, 1.0);
    const Matrix column = Matrix::constant(4, 1, 1.0);
    const Matrix row = Matrix::constant(1, 4, 1.0);
    Counterexample in{"TR-Q3", {{"J4", J4}, {"column", column}, {"row", row}}, {}};
    const QuotientScheme trace_scheme = QuotientScheme::trace();

    AxiomReport r;
    r.axiom = Axiom::TraceVersusQ3;
    r.scheme = trace_scheme.name();
    r.trials = 1;
    Accumulator overall;
    overall.add(evaluate(trace_scheme, in), in);

    const Matrix q_j4 = trace_realization(J4);
    const double square_split =
        relative_difference(q_j4, kron(trace_realization(J2), trace_realization(J2)));
    const Realization stand_in = frobenius_realization();
    const Matrix q_split = kron(stand_in.q_of(column), stand_in.q_of(row));
    r.checks = {SubCheck{"J2xJ2", square_split, verdict_of(square_split)},
                SubCheck{"column-x-row", overall.max(), verdict_of(overall.max())}};
    finish(r, overall);
    r.notes.push_back("rank Q(J4) under TR = " + std::to_string(numerical_rank(q_j4)));
    r.notes.push_back("rank Q(column) ⊗ Q(row) = " + std::to_string(numerical_rank(q_split)) +
                      " for any realization of the vector factors");
    out.push_back(std::move(r));
  }
  return out;
}

double replay(const AxiomReport& report, const QuotientScheme& scheme) {
  if (!report.counterexample) throw ConfigurationError("report carries no counterexample");
  return evaluate(scheme, *report.counterexample);
}

double replay(const AxiomReport& report) {
  if (!report.counterexample) throw ConfigurationError("report carries no counterexample");
  double worst = 0.0;
  std::string_view names = report.scheme;
  while (!names.empty()) {
    const std::size_t comma = names.find(',');
    const std::string_view name = names.substr(0, comma);
    const auto scheme = builtin_scheme(name);
    if (!scheme) {
      throw ConfigurationError("scheme '" + std::string(name) +
                               "' is not built in; pass the scheme to replay()");
    }
    worst = std::max(worst, evaluate(*scheme, *report.counterexample));
    names = comma == std::string_view::npos ? std::string_view{} : names.substr(comma + 1);
  }
  return worst;
}

}  // namespace kronq
