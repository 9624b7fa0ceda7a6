#pragma once

// Seeded randomized checks of the quotient axioms.
//
//   Q1   (A ⊘ M)^T = A^T ⊘ M^T
//   Q2a  A ⊘ (M1 + M2) = A ⊘ M1 + A ⊘ M2 and A ⊘ (k M) = k (A ⊘ M)
//   Q2b  (k A) ⊘ M = (1/k) (A ⊘ M)
//   Q3   A ⊘ (B ⊘ M) = (B ⊗ A) ⊘ M
//   Q4   (A ⊘ M1)(C ⊘ M2) = (A C) ⊘ (M1 M2)
//   Q5   tr M = tr(A) tr(A ⊘ M); Q5R is the same identity for tr(A) != 0
//
// A check draws `trials` independent inputs, evaluates both sides and keeps
// the largest relative residual. The verdict is `holds` iff that residual is
// at most kHoldsTolerance. Failing reports carry the inputs that produced the
// largest residual; replay() recomputes that residual.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kronq/matrix.hpp"
#include "kronq/quotients.hpp"

namespace kronq {

inline constexpr double kHoldsTolerance = 1e-8;

enum class Axiom {
  Q1,
  Q2a,
  Q2b,
  Q3,
  Q4,
  Q5,
  Q5R,
  WeightConditions,       // "Wcond": W(A^T) = W(A)^T and W(A ⊗ B) = W(A) ⊗ W(B)
  RealizationConditions,  // "Rcond": Q(A^T), Q(kA), Q(B ⊗ A) identities
  Projection,             // "PROJ": M = sum_j A_j ⊗ (A_j ⊘ M)
  TraceVersusQ3,          // "TR-Q3": rank of Q(J_4) under TR versus Q3
};

std::string_view axiom_name(Axiom axiom);
std::optional<Axiom> parse_axiom(std::string_view name);

enum class Verdict { holds, fails };

std::string_view verdict_name(Verdict v);

struct Counterexample {
  std::string check;  // which identity the inputs violate, e.g. "Q3", "W-kron"
  std::vector<std::pair<std::string, Matrix>> matrices;
  std::vector<std::pair<std::string, Complex>> scalars;

  const Matrix& matrix(std::string_view name) const;
  const Matrix* find_matrix(std::string_view name) const;
  Complex scalar(std::string_view name) const;
};

struct SubCheck {
  std::string name;
  double max_residual = 0.0;
  Verdict verdict = Verdict::holds;
};

struct AxiomReport {
  Axiom axiom = Axiom::Q1;
  std::string scheme;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double max_residual = 0.0;
  Verdict verdict = Verdict::holds;
  std::optional<Counterexample> counterexample;
  std::vector<SubCheck> checks;
  // Set by checks that measure both sides of an equivalence; false means the
  // two sides disagreed, which signals a defect in the suite itself.
  std::optional<bool> iff_consistent;
  std::vector<std::string> notes;

  const SubCheck* find_check(std::string_view name) const;
};

enum class RhsMode {
  free,       // M drawn freely
  kronecker,  // M drawn as a Kronecker product with the divisor as a factor
};

struct DimBounds {
  std::size_t max_dim = 4;  // every drawn dimension lies in [1, max_dim]
  bool square = false;      // divisors are square (n = m, t = s)
};

struct CheckConfig {
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  DimBounds dims;
  RhsMode rhs = RhsMode::free;
};

// Q1, Q2a, Q2b, Q3, Q5R (and Q4, Q5 for completeness). Throws
// ConfigurationError for unusable pairings such as Q5R or the trace scheme
// without square dims, or max_dim outside [1, 6].
AxiomReport check_axiom(Axiom axiom, const QuotientScheme& scheme, const CheckConfig& config);

// Tests both weight conditions directly and cross-checks them against Q1 and
// Q3 of the weighted quotient on the same seed.
AxiomReport check_weight_conditions(const WeightRule& w, const std::string& name,
                                    const CheckConfig& config);

// Tests Q(A^T) = Q(A)^T, Q(kA) = Q(A)/k (real and complex k recorded
// separately) and Q(B ⊗ A) = Q(B) ⊗ Q(A), cross-checked against Q1, Q2b and
// Q3 of the induced uniform quotient on the same seed.
AxiomReport check_realization_conditions(const Realization& r, const CheckConfig& config);

// Biorthonormality Q(A_j) ∘ A_k = δ_{jk} of the basis and reconstruction of
// random M with s, t in [1, config.dims.max_dim]. Throws ConfigurationError
// unless the basis spans the m x n matrices.
AxiomReport check_projection(std::span<const Matrix> basis, const QuotientScheme& scheme,
                             const CheckConfig& config);

// The three impossibility witnesses: Q4 with A C = 0, unrestricted Q5 with
// tr A = 0, and the rank-4 versus rank-1 conflict between TR and Q3.
std::vector<AxiomReport> demo_counterexamples();

// Residual of a report's counterexample recomputed through the public API.
// Throws ConfigurationError when the report carries no counterexample.
double replay(const AxiomReport& report, const QuotientScheme& scheme);
// As above, resolving the scheme from the report (built-in names and the
// comma-separated scheme lists of the demo reports).
double replay(const AxiomReport& report);

// key=value lines in a fixed field order.
std::string to_text(const AxiomReport& report);
AxiomReport report_from_text(std::string_view text);
// One JSON object; matrices inside are strings in the matrix text format.
std::string to_json(const AxiomReport& report);
AxiomReport report_from_json(std::string_view json);

}  // namespace kronq
