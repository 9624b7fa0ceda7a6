#pragma once

// Left and right Kronecker quotients.
//
// A left quotient maps a nonzero m x n divisor A and an (m s) x (n t) matrix M
// to an s x t matrix with A ⊘ (A ⊗ B) = B. Every scheme here is linear in M.
// Uniform schemes have the form A ⊘ M = Q(A) ∘ M with Q(A) ∘ A = 1; the map
// A -> Q(A) is the scheme's realization.
//
// User-supplied weight rules, realizations and linear families must be pure
// and reentrant; schemes are immutable and may be shared across threads.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kronq/matrix.hpp"

namespace kronq {

// Entries with magnitude below this threshold are treated as zero when
// forming nz(A).
inline constexpr double kNonzeroThreshold = 1e-300;

struct NzIndex {
  std::vector<std::pair<std::size_t, std::size_t>> positions;  // 0-based (row, col)
  std::size_t count() const noexcept { return positions.size(); }
};

NzIndex nz(const Matrix& A);
std::size_t nnz(const Matrix& A);

// Maps A to a weight matrix W(A) of A's shape whose entries over nz(A) sum to 1.
using WeightRule = std::function<Matrix(const Matrix&)>;

namespace weights {
// W_L(A)_{i,j} = 1 / nnz(A) on nz(A), 0 elsewhere.
Matrix leopardi(const Matrix& A);
// W_F(A)_{i,j} = |A_{i,j}|^2 / ||A||_F^2.
Matrix frobenius(const Matrix& A);
}  // namespace weights

struct Realization {
  std::string name;
  std::function<Matrix(const Matrix&)> q_of;
};

Realization leopardi_realization();
Realization weighted_realization(WeightRule w, std::string name);
Realization frobenius_realization();
Realization operator_realization();
Realization trace_realization_rule();

// Q(A) = I / tr(A). Throws ShapeError for non-square A and
// SingularRealizationError when tr(A) vanishes.
Matrix trace_realization(const Matrix& A);

// The (s t)^2 matrices Q_{u,v,u',v'}(A) of a linear quotient, validated on
// construction against Q_{u,v,u',v'}(A) ∘ A = δ_{u,u'} δ_{v,v'}.
class LinearFamily {
 public:
  // components[((u * t + v) * s + u2) * t + v2] holds Q_{u,v,u2,v2} (0-based).
  // Throws InvalidFamilyError naming the first violating (u,v,u',v'), 1-based.
  LinearFamily(const Matrix& A, std::size_t s, std::size_t t, std::vector<Matrix> components);

  std::size_t s() const noexcept { return s_; }
  std::size_t t() const noexcept { return t_; }
  const Matrix& component(std::size_t u, std::size_t v, std::size_t u2, std::size_t v2) const {
    return components_[((u * t_ + v) * s_ + u2) * t_ + v2];
  }

 private:
  std::size_t s_;
  std::size_t t_;
  std::vector<Matrix> components_;
};

// Produces the raw components for (A, s, t) in LinearFamily's index order.
using FamilyRule =
    std::function<std::vector<Matrix>(const Matrix& A, std::size_t s, std::size_t t)>;

// Q_{u,v,u',v'}(A) = δ_{u,u'} δ_{v,v'} Q(A).
FamilyRule uniform_family(Realization r);

enum class SchemeKind { leopardi, weighted, frobenius, operator_norm, trace, uniform, linear };

class QuotientScheme {
 public:
  static QuotientScheme leopardi();
  static QuotientScheme frobenius();
  static QuotientScheme operator_norm();
  static QuotientScheme trace();
  static QuotientScheme weighted(WeightRule w, std::string name);
  static QuotientScheme uniform(Realization r);
  static QuotientScheme linear(FamilyRule f, std::string name);

  SchemeKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const WeightRule& weight_rule() const noexcept { return weights_; }
  const FamilyRule& family_rule() const noexcept { return family_; }
  const std::optional<Realization>& realization() const noexcept { return realization_; }

 private:
  QuotientScheme(SchemeKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  SchemeKind kind_;
  std::string name_;
  WeightRule weights_;
  FamilyRule family_;
  std::optional<Realization> realization_;
};

// leopardi | frobenius | operator | trace
std::optional<QuotientScheme> builtin_scheme(std::string_view name);
std::vector<QuotientScheme> builtin_schemes();

Matrix left_quotient(const QuotientScheme& scheme, const Matrix& A, const Matrix& M,
                     const FactorShape& shape);

// (1 / nnz(A)) sum over nz(A) of M_{i,j} / A_{i,j}.
Matrix leopardi_quotient(const Matrix& A, const Matrix& M, const FactorShape& shape);

// sum over nz(A) of W(A)_{i,j} M_{i,j} / A_{i,j}. Throws InvalidWeightsError
// unless the weights over nz(A) sum to 1 within 1e-12.
Matrix weighted_quotient(const WeightRule& w, const Matrix& A, const Matrix& M,
                         const FactorShape& shape);

// conj(A) / ||A||_F^2 ∘ M, the minimizer of ||M - A ⊗ C||_F over C.
Matrix frobenius_quotient(const Matrix& A, const Matrix& M, const FactorShape& shape);

// B_{i,j} = tr(M~_{ij}^T A) / ||A||_F^2 with M~_{ij} = (I_m ⊗ e_{i,s})^T M (I_n ⊗ e_{j,t}).
// Real inputs only: throws UnsupportedInputError for complex A or M.
Matrix vanloan_factor(const Matrix& A, const Matrix& M, const FactorShape& shape);

// (conj(u_1) v_1^T / ||A||_O) ∘ M with (u_1, v_1) the leading singular pair.
Matrix operator_quotient(const Matrix& A, const Matrix& M, const FactorShape& shape);

// R.q_of(A) ∘ M. Throws InvalidRealizationError unless Q(A) has A's shape and
// Q(A) ∘ A = 1 within 1e-10.
Matrix uniform_quotient(const Realization& r, const Matrix& A, const Matrix& M,
                        const FactorShape& shape);

// sum_{u,u',v,v'} e_{u'} e_u^T (Q_{u,v,u',v'}(A) ∘ M) e_v e_{v'}^T.
Matrix linear_quotient(const FamilyRule& family, const Matrix& A, const Matrix& M,
                       const FactorShape& shape);

// M - A ⊗ (A ⊘ M).
Matrix remainder(const QuotientScheme& scheme, const Matrix& A, const Matrix& M,
                 const FactorShape& shape);

// ||remainder||_F <= atol + rtol ||M||_F.
bool is_divisor(const QuotientScheme& scheme, const Matrix& A, const Matrix& M,
                const FactorShape& shape, Tolerance tol = {});

// The ms x ms perfect shuffle P with P (a ⊗ b) = b ⊗ a for a in F^m, b in F^s.
Matrix commutation_matrix(std::size_t m, std::size_t s);

// M ⊘_R B for M (m s) x (n t) and nonzero B s x t, computed as the left
// quotient B ⊘ (P_{m,s} M P_{n,t}^T) with the factor roles swapped.
Matrix right_quotient(const QuotientScheme& scheme, const Matrix& M, const Matrix& B,
                      const FactorShape& shape);

// Closed-form Q(A) for uniform schemes; nullopt for linear schemes.
std::optional<Matrix> realization_of(const QuotientScheme& scheme, const Matrix& A);

// Q(A) read off the quotient itself: Q(A)_{j,k} = A ⊘ E_{j,k} with s = t = 1.
Matrix extract_realization(const QuotientScheme& scheme, const Matrix& A);

}  // namespace kronq
