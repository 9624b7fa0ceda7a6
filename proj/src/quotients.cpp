#include "kronq/quotients.hpp"

#include <cmath>
#include <string>

#include "kronq/partial_frobenius.hpp"
#include "kronq/svd.hpp"

namespace kronq {

namespace {

constexpr double kWeightSumTol = 1e-12;
constexpr double kRealizationTol = 1e-10;
constexpr double kFamilyTol = 1e-10;
// |tr(A)| at or below this fraction of ||A||_F counts as a vanishing trace.
constexpr double kTraceTol = 1e-14;

void require_divisor(const Matrix& A) {
  if (nnz(A) == 0) throw ZeroDivisorError("Kronecker quotient by the zero matrix");
}

void require_operands(const Matrix& A, const Matrix& M, const FactorShape& shape) {
  shape.require_outer(A, "divisor");
  shape.require_compatible(M, "dividend");
  require_divisor(A);
}

Matrix frobenius_q(const Matrix& A) {
  const double norm = frobenius_norm(A);
  return conjugate(A) / norm / norm;
}

Matrix operator_q(const Matrix& A) {
  const LeadingPair lp = leading_pair(A);
  return conjugate(lp.u1) * transpose(lp.v1) / lp.sigma1;
}

Matrix weighted_q(const Matrix& W, const Matrix& A) {
  return Matrix::generate(A.rows(), A.cols(), [&](std::size_t i, std::size_t j) {
    return std::abs(A(i, j)) < kNonzeroThreshold ? Complex{} : W(i, j) / A(i, j);
  });
}

Matrix checked_weights(const WeightRule& w, const Matrix& A) {
  Matrix W = w(A);
  if (!W.same_shape(A)) throw InvalidWeightsError("weight matrix shape differs from divisor");
  Complex sum{};
  for (const auto& [i, j] : nz(A).positions) sum += W(i, j);
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw InvalidWeightsError("weights over nz(A) sum to " + std::to_string(sum.real()) +
                              (sum.imag() != 0.0 ? "+" + std::to_string(sum.imag()) + "i" : "") +
                              ", expected 1");
  }
  return W;
}

}  // namespace

NzIndex nz(const Matrix& A) {
  NzIndex out;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (std::abs(A(i, j)) >= kNonzeroThreshold) out.positions.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t nnz(const Matrix& A) { return nz(A).count(); }

namespace weights {

Matrix leopardi(const Matrix& A) {
  const double count = static_cast<double>(nnz(A));
  return Matrix::generate(A.rows(), A.cols(), [&](std::size_t i, std::size_t j) {
    return std::abs(A(i, j)) < kNonzeroThreshold ? 0.0 : 1.0 / count;
  });
}

Matrix frobenius(const Matrix& A) {
  const double norm = frobenius_norm(A);
  return Matrix::generate(A.rows(), A.cols(), [&](std::size_t i, std::size_t j) {
    const double scaled = std::abs(A(i, j)) / norm;
    return scaled * scaled;
  });
}

}  // namespace weights

Realization leopardi_realization() {
  return {"leopardi", [](const Matrix& A) { return weighted_q(weights::leopardi(A), A); }};
}

Realization weighted_realization(WeightRule w, std::string name) {
  return {"weighted(" + name + ")",
          [w = std::move(w)](const Matrix& A) { return weighted_q(checked_weights(w, A), A); }};
}

Realization frobenius_realization() { return {"frobenius", frobenius_q}; }

Realization operator_realization() { return {"operator", operator_q}; }

Realization trace_realization_rule() { return {"trace", trace_realization}; }

Matrix trace_realization(const Matrix& A) {
  const Complex tr = trace(A);
  if (std::abs(tr) <= kTraceTol * frobenius_norm(A)) {
    throw SingularRealizationError(
        "trace realization Q(A) = I/tr(A) is restricted to tr(A) != 0");
  }
  return Matrix::identity(A.rows()) / tr;
}

LinearFamily::LinearFamily(const Matrix& A, std::size_t s, std::size_t t,
                           std::vector<Matrix> components)
    : s_(s), t_(t), components_(std::move(components)) {
  const std::size_t st = s * t;
  if (components_.size() != st * st) {
    throw InvalidFamilyError("linear family needs " + std::to_string(st * st) +
                             " components, got " + std::to_string(components_.size()));
  }
  for (std::size_t u = 0; u < s; ++u) {
    for (std::size_t v = 0; v < t; ++v) {
      for (std::size_t u2 = 0; u2 < s; ++u2) {
        for (std::size_t v2 = 0; v2 < t; ++v2) {
          const Matrix& q = component(u, v, u2, v2);
          const std::string label = "Q_{" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                                    "," + std::to_string(u2 + 1) + "," +
                                    std::to_string(v2 + 1) + "}";
          if (!q.same_shape(A)) {
            throw InvalidFamilyError(label + " does not have the divisor's shape");
          }
          const double expected = (u == u2 && v == v2) ? 1.0 : 0.0;
          const Complex got = pfp_scalar(q, A);
          if (std::abs(got - expected) > kFamilyTol) {
            throw InvalidFamilyError(label + "(A) ∘ A = " + std::to_string(got.real()) +
                                     (got.imag() != 0.0
                                          ? "+" + std::to_string(got.imag()) + "i"
                                          : "") +
                                     ", expected " + std::to_string(expected));
          }
        }
      }
    }
  }
}

FamilyRule uniform_family(Realization r) {
  return [r = std::move(r)](const Matrix& A, std::size_t s, std::size_t t) {
    const Matrix q = r.q_of(A);
    const Matrix zero = Matrix::zeros(A.rows(), A.cols());
    std::vector<Matrix> out;
    out.reserve(s * t * s * t);
    for (std::size_t u = 0; u < s; ++u) {
      for (std::size_t v = 0; v < t; ++v) {
        for (std::size_t u2 = 0; u2 < s; ++u2) {
          for (std::size_t v2 = 0; v2 < t; ++v2) out.push_back(u == u2 && v == v2 ? q : zero);
        }
      }
    }
    return out;
  };
}

QuotientScheme QuotientScheme::leopardi() {
  QuotientScheme s(SchemeKind::leopardi, "leopardi");
  s.realization_ = leopardi_realization();
  return s;
}

QuotientScheme QuotientScheme::frobenius() {
  QuotientScheme s(SchemeKind::frobenius, "frobenius");
  s.realization_ = frobenius_realization();
  return s;
}

QuotientScheme QuotientScheme::operator_norm() {
  QuotientScheme s(SchemeKind::operator_norm, "operator");
  s.realization_ = operator_realization();
  return s;
}

QuotientScheme QuotientScheme::trace() {
  QuotientScheme s(SchemeKind::trace, "trace");
  s.realization_ = trace_realization_rule();
  return s;
}

QuotientScheme QuotientScheme::weighted(WeightRule w, std::string name) {
  QuotientScheme s(SchemeKind::weighted, "weighted(" + name + ")");
  s.realization_ = weighted_realization(w, name);
  s.weights_ = std::move(w);
  return s;
}

QuotientScheme QuotientScheme::uniform(Realization r) {
  QuotientScheme s(SchemeKind::uniform, "uniform(" + r.name + ")");
  s.realization_ = std::move(r);
  return s;
}

QuotientScheme QuotientScheme::linear(FamilyRule f, std::string name) {
  QuotientScheme s(SchemeKind::linear, "linear(" + name + ")");
  s.family_ = std::move(f);
  return s;
}

std::optional<QuotientScheme> builtin_scheme(std::string_view name) {
  if (name == "leopardi") return QuotientScheme::leopardi();
  if (name == "frobenius") return QuotientScheme::frobenius();
  if (name == "operator") return QuotientScheme::operator_norm();
  if (name == "trace") return QuotientScheme::trace();
  return std::nullopt;
}

std::vector<QuotientScheme> builtin_schemes() {
  return {QuotientScheme::leopardi(), QuotientScheme::frobenius(),
          QuotientScheme::operator_norm(), QuotientScheme::trace()};
}

Matrix left_quotient(const QuotientScheme& scheme, const Matrix& A, const Matrix& M,
                     const FactorShape& shape) {
  switch (scheme.kind()) {
    case SchemeKind::leopardi:
      return leopardi_quotient(A, M, shape);
    case SchemeKind::weighted:
      return weighted_quotient(scheme.weight_rule(), A, M, shape);
    case SchemeKind::frobenius:
      return frobenius_quotient(A, M, shape);
    case SchemeKind::operator_norm:
      return operator_quotient(A, M, shape);
    case SchemeKind::trace:
    case SchemeKind::uniform:
      return uniform_quotient(*scheme.realization(), A, M, shape);
    case SchemeKind::linear:
      return linear_quotient(scheme.family_rule(), A, M, shape);
  }
  throw ConfigurationError("unknown quotient scheme");
}

Matrix leopardi_quotient(const Matrix& A, const Matrix& M, const FactorShape& shape) {
  require_operands(A, M, shape);
  const NzIndex index = nz(A);
  Matrix sum = Matrix::zeros(shape.s(), shape.t());
  for (const auto& [i, j] : index.positions) sum = sum + block(M, shape, i + 1, j + 1) / A(i, j);
  return sum / static_cast<double>(index.count());
}

Matrix weighted_quotient(const WeightRule& w, const Matrix& A, const Matrix& M,
                         const FactorShape& shape) {
  require_operands(A, M, shape);
  const Matrix W = checked_weights(w, A);
  Matrix sum = Matrix::zeros(shape.s(), shape.t());
  for (const auto& [i, j] : nz(A).positions) {
    sum = sum + (W(i, j) / A(i, j)) * block(M, shape, i + 1, j + 1);
  }
  return sum;
}

Matrix frobenius_quotient(const Matrix& A, const Matrix& M, const FactorShape& shape) {
  require_operands(A, M, shape);
  return pfp(frobenius_q(A), M, shape);
}

Matrix vanloan_factor(const Matrix& A, const Matrix& M, const FactorShape& shape) {
  require_operands(A, M, shape);
  if (!A.is_real() || !M.is_real()) {
    throw UnsupportedInputError(
        "vanloan_factor is defined for real matrices; use frobenius_quotient for complex input");
  }
  const double norm = frobenius_norm(A);
  const Matrix Im = Matrix::identity(shape.m());
  const Matrix In = Matrix::identity(shape.n());
  return Matrix::generate(shape.s(), shape.t(), [&](std::size_t i, std::size_t j) {
    const Matrix left = kron(Im, Matrix::basis_vector(i + 1, shape.s()));
    const Matrix right = kron(In, Matrix::basis_vector(j + 1, shape.t()));
    const Matrix tilde = transpose(left) * M * right;
    return trace(transpose(tilde) * A) / norm / norm;
  });
}

Matrix operator_quotient(const Matrix& A, const Matrix& M, const FactorShape& shape) {
  require_operands(A, M, shape);
  return pfp(operator_q(A), M, shape);
}

Matrix uniform_quotient(const Realization& r, const Matrix& A, const Matrix& M,
                        const FactorShape& shape) {
  require_operands(A, M, shape);
  const Matrix q = r.q_of(A);
  if (!q.same_shape(A)) {
    throw InvalidRealizationError("realization '" + r.name + "' changed the divisor's shape");
  }
  const Complex unit = pfp_scalar(q, A);
  if (std::abs(unit - 1.0) > kRealizationTol) {
    throw InvalidRealizationError("realization '" + r.name + "' has Q(A) ∘ A = " +
                                  std::to_string(unit.real()) + ", expected 1");
  }
  return pfp(q, M, shape);
}

Matrix linear_quotient(const FamilyRule& family, const Matrix& A, const Matrix& M,
                       const FactorShape& shape) {
  require_operands(A, M, shape);
  const std::size_t s = shape.s();
  const std::size_t t = shape.t();
  const LinearFamily f(A, s, t, family(A, s, t));
  std::vector<Complex> out(s * t);
  for (std::size_t u = 0; u < s; ++u) {
    for (std::size_t v = 0; v < t; ++v) {
      for (std::size_t u2 = 0; u2 < s; ++u2) {
        for (std::size_t v2 = 0; v2 < t; ++v2) {
          const Matrix& q = f.component(u, v, u2, v2);
          Complex entry{};
          for (std::size_t j = 0; j < shape.m(); ++j) {
            for (std::size_t k = 0; k < shape.n(); ++k) entry += q(j, k) * M(j * s + u, k * t + v);
          }
          out[u2 * t + v2] += entry;
        }
      }
    }
  }
  return Matrix(s, t, std::move(out));
}

Matrix remainder(const QuotientScheme& scheme, const Matrix& A, const Matrix& M,
                 const FactorShape& shape) {
  return M - kron(A, left_quotient(scheme, A, M, shape));
}

bool is_divisor(const QuotientScheme& scheme, const Matrix& A, const Matrix& M,
                const FactorShape& shape, Tolerance tol) {
  const double residual = frobenius_norm(remainder(scheme, A, M, shape));
  return residual <= tol.atol + tol.rtol * frobenius_norm(M);
}

Matrix commutation_matrix(std::size_t m, std::size_t s) {
  const std::size_t size = Matrix::checked_size(m, s);
  return Matrix::generate(size, size, [&](std::size_t r, std::size_t c) {
    // Column c = i s + p (a_i b_p) maps to row p m + i.
    const std::size_t i = c / s;
    const std::size_t p = c % s;
    return r == p * m + i ? 1.0 : 0.0;
  });
}

Matrix right_quotient(const QuotientScheme& scheme, const Matrix& M, const Matrix& B,
                      const FactorShape& shape) {
  shape.require_compatible(M, "dividend");
  if (B.rows() != shape.s() || B.cols() != shape.t()) {
    throw ShapeError("right divisor is " + std::to_string(B.rows()) + "x" +
                     std::to_string(B.cols()) + " but the shape requires " +
                     std::to_string(shape.s()) + "x" + std::to_string(shape.t()));
  }
  require_divisor(B);
  const Matrix shuffled = commutation_matrix(shape.m(), shape.s()) * M *
                          transpose(commutation_matrix(shape.n(), shape.t()));
  return left_quotient(scheme, B, shuffled, shape.swapped());
}

std::optional<Matrix> realization_of(const QuotientScheme& scheme, const Matrix& A) {
  if (!scheme.realization()) return std::nullopt;
  require_divisor(A);
  return scheme.realization()->q_of(A);
}

Matrix extract_realization(const QuotientScheme& scheme, const Matrix& A) {
  const FactorShape shape(A.rows(), A.cols(), 1, 1);
  return Matrix::generate(A.rows(), A.cols(), [&](std::size_t j, std::size_t k) {
    return left_quotient(scheme, A, Matrix::unit(A.rows(), A.cols(), j + 1, k + 1), shape)(0, 0);
  });
}

}  // namespace kronq
