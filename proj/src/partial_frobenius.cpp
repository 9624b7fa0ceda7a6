#include "kronq/partial_frobenius.hpp"

#include <string>

namespace kronq {

namespace {

bool divides(const Matrix& small, const Matrix& large) {
  return large.rows() % small.rows() == 0 && large.cols() % small.cols() == 0;
}

}  // namespace

Matrix pfp(const Matrix& A, const Matrix& M, const FactorShape& shape) {
  shape.require_outer(A, "partial Frobenius factor");
  shape.require_compatible(M, "partial Frobenius operand");
  const std::size_t s = shape.s();
  const std::size_t t = shape.t();
  std::vector<Complex> out(s * t);
  for (std::size_t j = 0; j < shape.m(); ++j) {
    for (std::size_t k = 0; k < shape.n(); ++k) {
      const Complex a = A(j, k);
      if (a == Complex{}) continue;
      for (std::size_t u = 0; u < s; ++u) {
        for (std::size_t v = 0; v < t; ++v) out[u * t + v] += a * M(j * s + u, k * t + v);
      }
    }
  }
  return Matrix(s, t, std::move(out));
}

Matrix pfp(const Matrix& X, const Matrix& Y) {
  if (divides(X, Y)) return pfp(X, Y, factor_shape_of(X, Y));
  if (divides(Y, X)) return pfp(Y, X, factor_shape_of(Y, X));
  throw ShapeError("partial Frobenius product undefined for " + std::to_string(X.rows()) +
                   "x" + std::to_string(X.cols()) + " and " + std::to_string(Y.rows()) +
                   "x" + std::to_string(Y.cols()));
}

Complex pfp_scalar(const Matrix& A, const Matrix& C) {
  if (!A.same_shape(C)) {
    throw ShapeError("pfp_scalar requires equal shapes, got " + std::to_string(A.rows()) +
                     "x" + std::to_string(A.cols()) + " and " + std::to_string(C.rows()) +
                     "x" + std::to_string(C.cols()));
  }
  Complex sum{};
  for (std::size_t k = 0; k < A.size(); ++k) sum += A.entries()[k] * C.entries()[k];
  return sum;
}

}  // namespace kronq
