#pragma once

#include "kronq/matrix.hpp"

namespace kronq {

// Partial Frobenius product A ∘ M for A m x n and M (m s) x (n t):
//
//   (A ∘ M)_{u,v} = sum_{j,k} A_{j,k} M_{j s + u, k t + v}
//
// The argument whose dimensions divide the other's plays the role of A, so
// pfp(A, M) == pfp(M, A). Equal shapes give a 1 x 1 result. No conjugation is
// applied. Throws ShapeError when neither shape divides the other.
Matrix pfp(const Matrix& X, const Matrix& Y);

// pfp with the roles fixed by `shape`: A is m x n and M is (m s) x (n t).
Matrix pfp(const Matrix& A, const Matrix& M, const FactorShape& shape);

// The bilinear form sum_{j,k} A_{j,k} C_{j,k} for equally shaped A and C.
Complex pfp_scalar(const Matrix& A, const Matrix& C);

}  // namespace kronq
