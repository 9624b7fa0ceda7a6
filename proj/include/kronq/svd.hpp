#pragma once

// Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//
// The result is made unique by a fixed convention:
//  * singular values are sorted descending; ties keep the sweep's column order;
//  * each right singular vector v_k is rotated by a unit phase so that its
//    largest-magnitude entry (lowest index among magnitudes equal to within a
//    relative 1e-12) is real and positive, and u_k carries the compensating
//    phase so that u_k^* A v_k = sigma_k >= 0;
//  * columns belonging to zero singular values, and the extra columns of the
//    larger factor, are completed by Gram-Schmidt over the standard basis and
//    phase-normalized the same way.
//
// Identical inputs produce bit-identical outputs.

#include <cstddef>
#include <vector>

#include "kronq/matrix.hpp"

namespace kronq {

struct SvdResult {
  Matrix u;                   // m x m unitary
  std::vector<double> sigma;  // min(m, n) values, non-increasing
  Matrix v;                   // n x n unitary
};

// Throws ConvergenceError when the sweep budget (30 sweeps per column) is
// exhausted; the error carries the largest remaining normalized Gram entry.
SvdResult svd(const Matrix& A);

// U Sigma V^* with Sigma the m x n rectangular diagonal embedding of sigma.
Matrix reconstruct(const SvdResult& result);

double operator_norm(const Matrix& A);

struct LeadingPair {
  Matrix u1;  // m x 1
  double sigma1;
  Matrix v1;  // n x 1
};

// Throws DegenerateInputError for the zero matrix.
LeadingPair leading_pair(const Matrix& A);

// Number of singular values above rtol * sigma_1 (zero for the zero matrix).
std::size_t numerical_rank(const Matrix& A, double rtol = 1e-10);

// True when sigma_1 has multiplicity > 1 to within relative tolerance rtol, so
// the leading pair is fixed by convention rather than by A.
bool has_degenerate_leading_value(const SvdResult& result, double rtol = 1e-8);

}  // namespace kronq
