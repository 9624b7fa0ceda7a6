#pragma once

// Reference computations written straight from the index definitions. They
// share no code with the library beyond the Matrix container.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "kronq/matrix.hpp"
#include "kronq/partial_frobenius.hpp"
#include "kronq/quotients.hpp"
#include "kronq/random.hpp"

namespace oracle {

using kronq::Complex;
using kronq::Matrix;

inline Matrix kron(const Matrix& A, const Matrix& B) {
  std::vector<Complex> out(A.rows() * B.rows() * A.cols() * B.cols());
  const std::size_t cols = A.cols() * B.cols();
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      for (std::size_t p = 0; p < B.rows(); ++p)
        for (std::size_t q = 0; q < B.cols(); ++q)
          out[(i * B.rows() + p) * cols + j * B.cols() + q] = A(i, j) * B(p, q);
  return Matrix(A.rows() * B.rows(), cols, std::move(out));
}

// (A ∘ M)_{u,v} = sum_{j,k} A_{j,k} M_{j s + u, k t + v}, A in the outer role.
inline Matrix pfp(const Matrix& A, const Matrix& M) {
  const std::size_t s = M.rows() / A.rows();
  const std::size_t t = M.cols() / A.cols();
  std::vector<Complex> out(s * t);
  for (std::size_t u = 0; u < s; ++u)
    for (std::size_t v = 0; v < t; ++v) {
      Complex sum = 0.0;
      for (std::size_t j = 0; j < A.rows(); ++j)
        for (std::size_t k = 0; k < A.cols(); ++k) sum += A(j, k) * M(j * s + u, k * t + v);
      out[u * t + v] = sum;
    }
  return Matrix(s, t, std::move(out));
}

inline double max_abs_diff(const Matrix& X, const Matrix& Y) {
  double worst = 0.0;
  for (std::size_t r = 0; r < X.rows(); ++r)
    for (std::size_t c = 0; c < X.cols(); ++c) worst = std::max(worst, std::abs(X(r, c) - Y(r, c)));
  return worst;
}

inline double rel(const Matrix& X, const Matrix& Y) {
  double diff = 0.0, nx = 0.0, ny = 0.0;
  for (std::size_t r = 0; r < X.rows(); ++r)
    for (std::size_t c = 0; c < X.cols(); ++c) {
      diff += std::norm(X(r, c) - Y(r, c));
      nx += std::norm(X(r, c));
      ny += std::norm(Y(r, c));
    }
  const double scale = std::sqrt(std::max(nx, ny));
  return scale == 0.0 ? 0.0 : std::sqrt(diff) / scale;
}

// Eigenvalues of a real symmetric matrix by cyclic two-sided Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t k = 0; k < n; ++k) ev[k] = a[k * n + k];
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

// Singular values from the eigenvalues of A*A, via its real 2n x 2n embedding
// [[Re, -Im], [Im, Re]] whose spectrum is that of A*A with every value doubled.
inline std::vector<double> singular_values(const Matrix& A) {
  const std::size_t n = A.cols();
  std::vector<Complex> h(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < A.rows(); ++k) sum += std::conj(A(k, i)) * A(k, j);
      h[i * n + j] = sum;
    }
  const std::size_t N = 2 * n;
  std::vector<double> e(N * N);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      e[i * N + j] = h[i * n + j].real();
      e[(i + n) * N + j + n] = h[i * n + j].real();
      e[i * N + j + n] = -h[i * n + j].imag();
      e[(i + n) * N + j] = h[i * n + j].imag();
    }
  const std::vector<double> ev = symmetric_eigenvalues(std::move(e), N);
  std::vector<double> sigma;
  for (std::size_t k = 0; k < std::min(A.rows(), n); ++k) {
    sigma.push_back(std::sqrt(std::max(0.0, ev[2 * k])));
  }
  return sigma;
}

// Applies the shuffle (i, p) -> (p, i) to the rows and columns of an
// (m s) x (n t) matrix, turning A ⊗ B into B ⊗ A.
inline Matrix shuffle(const Matrix& M, std::size_t m, std::size_t n, std::size_t s, std::size_t t) {
  return Matrix::generate(M.rows(), M.cols(), [&](std::size_t r, std::size_t c) {
    const std::size_t p = r / m, i = r % m;
    const std::size_t q = c / n, j = c % n;
    return M(i * s + p, j * t + q);
  });
}

// A linear family that differs from the uniform Frobenius one by a term
// annihilated by A: R = X - (X ∘ A) Q_F(A). Pure in (A, s, t).
inline std::vector<Matrix> perturbed_family(const Matrix& A, std::size_t s, std::size_t t) {
  const Matrix qf = kronq::conjugate(A) / std::pow(kronq::frobenius_norm(A), 2);
  kronq::TrialRng rng(A.rows() * 131 + A.cols() * 17 + s * 7 + t, 0);
  std::vector<Matrix> out;
  for (std::size_t u = 0; u < s; ++u)
    for (std::size_t v = 0; v < t; ++v)
      for (std::size_t u2 = 0; u2 < s; ++u2)
        for (std::size_t v2 = 0; v2 < t; ++v2) {
          const Matrix X = rng.matrix(A.rows(), A.cols());
          const Matrix R = X - kronq::pfp_scalar(X, A) * qf;
          out.push_back(u == u2 && v == v2 ? qf + R : R);
        }
  return out;
}

// Weights proportional to i + j (1-based) over nz(A): satisfies the transpose
// condition but not the Kronecker one.
inline Matrix skew_weights(const Matrix& A) {
  double total = 0.0;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (std::abs(A(i, j)) > kronq::kNonzeroThreshold) total += double(i + j + 2);
  return Matrix::generate(A.rows(), A.cols(), [&](std::size_t i, std::size_t j) {
    return std::abs(A(i, j)) > kronq::kNonzeroThreshold ? Complex(double(i + j + 2) / total) : Complex{};
  });
}

// Weights 1 + cos^2(arg A_ij) on nz(A): unchanged by real scaling, moved by k = i.
inline Matrix phase_weights(const Matrix& A) {
  auto raw = [&](std::size_t i, std::size_t j) {
    const double mag = std::abs(A(i, j));
    if (mag <= kronq::kNonzeroThreshold) return 0.0;
    const double c = A(i, j).real() / mag;
    return 1.0 + c * c;
  };
  double total = 0.0;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) total += raw(i, j);
  return Matrix::generate(A.rows(), A.cols(), [&](std::size_t i, std::size_t j) { return Complex(raw(i, j) / total); });
}

}  // namespace oracle
