#pragma once

// Dense complex matrices and the Kronecker product.
//
// Element access through operator() is 0-based and row-major. Functions that
// mirror the block notation of Kronecker algebra (block(), Matrix::unit(),
// Matrix::basis_vector()) take 1-based indices, and their error messages
// report 1-based positions.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "kronq/errors.hpp"

namespace kronq {

using Complex = std::complex<double>;

class Matrix {
 public:
  // Zero-filled rows x cols matrix; both dimensions must be positive.
  Matrix(std::size_t rows, std::size_t cols);
  // Row-major entries; rejects a length mismatch and non-finite values.
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static Matrix constant(std::size_t rows, std::size_t cols, Complex value);
  static Matrix diagonal(std::span<const Complex> values);
  static Matrix diagonal(std::initializer_list<Complex> values);
  // E_{j,k}: a one at 1-based (j, k), zeros elsewhere.
  static Matrix unit(std::size_t rows, std::size_t cols, std::size_t j, std::size_t k);
  // e_{j,m}: the j-th (1-based) standard basis column vector of length m.
  static Matrix basis_vector(std::size_t j, std::size_t m);

  // Builds a matrix from f(r, c) with 0-based r, c.
  template <class F>
  static Matrix generate(std::size_t rows, std::size_t cols, F&& f) {
    std::vector<Complex> entries;
    entries.reserve(checked_size(rows, cols));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) entries.push_back(Complex(f(r, c)));
    }
    return Matrix(rows, cols, std::move(entries));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool same_shape(const Matrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return entries_[r * cols_ + c];
  }
  std::span<const Complex> entries() const noexcept { return entries_; }

  // True when every imaginary part is exactly zero.
  bool is_real() const noexcept;
  // True when every entry is exactly zero.
  bool is_zero() const noexcept;

  // Exact, bitwise-value equality of shape and entries.
  friend bool operator==(const Matrix&, const Matrix&) = default;

  // rows * cols with overflow detection; throws SizeError.
  static std::size_t checked_size(std::size_t rows, std::size_t cols);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

// How an (m s) x (n t) matrix is read as an m x n grid of s x t blocks.
class FactorShape {
 public:
  FactorShape(std::size_t m, std::size_t n, std::size_t s, std::size_t t);

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t s() const noexcept { return s_; }
  std::size_t t() const noexcept { return t_; }
  std::size_t rows() const noexcept { return m_ * s_; }
  std::size_t cols() const noexcept { return n_ * t_; }

  bool compatible(const Matrix& M) const noexcept {
    return M.rows() == rows() && M.cols() == cols();
  }
  // Throws ShapeError naming `what` unless M is compatible.
  void require_compatible(const Matrix& M, const char* what) const;
  // Throws ShapeError unless A is m x n.
  void require_outer(const Matrix& A, const char* what) const;

  // The shape of the transposed matrix: (n, m, t, s).
  FactorShape transposed() const noexcept { return {n_, m_, t_, s_, Unchecked{}}; }
  // Roles of outer and inner factors exchanged: (s, t, m, n).
  FactorShape swapped() const noexcept { return {s_, t_, m_, n_, Unchecked{}}; }

  friend bool operator==(const FactorShape&, const FactorShape&) = default;

 private:
  struct Unchecked {};
  FactorShape(std::size_t m, std::size_t n, std::size_t s, std::size_t t, Unchecked) noexcept
      : m_(m), n_(n), s_(s), t_(t) {}

  std::size_t m_, n_, s_, t_;
};

// Shape (A, M) as the factor shape with A as the outer m x n factor.
// Throws ShapeError when A's dimensions do not divide M's.
FactorShape factor_shape_of(const Matrix& A, const Matrix& M);

Matrix operator+(const Matrix& A, const Matrix& B);
Matrix operator-(const Matrix& A, const Matrix& B);
Matrix operator-(const Matrix& A);
Matrix operator*(const Matrix& A, const Matrix& B);
Matrix operator*(Complex k, const Matrix& A);
Matrix operator*(const Matrix& A, Complex k);
Matrix operator/(const Matrix& A, Complex k);

// (A ⊗ B)_{i s + p, j t + q} = A_{i,j} B_{p,q} (0-based).
Matrix kron(const Matrix& A, const Matrix& B);

// The s x t block in 1-based block row i, block column j.
Matrix block(const Matrix& M, const FactorShape& shape, std::size_t i, std::size_t j);

// Inverse of block(): blocks are given in row-major block order.
Matrix assemble(const FactorShape& shape, std::span<const Matrix> blocks);

Matrix transpose(const Matrix& A);
Matrix conjugate(const Matrix& A);
Matrix adjoint(const Matrix& A);

Complex trace(const Matrix& A);
double frobenius_norm(const Matrix& A);
// Partial-pivot LU; exact zero pivots give a zero determinant.
Complex determinant(const Matrix& A);

// Entrywise |a - b| <= atol + rtol * max(|a|, |b|).
struct Tolerance {
  double atol = 1e-12;
  double rtol = 1e-10;
};

bool approx_equal(const Matrix& A, const Matrix& B, Tolerance tol = {});

// ||A - B||_F / max(||A||_F, ||B||_F); zero when both are zero.
double relative_difference(const Matrix& A, const Matrix& B);

}  // namespace kronq
