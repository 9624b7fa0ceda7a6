#include "kronq/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace kronq {

namespace {

std::string dims(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

std::string dims(const Matrix& A) { return dims(A.rows(), A.cols()); }

void require_same_shape(const Matrix& A, const Matrix& B, const char* op) {
  if (!A.same_shape(B)) {
    throw ShapeError(std::string(op) + ": shape mismatch " + dims(A) + " vs " + dims(B));
  }
}

}  // namespace

std::size_t Matrix::checked_size(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw ShapeError("matrix dimensions must be positive, got " + dims(rows, cols));
  }
  constexpr std::size_t limit = std::numeric_limits<std::size_t>::max() / sizeof(Complex);
  if (rows > limit / cols) {
    throw SizeError("matrix of size " + dims(rows, cols) + " exceeds the index range");
  }
  return rows * cols;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(checked_size(rows, cols)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != checked_size(rows, cols)) {
    throw ShapeError("expected " + std::to_string(rows * cols) + " entries for a " +
                     dims(rows, cols) + " matrix, got " + std::to_string(entries_.size()));
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const Complex& z = entries_[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValueError("non-finite entry at (" + std::to_string(k / cols + 1) + "," +
                       std::to_string(k % cols + 1) + ")");
    }
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : Matrix([&] {
        if (rows.size() == 0 || rows.begin()->size() == 0) {
          throw ShapeError("matrix literal must be non-empty");
        }
        const std::size_t cols = rows.begin()->size();
        std::vector<Complex> entries;
        entries.reserve(rows.size() * cols);
        for (const auto& row : rows) {
          if (row.size() != cols) throw ShapeError("ragged matrix literal");
          entries.insert(entries.end(), row.begin(), row.end());
        }
        return Matrix(rows.size(), cols, std::move(entries));
      }()) {}

Matrix Matrix::identity(std::size_t n) {
  return generate(n, n, [](std::size_t r, std::size_t c) { return r == c ? 1.0 : 0.0; });
}

Matrix Matrix::constant(std::size_t rows, std::size_t cols, Complex value) {
  return Matrix(rows, cols, std::vector<Complex>(checked_size(rows, cols), value));
}

Matrix Matrix::diagonal(std::span<const Complex> values) {
  const std::size_t n = values.size();
  return generate(n, n, [&](std::size_t r, std::size_t c) {
    return r == c ? values[r] : Complex{};
  });
}

Matrix Matrix::diagonal(std::initializer_list<Complex> values) {
  return diagonal(std::span<const Complex>(values.begin(), values.size()));
}

Matrix Matrix::unit(std::size_t rows, std::size_t cols, std::size_t j, std::size_t k) {
  if (j < 1 || j > rows || k < 1 || k > cols) {
    throw IndexError("E_{" + std::to_string(j) + "," + std::to_string(k) +
                     "} out of range for a " + dims(rows, cols) + " matrix");
  }
  return generate(rows, cols, [&](std::size_t r, std::size_t c) {
    return (r + 1 == j && c + 1 == k) ? 1.0 : 0.0;
  });
}

Matrix Matrix::basis_vector(std::size_t j, std::size_t m) { return unit(m, 1, j, 1); }

bool Matrix::is_real() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Complex& z) { return z.imag() == 0.0; });
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Complex& z) { return z == Complex{}; });
}

FactorShape::FactorShape(std::size_t m, std::size_t n, std::size_t s, std::size_t t)
    : m_(m), n_(n), s_(s), t_(t) {
  if (m == 0 || n == 0 || s == 0 || t == 0) {
    throw ShapeError("factor shape entries must be positive");
  }
  Matrix::checked_size(m, s);
  Matrix::checked_size(n, t);
  Matrix::checked_size(m * s, n * t);
}

void FactorShape::require_compatible(const Matrix& M, const char* what) const {
  if (!compatible(M)) {
    std::ostringstream os;
    os << what << " is " << dims(M) << " but shape (" << m_ << "," << n_ << "," << s_ << ","
       << t_ << ") requires " << dims(rows(), cols());
    throw ShapeError(os.str());
  }
}

void FactorShape::require_outer(const Matrix& A, const char* what) const {
  if (A.rows() != m_ || A.cols() != n_) {
    std::ostringstream os;
    os << what << " is " << dims(A) << " but shape (" << m_ << "," << n_ << "," << s_ << ","
       << t_ << ") requires " << dims(m_, n_);
    throw ShapeError(os.str());
  }
}

FactorShape factor_shape_of(const Matrix& A, const Matrix& M) {
  if (M.rows() % A.rows() != 0 || M.cols() % A.cols() != 0) {
    throw ShapeError("a " + dims(A) + " factor does not divide a " + dims(M) + " matrix");
  }
  return {A.rows(), A.cols(), M.rows() / A.rows(), M.cols() / A.cols()};
}

Matrix operator+(const Matrix& A, const Matrix& B) {
  require_same_shape(A, B, "matrix addition");
  return Matrix::generate(A.rows(), A.cols(),
                          [&](std::size_t r, std::size_t c) { return A(r, c) + B(r, c); });
}

Matrix operator-(const Matrix& A, const Matrix& B) {
  require_same_shape(A, B, "matrix subtraction");
  return Matrix::generate(A.rows(), A.cols(),
                          [&](std::size_t r, std::size_t c) { return A(r, c) - B(r, c); });
}

Matrix operator-(const Matrix& A) {
  return Matrix::generate(A.rows(), A.cols(),
                          [&](std::size_t r, std::size_t c) { return -A(r, c); });
}

Matrix operator*(const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) {
    throw ShapeError("matrix product: " + dims(A) + " times " + dims(B));
  }
  std::vector<Complex> out(Matrix::checked_size(A.rows(), B.cols()));
  for (std::size_t r = 0; r < A.rows(); ++r) {
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const Complex a = A(r, k);
      if (a == Complex{}) continue;
      for (std::size_t c = 0; c < B.cols(); ++c) out[r * B.cols() + c] += a * B(k, c);
    }
  }
  return Matrix(A.rows(), B.cols(), std::move(out));
}

Matrix operator*(Complex k, const Matrix& A) {
  return Matrix::generate(A.rows(), A.cols(),
                          [&](std::size_t r, std::size_t c) { return k * A(r, c); });
}

Matrix operator*(const Matrix& A, Complex k) { return k * A; }

Matrix operator/(const Matrix& A, Complex k) {
  if (k == Complex{}) throw ValueError("division of a matrix by zero");
  return Matrix::generate(A.rows(), A.cols(),
                          [&](std::size_t r, std::size_t c) { return A(r, c) / k; });
}

Matrix kron(const Matrix& A, const Matrix& B) {
  if (A.rows() > std::numeric_limits<std::size_t>::max() / B.rows() ||
      A.cols() > std::numeric_limits<std::size_t>::max() / B.cols()) {
    throw SizeError("Kronecker product of " + dims(A) + " and " + dims(B) +
                    " overflows the index range");
  }
  const std::size_t rows = A.rows() * B.rows();
  const std::size_t cols = A.cols() * B.cols();
  std::vector<Complex> out(Matrix::checked_size(rows, cols));
  const std::size_t s = B.rows();
  const std::size_t t = B.cols();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) {
      const Complex a = A(i, j);
      for (std::size_t p = 0; p < s; ++p) {
        for (std::size_t q = 0; q < t; ++q) {
          out[(i * s + p) * cols + (j * t + q)] = a * B(p, q);
        }
      }
    }
  }
  return Matrix(rows, cols, std::move(out));
}

Matrix block(const Matrix& M, const FactorShape& shape, std::size_t i, std::size_t j) {
  shape.require_compatible(M, "block source");
  if (i < 1 || i > shape.m() || j < 1 || j > shape.n()) {
    throw IndexError("block (" + std::to_string(i) + "," + std::to_string(j) +
                     ") out of range for a " + dims(shape.m(), shape.n()) + " block grid");
  }
  const std::size_t r0 = (i - 1) * shape.s();
  const std::size_t c0 = (j - 1) * shape.t();
  return Matrix::generate(shape.s(), shape.t(), [&](std::size_t p, std::size_t q) {
    return M(r0 + p, c0 + q);
  });
}

Matrix assemble(const FactorShape& shape, std::span<const Matrix> blocks) {
  if (blocks.size() != shape.m() * shape.n()) {
    throw ShapeError("assemble: expected " + std::to_string(shape.m() * shape.n()) +
                     " blocks, got " + std::to_string(blocks.size()));
  }
  for (const Matrix& b : blocks) {
    if (b.rows() != shape.s() || b.cols() != shape.t()) {
      throw ShapeError("assemble: block is " + dims(b) + ", expected " +
                       dims(shape.s(), shape.t()));
    }
  }
  return Matrix::generate(shape.rows(), shape.cols(), [&](std::size_t r, std::size_t c) {
    const Matrix& b = blocks[(r / shape.s()) * shape.n() + c / shape.t()];
    return b(r % shape.s(), c % shape.t());
  });
}

Matrix transpose(const Matrix& A) {
  return Matrix::generate(A.cols(), A.rows(),
                          [&](std::size_t r, std::size_t c) { return A(c, r); });
}

Matrix conjugate(const Matrix& A) {
  return Matrix::generate(A.rows(), A.cols(),
                          [&](std::size_t r, std::size_t c) { return std::conj(A(r, c)); });
}

Matrix adjoint(const Matrix& A) {
  return Matrix::generate(A.cols(), A.rows(),
                          [&](std::size_t r, std::size_t c) { return std::conj(A(c, r)); });
}

Complex trace(const Matrix& A) {
  if (!A.is_square()) throw ShapeError("trace of a non-square " + dims(A) + " matrix");
  Complex sum{};
  for (std::size_t k = 0; k < A.rows(); ++k) sum += A(k, k);
  return sum;
}

double frobenius_norm(const Matrix& A) {
  double scale = 0.0;
  for (const Complex& z : A.entries()) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const Complex& z : A.entries()) sum += std::norm(z / scale);
  return scale * std::sqrt(sum);
}

Complex determinant(const Matrix& A) {
  if (!A.is_square()) throw ShapeError("determinant of a non-square " + dims(A) + " matrix");
  const std::size_t n = A.rows();
  std::vector<Complex> lu(A.entries().begin(), A.entries().end());
  Complex det{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(lu[r * n + k]) > std::abs(lu[pivot * n + k])) pivot = r;
    }
    if (lu[pivot * n + k] == Complex{}) return Complex{};
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu[k * n + c], lu[pivot * n + c]);
      det = -det;
    }
    const Complex p = lu[k * n + k];
    det *= p;
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex f = lu[r * n + k] / p;
      if (f == Complex{}) continue;
      for (std::size_t c = k + 1; c < n; ++c) lu[r * n + c] -= f * lu[k * n + c];
    }
  }
  return det;
}

bool approx_equal(const Matrix& A, const Matrix& B, Tolerance tol) {
  if (!A.same_shape(B)) return false;
  for (std::size_t k = 0; k < A.size(); ++k) {
    const Complex a = A.entries()[k];
    const Complex b = B.entries()[k];
    if (std::abs(a - b) > tol.atol + tol.rtol * std::max(std::abs(a), std::abs(b))) {
      return false;
    }
  }
  return true;
}

double relative_difference(const Matrix& A, const Matrix& B) {
  require_same_shape(A, B, "relative_difference");
  const double scale = std::max(frobenius_norm(A), frobenius_norm(B));
  if (scale == 0.0) return 0.0;
  return frobenius_norm(A - B) / scale;
}

}  // namespace kronq
