#include "kronq/random.hpp"

#include <array>
#include <vector>

namespace kronq {

namespace {

constexpr double kMinNorm = 1e-6;

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  engine_.seed(seq);
}

double TrialRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t TrialRng::index(std::size_t lo, std::size_t hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  const auto k = static_cast<std::size_t>(uniform() * span);
  return lo + (k > hi - lo ? hi - lo : k);
}

Complex TrialRng::entry() {
  const double re = 2.0 * uniform() - 1.0;
  const double im = 2.0 * uniform() - 1.0;
  return {re, im};
}

Complex TrialRng::real_entry() { return {2.0 * uniform() - 1.0, 0.0}; }

Matrix TrialRng::matrix(std::size_t rows, std::size_t cols) {
  return Matrix::generate(rows, cols, [&](std::size_t, std::size_t) { return entry(); });
}

Matrix TrialRng::real_matrix(std::size_t rows, std::size_t cols) {
  return Matrix::generate(rows, cols, [&](std::size_t, std::size_t) { return real_entry(); });
}

Matrix TrialRng::nonzero_matrix(std::size_t rows, std::size_t cols) {
  for (;;) {
    Matrix A = matrix(rows, cols);
    if (frobenius_norm(A) >= kMinNorm) return A;
  }
}

Matrix TrialRng::sparse_matrix(std::size_t rows, std::size_t cols) {
  for (;;) {
    const Matrix dense = nonzero_matrix(rows, cols);
    std::vector<bool> keep(dense.size());
    for (std::size_t k = 0; k < keep.size(); ++k) keep[k] = uniform() < 0.5;
    keep[index(0, keep.size() - 1)] = true;
    Matrix A = Matrix::generate(rows, cols, [&](std::size_t r, std::size_t c) {
      return keep[r * cols + c] ? dense(r, c) : Complex{};
    });
    if (frobenius_norm(A) >= kMinNorm) return A;
  }
}

}  // namespace kronq
