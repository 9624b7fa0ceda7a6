#pragma once

// Reproducible random inputs. Each trial owns a generator seeded from
// (seed, trial index) through std::seed_seq, so trials are independent of
// evaluation order. Only std::mt19937_64 raw output is consumed, which keeps
// the streams identical across standard library implementations.

#include <cstddef>
#include <cstdint>
#include <random>

#include "kronq/matrix.hpp"

namespace kronq {

class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  // Uniform on [0, 1).
  double uniform();
  // Uniform on [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi);
  // Real and imaginary parts uniform on [-1, 1).
  Complex entry();
  Complex real_entry();

  Matrix matrix(std::size_t rows, std::size_t cols);
  Matrix real_matrix(std::size_t rows, std::size_t cols);
  // Redraws until ||A||_F >= 1e-6.
  Matrix nonzero_matrix(std::size_t rows, std::size_t cols);
  // A nonzero draw with a random subset of entries zeroed; at least one
  // entry survives.
  Matrix sparse_matrix(std::size_t rows, std::size_t cols);

 private:
  std::mt19937_64 engine_;
};

}  // namespace kronq
