#include "doctest.h"

#include <cmath>
#include <cstring>

#include "kronq/errors.hpp"
#include "kronq/random.hpp"
#include "kronq/svd.hpp"
#include "support/oracles.hpp"

using namespace kronq;

namespace {

double unitarity_error(const Matrix& U) {
  return frobenius_norm(adjoint(U) * U - Matrix::identity(U.cols()));
}

void check_invariants(const Matrix& A) {
  const SvdResult r = svd(A);
  REQUIRE(r.u.rows() == A.rows());
  REQUIRE(r.u.cols() == A.rows());
  REQUIRE(r.v.rows() == A.cols());
  REQUIRE(r.v.cols() == A.cols());
  REQUIRE(r.sigma.size() == std::min(A.rows(), A.cols()));
  CHECK(frobenius_norm(reconstruct(r) - A) <= 1e-9 * std::max(1.0, frobenius_norm(A)));
  CHECK(unitarity_error(r.u) <= 1e-10);
  CHECK(unitarity_error(r.v) <= 1e-10);
  for (std::size_t k = 0; k < r.sigma.size(); ++k) {
    CHECK(r.sigma[k] >= 0.0);
    if (k > 0) CHECK(r.sigma[k] <= r.sigma[k - 1]);
  }
  // Phase rule: the largest entry of each v_k is real and positive.
  for (std::size_t k = 0; k < r.v.cols(); ++k) {
    double biggest = 0.0;
    for (std::size_t i = 0; i < r.v.rows(); ++i) biggest = std::max(biggest, std::abs(r.v(i, k)));
    std::size_t anchor = 0;
    while (std::abs(r.v(anchor, k)) < biggest * (1.0 - 1e-12)) ++anchor;
    CHECK(r.v(anchor, k).imag() == 0.0);
    CHECK(r.v(anchor, k).real() > 0.0);
  }
}

bool bit_identical(const Matrix& X, const Matrix& Y) {
  return X.same_shape(Y) &&
         std::memcmp(X.entries().data(), Y.entries().data(), X.entries().size_bytes()) == 0;
}

}  // namespace

TEST_CASE("svd examples") {
  const SvdResult d = svd(Matrix::diagonal({3.0, 1.0}));
  CHECK(d.u == Matrix::identity(2));
  CHECK(d.v == Matrix::identity(2));
  CHECK(d.sigma == std::vector<double>{3.0, 1.0});

  const Matrix N{{0.0, 2.0}, {0.0, 0.0}};
  const SvdResult n = svd(N);
  CHECK(n.sigma[0] == doctest::Approx(2.0));
  CHECK(n.sigma[1] == 0.0);
  const LeadingPair lp = leading_pair(N);
  CHECK(oracle::max_abs_diff(lp.u1, Matrix::basis_vector(1, 2)) < 1e-15);
  CHECK(oracle::max_abs_diff(lp.v1, Matrix::basis_vector(2, 2)) < 1e-15);
  CHECK(operator_norm(N) == doctest::Approx(2.0));

  const SvdResult z = svd(Matrix(2, 3));
  CHECK(z.sigma == std::vector<double>{0.0, 0.0});
  CHECK(z.u == Matrix::identity(2));
  CHECK(z.v == Matrix::identity(3));
  CHECK(operator_norm(Matrix(2, 3)) == 0.0);
  CHECK_THROWS_AS(leading_pair(Matrix(2, 3)), DegenerateInputError);

  CHECK(operator_norm(Matrix::identity(4)) == doctest::Approx(1.0));
  const LeadingPair dp = leading_pair(Matrix::diagonal({2.0, 1.0}));
  CHECK(dp.sigma1 == doctest::Approx(2.0));
  CHECK(oracle::max_abs_diff(dp.u1, Matrix::basis_vector(1, 2)) < 1e-15);
  CHECK(oracle::max_abs_diff(dp.v1, Matrix::basis_vector(1, 2)) < 1e-15);
}

TEST_CASE("svd invariants on random complex matrices") {
  for (std::size_t trial = 0; trial < 200; ++trial) {
    TrialRng rng(29, trial);
    const Matrix A = rng.matrix(rng.index(1, 16), rng.index(1, 16));
    check_invariants(A);
  }
}

TEST_CASE("svd of rank-deficient and structured matrices") {
  TrialRng rng(31, 0);
  const Matrix x = rng.matrix(5, 1), y = rng.matrix(1, 4);
  check_invariants(x * y);
  CHECK(numerical_rank(x * y) == 1);
  check_invariants(kron(rng.matrix(2, 3), rng.matrix(3, 2)));
  check_invariants(Matrix::constant(4, 4, 1.0));
  CHECK(numerical_rank(Matrix::constant(4, 4, 1.0)) == 1);
  check_invariants(Matrix::identity(5));
  check_invariants(Matrix(3, 1, {0.0, Complex(0, 2), 0.0}));
  check_invariants(Matrix::unit(3, 4, 2, 3));
  CHECK(numerical_rank(Matrix::identity(3)) == 3);
  CHECK(has_degenerate_leading_value(svd(Matrix::identity(2))));
  CHECK_FALSE(has_degenerate_leading_value(svd(Matrix::diagonal({2.0, 1.0}))));
}

TEST_CASE("sigma agrees with the eigenvalue oracle") {
  for (std::size_t trial = 0; trial < 100; ++trial) {
    TrialRng rng(37, trial);
    const Matrix A = rng.matrix(rng.index(1, 8), rng.index(1, 8));
    const std::vector<double> sigma = svd(A).sigma;
    const std::vector<double> expected = oracle::singular_values(A);
    REQUIRE(sigma.size() == expected.size());
    for (std::size_t k = 0; k < sigma.size(); ++k) {
      CHECK(std::abs(sigma[k] - expected[k]) <= 1e-8 * std::max(expected[0], 1e-300));
    }
  }
}

TEST_CASE("leading pair") {
  for (std::size_t trial = 0; trial < 50; ++trial) {
    TrialRng rng(41, trial);
    const Matrix A = rng.nonzero_matrix(rng.index(1, 5), rng.index(1, 5));
    const LeadingPair lp = leading_pair(A);
    const Complex value = (adjoint(lp.u1) * A * lp.v1)(0, 0);
    CHECK(std::abs(value - lp.sigma1) <= 1e-9 * lp.sigma1);
    const LeadingPair scaled = leading_pair(2.5 * A);
    CHECK(scaled.sigma1 == doctest::Approx(2.5 * lp.sigma1).epsilon(1e-12));
    CHECK(oracle::max_abs_diff(scaled.u1, lp.u1) < 1e-10);
    CHECK(oracle::max_abs_diff(scaled.v1, lp.v1) < 1e-10);
  }
}

TEST_CASE("svd is bit deterministic") {
  for (std::size_t trial = 0; trial < 20; ++trial) {
    TrialRng rng(43, trial);
    const Matrix A = rng.matrix(rng.index(1, 10), rng.index(1, 10));
    const SvdResult a = svd(A), b = svd(A);
    CHECK(bit_identical(a.u, b.u));
    CHECK(bit_identical(a.v, b.v));
    CHECK(std::memcmp(a.sigma.data(), b.sigma.data(), a.sigma.size() * sizeof(double)) == 0);
  }
}
