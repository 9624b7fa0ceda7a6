#include "doctest.h"

#include <cmath>

#include "kronq/errors.hpp"
#include "kronq/partial_frobenius.hpp"
#include "kronq/quotients.hpp"
#include "kronq/random.hpp"
#include "kronq/svd.hpp"
#include "support/oracles.hpp"

using namespace kronq;

namespace {

std::vector<QuotientScheme> all_schemes() {
  return {QuotientScheme::leopardi(),
          QuotientScheme::frobenius(),
          QuotientScheme::operator_norm(),
          QuotientScheme::trace(),
          QuotientScheme::weighted(weights::frobenius, "W_F"),
          QuotientScheme::uniform(frobenius_realization()),
          QuotientScheme::linear(oracle::perturbed_family, "perturbed")};
}

Matrix draw_divisor(TrialRng& rng, const QuotientScheme& scheme, std::size_t trial) {
  const std::size_t m = rng.index(1, 4);
  const std::size_t n = scheme.kind() == SchemeKind::trace ? m : rng.index(1, 4);
  for (;;) {
    Matrix A = trial % 3 == 2 ? rng.sparse_matrix(m, n) : rng.nonzero_matrix(m, n);
    if (scheme.kind() == SchemeKind::trace && std::abs(trace(A)) < 1e-3 * frobenius_norm(A)) continue;
    return A;
  }
}

Matrix B2() { return Matrix{{1.0, Complex(0, 2)}, {-3.0, 0.5}}; }

}  // namespace

TEST_CASE("nz and weights") {
  const Matrix A{{1.0, 0.0}, {1e-310, Complex(0, 2)}};
  CHECK(nnz(A) == 2);
  CHECK(nz(A).positions == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}});
  CHECK(weights::leopardi(A) == Matrix{{0.5, 0.0}, {0.0, 0.5}});
  CHECK(oracle::max_abs_diff(weights::frobenius(A), Matrix{{0.2, 0.0}, {0.0, 0.8}}) < 1e-15);
}

TEST_CASE("leopardi worked examples") {
  const QuotientScheme L = QuotientScheme::leopardi();
  const FactorShape shape(2, 2, 2, 2);
  const Matrix A{{2.0, 0.0}, {0.0, 4.0}};
  const Matrix M = assemble(shape, std::vector<Matrix>{2.0 * Matrix::identity(2), Matrix(2, 2), Matrix(2, 2),
                                                     8.0 * Matrix::identity(2)});
  CHECK(left_quotient(L, A, M, shape) == Matrix{{1.5, 0.0}, {0.0, 1.5}});

  CHECK(left_quotient(L, Matrix::constant(2, 2, 1.0), Matrix::identity(4), shape) == 0.5 * Matrix::identity(2));

  const Matrix M5{{1.0, 2.0}, {3.0, 4.0}};
  CHECK(oracle::max_abs_diff(left_quotient(L, Matrix{{5.0}}, M5, FactorShape(1, 1, 2, 2)), M5 / 5.0) < 1e-16);

  const Matrix D = Matrix::diagonal({1.0, 2.0});
  const Matrix C{{3.0, 1.0}, {1.0, 3.0}};
  CHECK(oracle::max_abs_diff(left_quotient(L, D, kron(C, B2()), shape), 2.25 * B2()) < 1e-15);
  CHECK(oracle::max_abs_diff(left_quotient(L, D, kron(D, B2()), shape), B2()) < 1e-15);
}

TEST_CASE("weighted quotients") {
  TrialRng rng(53, 0);
  const Matrix A = rng.nonzero_matrix(2, 3);
  const Matrix M = rng.matrix(4, 6);
  const FactorShape shape(2, 3, 2, 2);
  const QuotientScheme WL = QuotientScheme::weighted(weights::leopardi, "W_L");
  const QuotientScheme WF = QuotientScheme::weighted(weights::frobenius, "W_F");
  CHECK(WL.name() == "weighted(W_L)");
  CHECK(oracle::rel(left_quotient(WL, A, M, shape), leopardi_quotient(A, M, shape)) < 1e-14);
  CHECK(oracle::rel(left_quotient(WF, A, M, shape), frobenius_quotient(A, M, shape)) < 1e-14);

  const WeightRule corner = [](const Matrix& X) { return Matrix::unit(X.rows(), X.cols(), 2, 3); };
  CHECK(oracle::rel(weighted_quotient(corner, A, M, shape), block(M, shape, 2, 3) / A(1, 2)) < 1e-15);

  const WeightRule heavy = [](const Matrix& X) { return Matrix::constant(X.rows(), X.cols(), 1.0); };
  CHECK_THROWS_AS(weighted_quotient(heavy, A, M, shape), InvalidWeightsError);
}

TEST_CASE("frobenius and van Loan") {
  const FactorShape one(2, 1, 1, 1);
  CHECK(oracle::max_abs_diff(frobenius_quotient(Matrix{{1.0}, {1.0}}, Matrix{{2.0}, {4.0}}, one), Matrix{{3.0}}) < 1e-15);
  CHECK(oracle::max_abs_diff(vanloan_factor(Matrix{{1.0}, {1.0}}, Matrix{{2.0}, {4.0}}, one), Matrix{{3.0}}) < 1e-15);
  CHECK(frobenius_quotient(Matrix{{Complex(0, 1)}}, Matrix{{Complex(0, 2)}}, FactorShape(1, 1, 1, 1)) ==
        Matrix{{2.0}});
  CHECK_THROWS_AS(vanloan_factor(Matrix{{Complex(0, 1)}}, Matrix{{1.0}}, FactorShape(1, 1, 1, 1)),
                  UnsupportedInputError);

  for (std::size_t trial = 0; trial < 50; ++trial) {
    TrialRng rng(59, trial);
    const Matrix A = rng.real_matrix(2, 2);
    const Matrix M = rng.real_matrix(4, 4);
    const FactorShape shape(2, 2, 2, 2);
    CHECK(oracle::max_abs_diff(vanloan_factor(A, M, shape), frobenius_quotient(A, M, shape)) < 1e-10);
    const Matrix B = rng.real_matrix(2, 2);
    CHECK(oracle::max_abs_diff(vanloan_factor(A, kron(A, B), shape), B) < 1e-12);
  }
}

TEST_CASE("operator quotient") {
  const QuotientScheme O = QuotientScheme::operator_norm();
  const FactorShape shape(2, 2, 2, 2);
  const Matrix D = Matrix::diagonal({2.0, 1.0});
  CHECK(oracle::max_abs_diff(*realization_of(O, D), Matrix{{0.5, 0.0}, {0.0, 0.0}}) < 1e-16);
  CHECK(oracle::max_abs_diff(*realization_of(O, Matrix{{0.0, 2.0}, {0.0, 0.0}}), Matrix{{0.0, 0.5}, {0.0, 0.0}}) < 1e-16);
  CHECK(oracle::max_abs_diff(left_quotient(O, D, kron(D, B2()), shape), B2()) < 1e-15);
  CHECK(oracle::max_abs_diff(left_quotient(O, D, kron(Matrix::diagonal({4.0, 100.0}), B2()), shape), 2.0 * B2()) <
        1e-14);
}

TEST_CASE("trace realization") {
  CHECK(trace_realization(Matrix::constant(4, 4, 1.0)) == 0.25 * Matrix::identity(4));
  CHECK(trace_realization(Matrix::constant(2, 2, 1.0)) == 0.5 * Matrix::identity(2));
  CHECK_THROWS_AS(trace_realization(Matrix::diagonal({1.0, -1.0})), SingularRealizationError);
  CHECK_THROWS_AS(trace_realization(Matrix(2, 3, std::vector<Complex>(6, 1.0))), ShapeError);

  const QuotientScheme T = QuotientScheme::trace();
  const Matrix J4 = Matrix::constant(4, 4, 1.0);
  const Matrix B = Matrix{{1.0, 2.0}, {3.0, 4.0}};
  CHECK(oracle::max_abs_diff(left_quotient(T, J4, kron(J4, B), FactorShape(4, 4, 2, 2)), B) < 1e-15);
  CHECK_THROWS_AS(left_quotient(T, Matrix::diagonal({1.0, -1.0}), Matrix::identity(4), FactorShape(2, 2, 2, 2)),
                  SingularRealizationError);
}

TEST_CASE("uniform quotients and realizations") {
  const Realization bad{"bad", [](const Matrix& A) { return 2.0 * conjugate(A) / std::pow(frobenius_norm(A), 2); }};
  const Matrix A{{1.0, 2.0}};
  CHECK_THROWS_AS(uniform_quotient(bad, A, Matrix(2, 4), FactorShape(1, 2, 2, 2)), InvalidRealizationError);
  const Realization wrong_shape{"wrong", [](const Matrix&) { return Matrix::identity(2); }};
  CHECK_THROWS_AS(uniform_quotient(wrong_shape, A, Matrix(2, 4), FactorShape(1, 2, 2, 2)), InvalidRealizationError);

  for (std::size_t trial = 0; trial < 30; ++trial) {
    TrialRng rng(61, trial);
    const Matrix X = rng.nonzero_matrix(rng.index(1, 3), rng.index(1, 3));
    const FactorShape shape(X.rows(), X.cols(), 2, 3);
    const Matrix M = rng.matrix(shape.rows(), shape.cols());
    CHECK(oracle::rel(uniform_quotient(frobenius_realization(), X, M, shape), frobenius_quotient(X, M, shape)) <
          1e-14);
    CHECK(oracle::rel(uniform_quotient(leopardi_realization(), X, M, shape), leopardi_quotient(X, M, shape)) < 1e-14);
  }
}

TEST_CASE("realization recovery from unit matrices") {
  for (const QuotientScheme& scheme : all_schemes()) {
    if (scheme.kind() == SchemeKind::linear) continue;
    for (std::size_t trial = 0; trial < 20; ++trial) {
      TrialRng rng(67, trial);
      const Matrix A = draw_divisor(rng, scheme, trial);
      const auto closed = realization_of(scheme, A);
      REQUIRE(closed.has_value());
      CHECK(oracle::max_abs_diff(extract_realization(scheme, A), *closed) <=
            1e-10 * std::max(1.0, frobenius_norm(*closed)));
      CHECK(std::abs(pfp_scalar(*closed, A) - 1.0) < 1e-10);
    }
  }
  CHECK_FALSE(realization_of(QuotientScheme::linear(oracle::perturbed_family, "p"), Matrix::identity(2)).has_value());
}

TEST_CASE("linear families") {
  const Matrix I2 = Matrix::identity(2);
  const FactorShape shape(2, 2, 2, 2);
  const Matrix qf = I2 / 2.0;
  const Matrix extra = Matrix::diagonal({1.0, -1.0});
  // Q_{1,1,2,2} = diag(1, -1), annihilated by A = I_2.
  const FamilyRule family = [&](const Matrix&, std::size_t s, std::size_t t) {
    std::vector<Matrix> out;
    for (std::size_t u = 0; u < s; ++u)
      for (std::size_t v = 0; v < t; ++v)
        for (std::size_t u2 = 0; u2 < s; ++u2)
          for (std::size_t v2 = 0; v2 < t; ++v2) {
            if (u == u2 && v == v2) out.push_back(qf);
            else if (u == 0 && v == 0 && u2 == 1 && v2 == 1) out.push_back(extra);
            else out.push_back(Matrix(2, 2));
          }
    return out;
  };
  CHECK(oracle::max_abs_diff(linear_quotient(family, I2, kron(I2, B2()), shape), B2()) < 1e-15);
  const Matrix R = kron(extra, Matrix::unit(2, 2, 1, 1));
  const Matrix q = linear_quotient(family, I2, kron(I2, B2()) + R, shape);
  CHECK(oracle::max_abs_diff(q, B2() + 2.0 * Matrix::unit(2, 2, 2, 2)) < 1e-15);

  const FamilyRule zero = [](const Matrix& A, std::size_t s, std::size_t t) {
    return std::vector<Matrix>(s * t * s * t, Matrix(A.rows(), A.cols()));
  };
  CHECK_THROWS_AS(linear_quotient(zero, I2, Matrix::identity(4), shape), InvalidFamilyError);
  try {
    linear_quotient(zero, I2, Matrix::identity(4), shape);
  } catch (const InvalidFamilyError& e) {
    CHECK(std::string(e.what()).find("Q_{1,1,1,1}") != std::string::npos);
  }

  for (std::size_t trial = 0; trial < 20; ++trial) {
    TrialRng rng(71, trial);
    const Matrix A = rng.nonzero_matrix(rng.index(1, 3), rng.index(1, 3));
    const FactorShape sh(A.rows(), A.cols(), 2, 2);
    const Matrix M = rng.matrix(sh.rows(), sh.cols());
    CHECK(oracle::rel(linear_quotient(uniform_family(frobenius_realization()), A, M, sh),
                      frobenius_quotient(A, M, sh)) < 1e-14);
  }
}

TEST_CASE("defining round trips for every scheme") {
  for (const QuotientScheme& scheme : all_schemes()) {
    CAPTURE(scheme.name());
    for (std::size_t trial = 0; trial < 60; ++trial) {
      TrialRng rng(73, trial);
      const Matrix A = draw_divisor(rng, scheme, trial);
      const std::size_t s = rng.index(1, 4);
      const std::size_t t = scheme.kind() == SchemeKind::trace ? s : rng.index(1, 4);
      Matrix B = rng.nonzero_matrix(s, t);
      while (scheme.kind() == SchemeKind::trace && std::abs(trace(B)) < 1e-3 * frobenius_norm(B)) {
        B = rng.nonzero_matrix(s, t);
      }
      const FactorShape shape(A.rows(), A.cols(), s, t);
      const Matrix M = kron(A, B);
      CHECK(oracle::rel(left_quotient(scheme, A, M, shape), B) <= 1e-9);
      CHECK(oracle::rel(right_quotient(scheme, M, B, shape), A) <= 1e-9);
      CHECK(frobenius_norm(remainder(scheme, A, M, shape)) <= 1e-12 * frobenius_norm(M));
      CHECK(is_divisor(scheme, A, M, shape));
    }
  }
}

TEST_CASE("linearity in M and the factor-through property") {
  for (const QuotientScheme& scheme : all_schemes()) {
    CAPTURE(scheme.name());
    for (std::size_t trial = 0; trial < 30; ++trial) {
      TrialRng rng(79, trial);
      const Matrix A = draw_divisor(rng, scheme, trial);
      const std::size_t s = rng.index(1, 3), t = rng.index(1, 3);
      const FactorShape shape(A.rows(), A.cols(), s, t);
      const Matrix M1 = rng.matrix(shape.rows(), shape.cols()), M2 = rng.matrix(shape.rows(), shape.cols());
      const Complex a = rng.entry(), b = rng.entry();
      CHECK(oracle::rel(left_quotient(scheme, A, a * M1 + b * M2, shape),
                        a * left_quotient(scheme, A, M1, shape) + b * left_quotient(scheme, A, M2, shape)) < 1e-10);
      if (auto q = realization_of(scheme, A)) {
        const Matrix C = rng.matrix(A.rows(), A.cols());
        const Matrix B = rng.matrix(s, t);
        CHECK(oracle::rel(left_quotient(scheme, A, kron(C, B), shape), pfp_scalar(*q, C) * B) < 1e-10);
      }
    }
  }
}

TEST_CASE("kernel characterizations") {
  for (const QuotientScheme& scheme : {QuotientScheme::leopardi(), QuotientScheme::frobenius()}) {
    for (std::size_t trial = 0; trial < 30; ++trial) {
      TrialRng rng(83, trial);
      const Matrix A = draw_divisor(rng, scheme, trial);
      const FactorShape shape(A.rows(), A.cols(), rng.index(1, 3), rng.index(1, 3));
      const Matrix M = rng.matrix(shape.rows(), shape.cols());
      const Matrix R = remainder(scheme, A, M, shape);
      const Matrix back = left_quotient(scheme, transpose(A), transpose(R), shape.transposed());
      CHECK(frobenius_norm(back) <= 1e-10 * frobenius_norm(left_quotient(scheme, A, M, shape)) + 1e-12);
      const Complex k = rng.entry();
      CHECK(oracle::rel(left_quotient(scheme, k * A, M, shape), left_quotient(scheme, A, M, shape) / k) < 1e-12);
    }
  }
}

TEST_CASE("remainders and divisors") {
  const QuotientScheme F = QuotientScheme::frobenius();
  const FactorShape shape(2, 2, 2, 2);
  const Matrix M = Matrix::identity(4) + Matrix::unit(4, 4, 1, 4);
  CHECK_FALSE(is_divisor(F, Matrix::identity(2), M, shape));
  CHECK(is_divisor(F, Matrix::identity(2), Matrix::identity(4), shape));

  for (std::size_t trial = 0; trial < 30; ++trial) {
    TrialRng rng(89, trial);
    const Matrix A = rng.nonzero_matrix(rng.index(1, 3), rng.index(1, 3));
    const FactorShape sh(A.rows(), A.cols(), rng.index(1, 3), rng.index(1, 3));
    const Matrix X = rng.matrix(sh.rows(), sh.cols());
    const Matrix R = remainder(F, A, X, sh);
    CHECK(frobenius_norm(pfp(conjugate(A), R, sh)) <= 1e-10 * frobenius_norm(X));
  }
}

TEST_CASE("commutation matrices and right quotients") {
  for (std::size_t trial = 0; trial < 40; ++trial) {
    TrialRng rng(97, trial);
    const std::size_t m = rng.index(1, 4), n = rng.index(1, 4), s = rng.index(1, 4), t = rng.index(1, 4);
    const Matrix A = rng.matrix(m, n), B = rng.matrix(s, t);
    const Matrix AB = kron(A, B);
    CHECK(commutation_matrix(m, s) * AB * transpose(commutation_matrix(n, t)) == kron(B, A));
    CHECK(oracle::shuffle(AB, m, n, s, t) == kron(B, A));
    const Matrix P = commutation_matrix(m, s);
    CHECK(P * transpose(P) == Matrix::identity(m * s));
  }
  const Matrix B{{1.0, 2.0}, {3.0, 4.0}};
  const Matrix c{{Complex(2, -1)}};
  CHECK(oracle::max_abs_diff(right_quotient(QuotientScheme::frobenius(), kron(c, B), B, FactorShape(1, 1, 2, 2)), c) <
        1e-15);
  const Matrix A{{1.0, 0.0}, {0.0, 2.0}};
  CHECK(oracle::max_abs_diff(right_quotient(QuotientScheme::leopardi(), kron(A, B), B, FactorShape(2, 2, 2, 2)), A) <
        1e-15);
}

TEST_CASE("quotient errors") {
  const QuotientScheme L = QuotientScheme::leopardi();
  CHECK_THROWS_AS(left_quotient(L, Matrix(2, 2), Matrix(4, 4), FactorShape(2, 2, 2, 2)), ZeroDivisorError);
  CHECK_THROWS_AS(left_quotient(L, Matrix::identity(2), Matrix(4, 5), FactorShape(2, 2, 2, 2)), ShapeError);
  CHECK_THROWS_AS(left_quotient(L, Matrix::identity(3), Matrix(4, 4), FactorShape(2, 2, 2, 2)), ShapeError);
  CHECK_THROWS_AS(right_quotient(L, Matrix(4, 4), Matrix(2, 2), FactorShape(2, 2, 2, 2)), ZeroDivisorError);
  CHECK(builtin_scheme("trace")->kind() == SchemeKind::trace);
  CHECK_FALSE(builtin_scheme("nope").has_value());
  CHECK(builtin_schemes().size() == 4);
}
