#include "kronq/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace kronq {

namespace {

constexpr double kOrthogonalityTol = 1e-14;
constexpr double kPhaseTieTol = 1e-12;

// Column-major dense workspace.
struct Columns {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> data;

  Complex* col(std::size_t k) { return data.data() + k * rows; }
  const Complex* col(std::size_t k) const { return data.data() + k * rows; }
};

double column_norm(const Complex* x, std::size_t len) {
  double scale = 0.0;
  for (std::size_t r = 0; r < len; ++r) scale = std::max(scale, std::abs(x[r]));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t r = 0; r < len; ++r) sum += std::norm(x[r] / scale);
  return scale * std::sqrt(sum);
}

struct RawSvd {
  Columns u;                 // rows x rows
  std::vector<double> sigma;
  Columns v;                 // cols x cols
  std::vector<bool> from_data;  // u_k = A v_k / sigma_k for these k
};

// Fills the columns of `basis` that are not marked `fixed` with an orthonormal
// completion, taking at each step the standard basis vector with the largest
// residual after projection.
void complete_basis(Columns& basis, const std::vector<bool>& fixed) {
  const std::size_t n = basis.rows;
  std::vector<std::size_t> done;
  for (std::size_t k = 0; k < basis.cols; ++k) {
    if (fixed[k]) done.push_back(k);
  }
  std::vector<Complex> best(n);
  std::vector<Complex> trial(n);
  for (std::size_t k = 0; k < basis.cols; ++k) {
    if (fixed[k]) continue;
    double best_norm = -1.0;
    for (std::size_t c = 0; c < n; ++c) {
      std::fill(trial.begin(), trial.end(), Complex{});
      trial[c] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t d : done) {
          const Complex* q = basis.col(d);
          Complex dot{};
          for (std::size_t r = 0; r < n; ++r) dot += std::conj(q[r]) * trial[r];
          for (std::size_t r = 0; r < n; ++r) trial[r] -= dot * q[r];
        }
      }
      const double norm = column_norm(trial.data(), n);
      if (norm > best_norm) {
        best_norm = norm;
        best = trial;
      }
    }
    Complex* out = basis.col(k);
    for (std::size_t r = 0; r < n; ++r) out[r] = best[r] / best_norm;
    done.push_back(k);
  }
}

// One-sided Jacobi on a matrix with rows >= cols.
RawSvd tall_svd(const Matrix& A) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();

  Columns g{m, n, std::vector<Complex>(m * n)};
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) g.col(c)[r] = A(r, c);
  }
  Columns v{n, n, std::vector<Complex>(n * n)};
  for (std::size_t k = 0; k < n; ++k) v.col(k)[k] = 1.0;

  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) scale = std::hypot(scale, column_norm(g.col(k), m));
  // Pairs involving a roundoff-sized column are left alone.
  const double tiny = scale * std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(m, n));

  const std::size_t budget = 30 * n;
  bool converged = false;
  double worst = 0.0;
  for (std::size_t sweep = 0; sweep < budget && !converged; ++sweep) {
    converged = true;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Complex* gp = g.col(p);
        Complex* gq = g.col(q);
        const double norm_p = column_norm(gp, m);
        const double norm_q = column_norm(gq, m);
        if (std::min(norm_p, norm_q) <= tiny || norm_p == 0.0 || norm_q == 0.0) continue;
        Complex gamma{};
        for (std::size_t r = 0; r < m; ++r) gamma += std::conj(gp[r]) * gq[r];
        const double abs_gamma = std::abs(gamma);
        const double rel = abs_gamma / norm_p / norm_q;
        if (rel <= kOrthogonalityTol) continue;
        converged = false;
        worst = std::max(worst, rel);

        // Rotate [g_p, e^{-i phi} g_q] by the real Jacobi angle that zeroes
        // their (now real) inner product |gamma|.
        const Complex phase_conj = std::conj(gamma / abs_gamma);
        const double alpha = norm_p * norm_p;
        const double beta = norm_q * norm_q;
        const double zeta = (beta - alpha) / (2.0 * abs_gamma);
        const double tan = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double cos = 1.0 / std::hypot(1.0, tan);
        const double sin = cos * tan;
        for (std::size_t r = 0; r < m; ++r) {
          const Complex xp = gp[r];
          const Complex xq = phase_conj * gq[r];
          gp[r] = cos * xp - sin * xq;
          gq[r] = sin * xp + cos * xq;
        }
        Complex* vp = v.col(p);
        Complex* vq = v.col(q);
        for (std::size_t r = 0; r < n; ++r) {
          const Complex xp = vp[r];
          const Complex xq = phase_conj * vq[r];
          vp[r] = cos * xp - sin * xq;
          vq[r] = sin * xp + cos * xq;
        }
      }
    }
  }
  if (!converged) {
    throw ConvergenceError("Jacobi SVD did not converge within " + std::to_string(budget) +
                               " sweeps (residual " + std::to_string(worst) + ")",
                           worst);
  }

  std::vector<double> norms(n);
  for (std::size_t k = 0; k < n; ++k) norms[k] = column_norm(g.col(k), m);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

  RawSvd out{Columns{m, m, std::vector<Complex>(m * m)}, std::vector<double>(n),
             Columns{n, n, std::vector<Complex>(n * n)}, std::vector<bool>(m, false)};
  const double sigma_max = n > 0 ? norms[order[0]] : 0.0;
  // Columns this small relative to sigma_1 carry no reliable direction.
  const double negligible =
      sigma_max * std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(m, n));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.sigma[k] = norms[src];
    std::copy_n(v.col(src), n, out.v.col(k));
    if (norms[src] > negligible && norms[src] > 0.0) {
      out.from_data[k] = true;
      for (std::size_t r = 0; r < m; ++r) out.u.col(k)[r] = g.col(src)[r] / norms[src];
    }
  }
  complete_basis(out.u, out.from_data);
  return out;
}

std::size_t phase_anchor(const Complex* x, std::size_t len) {
  double max_abs = 0.0;
  for (std::size_t r = 0; r < len; ++r) max_abs = std::max(max_abs, std::abs(x[r]));
  for (std::size_t r = 0; r < len; ++r) {
    if (std::abs(x[r]) >= max_abs * (1.0 - kPhaseTieTol)) return r;
  }
  return 0;
}

// Multiplies x (and, if given, y) by the unit phase that makes x's anchor
// entry real and positive.
void normalize_phase(Complex* x, std::size_t len, Complex* y = nullptr, std::size_t ylen = 0) {
  const std::size_t anchor = phase_anchor(x, len);
  const double mag = std::abs(x[anchor]);
  if (mag == 0.0) return;
  const Complex factor = std::conj(x[anchor]) / mag;
  for (std::size_t r = 0; r < len; ++r) x[r] *= factor;
  x[anchor] = mag;
  if (y != nullptr) {
    for (std::size_t r = 0; r < ylen; ++r) y[r] *= factor;
  }
}

Matrix to_matrix(const Columns& c) {
  return Matrix::generate(c.rows, c.cols,
                          [&](std::size_t r, std::size_t k) { return c.col(k)[r]; });
}

}  // namespace

SvdResult svd(const Matrix& A) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  RawSvd raw = m >= n ? tall_svd(A) : tall_svd(adjoint(A));
  Columns u = std::move(raw.u);
  Columns v = std::move(raw.v);
  if (m < n) std::swap(u, v);

  const std::size_t k_min = std::min(m, n);
  for (std::size_t k = 0; k < k_min; ++k) {
    if (raw.from_data[k]) {
      normalize_phase(v.col(k), n, u.col(k), m);
    } else {
      normalize_phase(v.col(k), n);
      normalize_phase(u.col(k), m);
    }
  }
  for (std::size_t k = k_min; k < m; ++k) normalize_phase(u.col(k), m);
  for (std::size_t k = k_min; k < n; ++k) normalize_phase(v.col(k), n);

  return SvdResult{to_matrix(u), std::move(raw.sigma), to_matrix(v)};
}

Matrix reconstruct(const SvdResult& result) {
  const std::size_t m = result.u.rows();
  const std::size_t n = result.v.rows();
  const Matrix sigma = Matrix::generate(m, n, [&](std::size_t r, std::size_t c) {
    return r == c ? Complex(result.sigma[r]) : Complex{};
  });
  return result.u * sigma * adjoint(result.v);
}

double operator_norm(const Matrix& A) {
  if (A.is_zero()) return 0.0;
  return svd(A).sigma.front();
}

LeadingPair leading_pair(const Matrix& A) {
  if (A.is_zero()) throw DegenerateInputError("the zero matrix has no leading singular pair");
  const SvdResult r = svd(A);
  auto column = [](const Matrix& M) {
    return Matrix::generate(M.rows(), 1, [&](std::size_t i, std::size_t) { return M(i, 0); });
  };
  return LeadingPair{column(r.u), r.sigma.front(), column(r.v)};
}

std::size_t numerical_rank(const Matrix& A, double rtol) {
  const SvdResult r = svd(A);
  if (r.sigma.front() == 0.0) return 0;
  const double cut = rtol * r.sigma.front();
  return static_cast<std::size_t>(
      std::count_if(r.sigma.begin(), r.sigma.end(), [&](double s) { return s > cut; }));
}

bool has_degenerate_leading_value(const SvdResult& result, double rtol) {
  if (result.sigma.size() < 2 || result.sigma[0] == 0.0) return false;
  return result.sigma[0] - result.sigma[1] <= rtol * result.sigma[0];
}

}  // namespace kronq
