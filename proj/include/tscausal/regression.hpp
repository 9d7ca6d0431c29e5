#pragma once

// Dense least-squares kernels shared by the scoring algorithms. None of them
// fit an intercept: callers center their columns when they need to.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tscausal/common.hpp"

namespace tscausal {

// Relative singular-value / eigenvalue cutoff used to declare rank loss.
inline constexpr double kRankTolerance = 1e-12;

namespace detail {

inline void check_xy(const Matrix& X, const Matrix& Y) {
  require(X.rows() == Y.rows(), "design and response row counts differ");
  require(X.rows() >= 1 && X.cols() >= 1, "design matrix must be non-empty");
  require_finite(X, "design matrix");
  require_finite(Y, "response");
}

// Inverse of a symmetric PSD matrix via its eigendecomposition, or nullopt
// when the smallest eigenvalue falls under the rank cutoff.
inline std::optional<Matrix> symmetric_inverse(const Matrix& G) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(G);
  const Vector& ev = eig.eigenvalues();
  const double emax = ev.cwiseAbs().maxCoeff();
  if (!(emax > 0.0) || ev.minCoeff() <= kRankTolerance * emax)
    return std::nullopt;
  return Matrix(eig.eigenvectors() * ev.cwiseInverse().asDiagonal() *
                eig.eigenvectors().transpose());
}

inline double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

}  // namespace detail

// Least-squares coefficients of Y onto X, one row per response column:
// Y ~ X * B^T with B of shape m x p. Rank-deficient designs get the
// minimum-norm solution, so an all-zero design yields all-zero coefficients.
inline Matrix ols_fit(const Matrix& X, const Matrix& Y) {
  detail::check_xy(X, Y);
  Eigen::BDCSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kRankTolerance);
  return svd.solve(Y).transpose();
}

// Ridge solution of min ||Y - X B^T||_F^2 + kappa ||B||_F^2 via the normal
// equations (X^T X + kappa I). kappa = 0 falls through to ols_fit so that
// singular designs keep minimum-norm semantics.
inline Matrix ridge_fit(const Matrix& X, const Matrix& Y, double kappa) {
  require_input(kappa >= 0.0 && std::isfinite(kappa),
                "ridge penalty must be finite and non-negative");
  if (kappa == 0.0) return ols_fit(X, Y);
  detail::check_xy(X, Y);
  Matrix G = X.transpose() * X;
  G.diagonal().array() += kappa;
  return G.ldlt().solve(X.transpose() * Y).transpose();
}

struct LassoOptions {
  double tol = 1e-6;      // max coefficient change per sweep
  long max_sweeps = 10000;
};

namespace detail {

// Cyclic coordinate descent on (1/2n)||y - Xb||^2 + lambda ||b||_1 starting
// from b0. Residual r is maintained incrementally.
inline Vector lasso_cd(const Matrix& X, const Vector& y, double lambda,
                       Vector b, const LassoOptions& opts) {
  const Index n = X.rows();
  const Index p = X.cols();
  const Vector col_ms = X.colwise().squaredNorm() / static_cast<double>(n);
  Vector r = y - X * b;
  for (long sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    double max_delta = 0.0;
    for (Index i = 0; i < p; ++i) {
      if (col_ms[i] == 0.0) {
        b[i] = 0.0;
        continue;
      }
      const double rho =
          X.col(i).dot(r) / static_cast<double>(n) + col_ms[i] * b[i];
      const double bi = soft_threshold(rho, lambda) / col_ms[i];
      const double delta = bi - b[i];
      if (delta != 0.0) {
        r -= delta * X.col(i);
        b[i] = bi;
        max_delta = std::max(max_delta, std::abs(delta));
      }
    }
    if (max_delta < opts.tol) return b;
  }
  throw ConvergenceError("lasso did not converge within " +
                             std::to_string(opts.max_sweeps) + " sweeps",
                         opts.max_sweeps);
}

}  // namespace detail

// Single-penalty LASSO fit (cold start from zero).
inline Vector lasso_fit(const Matrix& X, const Vector& y, double lambda,
                        const LassoOptions& opts = {}) {
  require_input(lambda >= 0.0 && std::isfinite(lambda),
                "lasso penalty must be finite and non-negative");
  detail::check_xy(X, y);
  return detail::lasso_cd(X, y, lambda, Vector::Zero(X.cols()), opts);
}

// Solutions along a decreasing penalty grid, warm-starting each fit from the
// previous one. Returns one coefficient vector per grid entry.
inline std::vector<Vector> lasso_path(const Matrix& X, const Vector& y,
                                      const std::vector<double>& grid,
                                      const LassoOptions& opts = {}) {
  require_input(!grid.empty(), "lasso grid must be non-empty");
  for (std::size_t k = 0; k + 1 < grid.size(); ++k)
    require_input(grid[k] >= grid[k + 1], "lasso grid must be non-increasing");
  detail::check_xy(X, y);
  std::vector<Vector> out;
  out.reserve(grid.size());
  Vector b = Vector::Zero(X.cols());
  for (double lambda : grid) {
    require_input(lambda >= 0.0 && std::isfinite(lambda),
                  "lasso penalty must be finite and non-negative");
    b = detail::lasso_cd(X, y, lambda, b, opts);
    out.push_back(b);
  }
  return out;
}

// Exact leave-one-out residual sum of squares via the hat-matrix shortcut
// sum_k (e_k / (1 - h_k))^2; no refitting. Requires n > p and a full-rank
// design.
inline double loo_rss(const Matrix& X, const Vector& y) {
  detail::check_xy(X, y);
  const Index n = X.rows();
  const Index p = X.cols();
  require(n > p, "leave-one-out needs more rows than predictors");
  const Matrix G = X.transpose() * X;
  Eigen::LDLT<Matrix> ldlt(G);
  const Vector d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  if (!(dmax > 0.0) || d.minCoeff() <= kRankTolerance * dmax)
    throw DegenerateError("singular design in leave-one-out fit");
  const Vector b = ldlt.solve(X.transpose() * y);
  const Vector e = y - X * b;
  // Leverages: h_k = x_k^T (X^T X)^{-1} x_k.
  const Matrix W = ldlt.solve(X.transpose());
  const Vector h = (X.transpose().cwiseProduct(W)).colwise().sum();
  double rss = 0.0;
  for (Index k = 0; k < n; ++k) {
    if (h[k] >= 1.0 - 1e-12)
      throw DegenerateError("leverage at one; leave-one-out undefined");
    const double u = e[k] / (1.0 - h[k]);
    rss += u * u;
  }
  return rss;
}

struct ResidualStats {
  // var(X_j | all other columns), normalised by n - d + 1 (the residual
  // degrees of freedom of a no-intercept regression on d - 1 columns).
  Vector residual_variances;
  // corr(X_i, X_j | remaining d - 2 columns); unit diagonal.
  Matrix partial_correlations;
};

// Residual variances and pairwise partial correlations of the columns of X.
// Both drop out of the precision matrix P = (X^T X)^{-1}:
//   RSS(X_j | rest) = 1 / P_jj,   corr(X_i, X_j | rest) = -P_ij / sqrt(P_ii P_jj).
// Tests check these against explicit per-column regressions.
inline ResidualStats residual_stats(const Matrix& X) {
  const Index n = X.rows();
  const Index d = X.cols();
  require_input(n > d, "residual statistics need more rows than columns");
  require_finite(X, "data matrix");
  const Matrix G = X.transpose() * X;
  const auto P = detail::symmetric_inverse(G);
  if (!P)
    throw DegenerateError(
        "collinear columns: residual statistics are undefined");
  ResidualStats out;
  out.residual_variances = Vector(d);
  out.partial_correlations = Matrix::Identity(d, d);
  const double dof = static_cast<double>(n - d + 1);
  for (Index j = 0; j < d; ++j)
    out.residual_variances[j] = 1.0 / ((*P)(j, j) * dof);
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      const double rho =
          -(*P)(i, j) / std::sqrt((*P)(i, i) * (*P)(j, j));
      const double clamped = std::clamp(rho, -1.0, 1.0);
      out.partial_correlations(i, j) = clamped;
      out.partial_correlations(j, i) = clamped;
    }
  }
  return out;
}

}  // namespace tscausal
