#pragma once

// Edge-ranking evaluation: ROC-AUC against a ground-truth adjacency matrix,
// plus the two iid edge scorers (absolute regression coefficients and the
// corresponding absolute T-statistics).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "tscausal/common.hpp"
#include "tscausal/regression.hpp"

namespace tscausal {

namespace detail {

// Midranks (1-based, ties averaged) of the given values.
inline std::vector<double> midranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

// Midrank AUC over parallel vectors of scores and labels.
inline double auc_midrank(const std::vector<double>& vals,
                          const std::vector<bool>& pos) {
  const auto n_pos =
      static_cast<double>(std::count(pos.begin(), pos.end(), true));
  const auto n_neg = static_cast<double>(vals.size()) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0)
    throw UndefinedAucError("AUC undefined: truth needs at least one edge "
                            "and one non-edge among evaluated entries");
  const std::vector<double> ranks = midranks(vals);
  double rank_sum = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k)
    if (pos[k]) rank_sum += ranks[k];
  return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

}  // namespace detail

// Probability that a uniformly random true edge outscores a uniformly random
// non-edge, ties counted one half (midrank convention). The diagonal is
// excluded unless include_diagonal is set. Scores may be any non-NaN value
// including +/-inf; infinities sort above/below all finite scores.
inline double roc_auc(const Matrix& scores, const Matrix& truth,
                      bool include_diagonal = false) {
  require(scores.rows() == scores.cols(), "score matrix must be square");
  require(scores.rows() == truth.rows() && scores.cols() == truth.cols(),
          "score and truth dimensions differ");
  const Index d = scores.rows();
  std::vector<double> vals;
  std::vector<bool> pos;
  vals.reserve(static_cast<std::size_t>(d * d));
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (i == j && !include_diagonal) continue;
      const double t = truth(i, j);
      require_input(t == 0.0 || t == 1.0, "truth entries must be 0 or 1");
      const double s = scores(i, j);
      require_input(!std::isnan(s), "scores must not be NaN");
      vals.push_back(s);
      pos.push_back(t == 1.0);
    }
  }
  const auto n_pos = static_cast<double>(
      std::count(pos.begin(), pos.end(), true));
  const auto n_neg = static_cast<double>(vals.size()) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0)
    throw UndefinedAucError("AUC undefined: truth needs at least one edge "
                            "and one non-edge among evaluated entries");
  const std::vector<double> ranks = detail::midranks(vals);
  double rank_sum = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k)
    if (pos[k]) rank_sum += ranks[k];
  return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

// Spearman rank correlation with midrank tie handling.
inline double spearman(const std::vector<double>& x,
                       const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2,
          "spearman needs two equally sized samples");
  const std::vector<double> rx = detail::midranks(x);
  const std::vector<double> ry = detail::midranks(y);
  const auto n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double a = rx[k] - mean;
    const double b = ry[k] - mean;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw DegenerateError("spearman undefined for constant ranks");
  return sxy / std::sqrt(sxx * syy);
}

struct CoefScores {
  Matrix values;                    // (i,j) = |b_{i->j}|, zero diagonal
  bool pseudo_inverse_used = false; // set when the design was singular
};

// Entry (i,j) is the absolute coefficient of column i in the least-squares
// regression of column j onto all remaining columns. Uses the precision
// matrix identity b_{i->j} = -P_ij / P_jj; singular designs fall back to
// per-column minimum-norm fits and set the warning flag.
inline CoefScores coef_scores(const Matrix& data) {
  const Index n = data.rows();
  const Index d = data.cols();
  require_input(n > d, "coef_scores needs more rows than columns");
  require_finite(data, "data matrix");
  CoefScores out;
  out.values = Matrix::Zero(d, d);
  const Matrix G = data.transpose() * data;
  if (const auto P = detail::symmetric_inverse(G)) {
    for (Index j = 0; j < d; ++j)
      for (Index i = 0; i < d; ++i)
        if (i != j) out.values(i, j) = std::abs(-(*P)(i, j) / (*P)(j, j));
    return out;
  }
  out.pseudo_inverse_used = true;
  for (Index j = 0; j < d; ++j) {
    Matrix rest(n, d - 1);
    Index c = 0;
    for (Index i = 0; i < d; ++i)
      if (i != j) rest.col(c++) = data.col(i);
    const Matrix b = ols_fit(rest, data.col(j));  // 1 x (d-1)
    c = 0;
    for (Index i = 0; i < d; ++i)
      if (i != j) out.values(i, j) = std::abs(b(0, c++));
  }
  return out;
}

struct TStatScores {
  Matrix values;           // (i,j) = |t_{i->j}|, zero diagonal
  int infinite_count = 0;  // entries forced to +inf by |partial corr| = 1
};

// Absolute T-statistics for the hypothesis b_{i->j} = 0:
//   |t_{i->j}| = |b_{i->j}| sqrt(var(X_i|rest_i) / var(X_j|rest_j))
//                          sqrt((n - d) / (1 - corr^2(X_i,X_j|rest_ij))).
// Perfectly partial-correlated pairs get +inf entries, which rank above all
// finite scores, and are counted in infinite_count.
inline TStatScores tstat_scores(const Matrix& data) {
  const Index n = data.rows();
  const Index d = data.cols();
  require_input(n > d, "tstat_scores needs more rows than columns");
  const ResidualStats stats = residual_stats(data);
  const CoefScores coefs = coef_scores(data);
  TStatScores out;
  out.values = Matrix::Zero(d, d);
  const double dof = static_cast<double>(n - d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (i == j) continue;
      const double rho = stats.partial_correlations(i, j);
      const double denom = 1.0 - rho * rho;
      if (denom <= 0.0) {
        out.values(i, j) = std::numeric_limits<double>::infinity();
        ++out.infinite_count;
        continue;
      }
      const double var_ratio =
          stats.residual_variances[i] / stats.residual_variances[j];
      out.values(i, j) =
          coefs.values(i, j) * std::sqrt(var_ratio) * std::sqrt(dof / denom);
    }
  }
  return out;
}

}  // namespace tscausal
