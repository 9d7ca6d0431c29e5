#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tscausal/common.hpp"

namespace tscausal {

namespace detail {

inline void validate_time_series(const Matrix& data) {
  require_input(data.rows() >= 2, "time series needs at least two samples");
  require_input(data.cols() >= 1, "time series needs at least one variable");
  require_finite(data, "time series");
}

// Full lagged design: column (l-1)*d + i holds X_i(t - l) for the given
// 0-based time rows (each row index must be >= the largest lag used).
inline Matrix lagged_design(const Matrix& data, const std::vector<Index>& rows,
                            Index lags) {
  const Index d = data.cols();
  Matrix out(static_cast<Index>(rows.size()), d * lags);
  for (Index k = 0; k < static_cast<Index>(rows.size()); ++k)
    for (Index l = 1; l <= lags; ++l)
      out.row(k).segment((l - 1) * d, d) = data.row(rows[static_cast<std::size_t>(k)] - l);
  return out;
}

// Collapses a responses x (d*L) coefficient block to the d x d score matrix
// in the i->j orientation: entry (i,j) is the max over lag blocks of the
// coefficient of predictor i in the equation of response j.
inline Matrix collapse_lags(const Matrix& full, Index d, Index max_lag) {
  Matrix scores = Matrix::Zero(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) {
      double best = 0.0;
      for (Index l = 0; l < max_lag; ++l)
        best = std::max(best, full(j, l * d + i));
      scores(i, j) = best;
    }
  return scores;
}

// Quantile with linear interpolation between order statistics (the numpy
// default); q = 0 is the minimum, q = 1 the maximum. Values must be sorted.
inline double sorted_quantile(const std::vector<double>& sorted, double q) {
  const auto n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = q * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace detail

}  // namespace tscausal
