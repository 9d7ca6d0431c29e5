#pragma once

// SELVAR: selective auto-regression. Per response, a greedy hill climb over
// (predictor, lag) pairs adds or removes whichever single pair most lowers
// the exact leave-one-out RSS; the selected pairs are then scored by the
// absolute coefficients of a final OLS fit.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "tscausal/algorithms/common.hpp"
#include "tscausal/common.hpp"
#include "tscausal/parallel.hpp"
#include "tscausal/regression.hpp"

namespace tscausal {

struct SelvarConfig {
  Index max_lag = 5;
  std::optional<long> max_hill_climb_steps;  // default 2 * d * max_lag
  // Reserved for config uniformity; the procedure itself is deterministic.
  std::uint64_t seed = kDefaultSeed;
};

namespace detail {

inline Matrix selvar_design(const Matrix& full, const std::vector<bool>& sel,
                            Index extra = -1, Index drop = -1) {
  Index k = 0;
  for (std::size_t c = 0; c < sel.size(); ++c)
    if ((sel[c] || static_cast<Index>(c) == extra) &&
        static_cast<Index>(c) != drop)
      ++k;
  Matrix out(full.rows(), k);
  Index w = 0;
  for (std::size_t c = 0; c < sel.size(); ++c)
    if ((sel[c] || static_cast<Index>(c) == extra) &&
        static_cast<Index>(c) != drop)
      out.col(w++) = full.col(static_cast<Index>(c));
  return out;
}

}  // namespace detail

inline Matrix selvar(const Matrix& data, const SelvarConfig& cfg,
                     int threads = 1) {
  detail::validate_time_series(data);
  const Index T = data.rows();
  const Index d = data.cols();
  require_input(cfg.max_lag >= 1, "max_lag must be positive");
  require_input(cfg.max_lag < T, "max_lag must be smaller than the series length");
  const long step_budget =
      cfg.max_hill_climb_steps.value_or(2 * static_cast<long>(d * cfg.max_lag));
  require_input(step_budget >= 1, "step budget must be positive");

  const Index L = cfg.max_lag;
  const Index n = T - L;
  std::vector<Index> rows(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) rows[static_cast<std::size_t>(k)] = L + k;
  const Matrix design = detail::lagged_design(data, rows, L);  // n x (d * L)

  std::vector<Matrix> per_response(static_cast<std::size_t>(d));
  parallel_for(d, threads, [&](std::int64_t j) {
    Vector y(n);
    for (Index k = 0; k < n; ++k) y[k] = data(rows[static_cast<std::size_t>(k)], j);
    const double empty_loo = y.squaredNorm();  // no predictors, no intercept

    std::vector<bool> selected(static_cast<std::size_t>(d * L), false);
    Index n_selected = 0;
    double current = empty_loo;
    for (long step = 0; step < step_budget; ++step) {
      double best = current;
      Index best_move = -1;
      for (Index c = 0; c < d * L; ++c) {
        const bool in_set = selected[static_cast<std::size_t>(c)];
        const Index k = n_selected + (in_set ? -1 : 1);
        double cand;
        if (k == 0) {
          cand = empty_loo;
        } else if (k >= n) {
          continue;  // leave-one-out needs n > p
        } else {
          const Matrix z = in_set
                               ? detail::selvar_design(design, selected, -1, c)
                               : detail::selvar_design(design, selected, c);
          try {
            cand = loo_rss(z, y);
          } catch (const DegenerateError&) {
            continue;  // degenerate move is skipped, not fatal
          }
        }
        if (cand < best) {
          best = cand;
          best_move = c;
        }
      }
      if (best_move < 0) break;
      const auto idx = static_cast<std::size_t>(best_move);
      n_selected += selected[idx] ? -1 : 1;
      selected[idx] = !selected[idx];
      current = best;
    }

    Matrix scores_row = Matrix::Zero(1, d * L);
    if (n_selected > 0) {
      const Matrix z = detail::selvar_design(design, selected);
      const Matrix beta = ols_fit(z, y);  // 1 x n_selected
      Index w = 0;
      for (Index c = 0; c < d * L; ++c)
        if (selected[static_cast<std::size_t>(c)])
          scores_row(0, c) = std::abs(beta(0, w++));
    }
    per_response[static_cast<std::size_t>(j)] = scores_row;
  });

  Matrix full(d, d * L);
  for (Index j = 0; j < d; ++j) full.row(j) = per_response[static_cast<std::size_t>(j)];
  return detail::collapse_lags(full, d, L);
}

}  // namespace tscausal
