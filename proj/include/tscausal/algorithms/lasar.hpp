#pragma once

// LASAR: LASSO auto-regression. Per bootstrap, stage l LASSO-regresses the
// residuals of stage l-1 onto values l steps in the past and records which
// (predictor, lag) pairs are selected; a final OLS on exactly the selected
// pairs yields the coefficients. Scores are mean absolute final coefficients
// across bootstraps, max-aggregated over lags.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "tscausal/algorithms/common.hpp"
#include "tscausal/common.hpp"
#include "tscausal/parallel.hpp"
#include "tscausal/random.hpp"
#include "tscausal/regression.hpp"

namespace tscausal {

inline std::vector<double> default_lasar_grid() {
  // 10 log-spaced penalties from 1 down to 0.01.
  std::vector<double> grid(10);
  for (int k = 0; k < 10; ++k)
    grid[static_cast<std::size_t>(k)] = std::pow(10.0, -2.0 * k / 9.0);
  return grid;
}

struct LasarConfig {
  Index max_lag = 5;
  int n_bootstraps = 100;
  std::optional<Index> sample_size;  // default T - max_lag
  std::vector<double> lambda_grid = default_lasar_grid();
  std::uint64_t seed = kDefaultSeed;
};

namespace detail {

// One bootstrap: returns the d x (d * L) matrix of absolute final-OLS
// coefficients (responses by predictor-at-lag, unselected pairs zero).
inline Matrix lasar_bootstrap(const Matrix& data, const LasarConfig& cfg,
                              const std::vector<Index>& rows) {
  const Index d = data.cols();
  const Index L = cfg.max_lag;
  const auto v = static_cast<Index>(rows.size());
  const Matrix design = lagged_design(data, rows, L);  // v x (d * L)
  Matrix residuals(v, d);
  for (Index k = 0; k < v; ++k)
    residuals.row(k) = data.row(rows[static_cast<std::size_t>(k)]);

  std::vector<std::vector<bool>> support(
      static_cast<std::size_t>(d),
      std::vector<bool>(static_cast<std::size_t>(d * L), false));
  for (Index l = 1; l <= L; ++l) {
    const auto block = design.middleCols((l - 1) * d, d);
    for (Index j = 0; j < d; ++j) {
      const Vector b =
          lasso_path(block, residuals.col(j), cfg.lambda_grid).back();
      for (Index i = 0; i < d; ++i)
        if (b[i] != 0.0)
          support[static_cast<std::size_t>(j)]
                 [static_cast<std::size_t>((l - 1) * d + i)] = true;
      residuals.col(j) -= block * b;
    }
  }

  Matrix out = Matrix::Zero(d, d * L);
  for (Index j = 0; j < d; ++j) {
    std::vector<Index> cols;
    for (Index c = 0; c < d * L; ++c)
      if (support[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)])
        cols.push_back(c);
    if (cols.empty()) continue;  // response contributes zero scores
    Matrix sub(v, static_cast<Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) sub.col(static_cast<Index>(c)) = design.col(cols[c]);
    Vector y(v);
    for (Index k = 0; k < v; ++k)
      y[k] = data(rows[static_cast<std::size_t>(k)], j);
    const Matrix beta = ols_fit(sub, y);  // 1 x |cols|
    for (std::size_t c = 0; c < cols.size(); ++c)
      out(j, cols[c]) = std::abs(beta(0, static_cast<Index>(c)));
  }
  return out;
}

}  // namespace detail

inline Matrix lasar(const Matrix& data, const LasarConfig& cfg,
                    int threads = 1) {
  detail::validate_time_series(data);
  const Index T = data.rows();
  const Index d = data.cols();
  require_input(cfg.max_lag >= 1, "max_lag must be positive");
  require_input(cfg.max_lag < T, "max_lag must be smaller than the series length");
  require_input(cfg.n_bootstraps >= 1, "need at least one bootstrap");
  require_input(!cfg.lambda_grid.empty(), "lambda grid must be non-empty");
  const Index v = cfg.sample_size.value_or(T - cfg.max_lag);
  require_input(v >= 1, "bootstrap sample size must be positive");

  std::vector<Matrix> slots(static_cast<std::size_t>(cfg.n_bootstraps));
  parallel_for(cfg.n_bootstraps, threads, [&](std::int64_t b) {
    Rng rng = make_rng(child_seed(cfg.seed, static_cast<std::uint64_t>(b)));
    std::vector<Index> rows(static_cast<std::size_t>(v));
    for (auto& t : rows) t = uniform_int(rng, cfg.max_lag, T - 1);
    slots[static_cast<std::size_t>(b)] =
        detail::lasar_bootstrap(data, cfg, rows);
  });

  Matrix mean = Matrix::Zero(d, d * cfg.max_lag);
  for (const Matrix& s : slots) mean += s;
  mean /= static_cast<double>(cfg.n_bootstraps);
  return detail::collapse_lags(mean, d, cfg.max_lag);
}

}  // namespace tscausal
