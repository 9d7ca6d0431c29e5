#pragma once

// SLARAC: subsampled linear auto-regression absolute coefficients. Each
// bootstrap picks a random lag depth, draws time indices with replacement,
// OLS-fits present on stacked past values and accumulates the absolute
// coefficients; scores are the max over lag blocks.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "tscausal/algorithms/common.hpp"
#include "tscausal/common.hpp"
#include "tscausal/parallel.hpp"
#include "tscausal/random.hpp"
#include "tscausal/regression.hpp"

namespace tscausal {

struct SlaracConfig {
  Index max_lag = 5;
  int n_bootstraps = 200;
  // One entry per bootstrap. Empty means T - max_lag for every bootstrap;
  // a single entry is broadcast to all bootstraps.
  std::vector<Index> sample_sizes;
  std::uint64_t seed = kDefaultSeed;
};

namespace detail {

struct BootstrapDraw {
  Index lags;                // in {1, ..., max_lag}
  std::vector<Index> times;  // 0-based, each >= lags
};

// Absolute OLS coefficients of one bootstrap, zero-padded to d x (d * L).
inline Matrix slarac_bootstrap(const Matrix& data, Index max_lag,
                               const BootstrapDraw& draw) {
  const Index d = data.cols();
  const auto v = static_cast<Index>(draw.times.size());
  Matrix responses(v, d);
  for (Index k = 0; k < v; ++k)
    responses.row(k) = data.row(draw.times[static_cast<std::size_t>(k)]);
  const Matrix past = lagged_design(data, draw.times, draw.lags);
  const Matrix beta = ols_fit(past, responses);  // d x (d * lags)
  Matrix padded = Matrix::Zero(d, d * max_lag);
  padded.leftCols(d * draw.lags) = beta.cwiseAbs();
  return padded;
}

}  // namespace detail

inline Matrix slarac(const Matrix& data, const SlaracConfig& cfg,
                     int threads = 1) {
  detail::validate_time_series(data);
  const Index T = data.rows();
  const Index d = data.cols();
  require_input(cfg.max_lag >= 1, "max_lag must be positive");
  require_input(cfg.max_lag < T, "max_lag must be smaller than the series length");
  require_input(cfg.n_bootstraps >= 1, "need at least one bootstrap");
  require_input(cfg.sample_sizes.empty() || cfg.sample_sizes.size() == 1 ||
                    static_cast<int>(cfg.sample_sizes.size()) == cfg.n_bootstraps,
                "sample_sizes must have one entry per bootstrap");
  for (Index v : cfg.sample_sizes)
    require_input(v >= 1, "bootstrap sample sizes must be positive");

  const Index default_v = T - cfg.max_lag;
  std::vector<Matrix> slots(static_cast<std::size_t>(cfg.n_bootstraps));
  parallel_for(cfg.n_bootstraps, threads, [&](std::int64_t b) {
    Rng rng = make_rng(child_seed(cfg.seed, static_cast<std::uint64_t>(b)));
    detail::BootstrapDraw draw;
    draw.lags = uniform_int(rng, 1, cfg.max_lag);
    const Index v = cfg.sample_sizes.empty()
                        ? default_v
                        : (cfg.sample_sizes.size() == 1
                               ? cfg.sample_sizes[0]
                               : cfg.sample_sizes[static_cast<std::size_t>(b)]);
    draw.times.resize(static_cast<std::size_t>(v));
    for (auto& t : draw.times) t = uniform_int(rng, draw.lags, T - 1);
    slots[static_cast<std::size_t>(b)] =
        detail::slarac_bootstrap(data, cfg.max_lag, draw);
  });

  Matrix full = Matrix::Zero(d, d * cfg.max_lag);
  for (const Matrix& s : slots) full += s;  // fixed order keeps bits stable
  return detail::collapse_lags(full, d, cfg.max_lag);
}

}  // namespace tscausal
