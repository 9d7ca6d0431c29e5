#pragma once

// QRBS: quantiles of ridge-regressed bootstrap samples. Each bootstrap
// ridge-regresses the one-step differences X(t) - X(t-1) onto X(t-1); the
// score is an elementwise quantile of the absolute coefficients.

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "tscausal/algorithms/common.hpp"
#include "tscausal/common.hpp"
#include "tscausal/parallel.hpp"
#include "tscausal/random.hpp"
#include "tscausal/regression.hpp"

namespace tscausal {

struct QrbsConfig {
  int n_bootstraps = 200;
  std::optional<Index> sample_size;  // default T - 1
  double ridge_penalty = 1.0;
  double quantile = 0.75;
  std::uint64_t seed = kDefaultSeed;
};

inline Matrix qrbs(const Matrix& data, const QrbsConfig& cfg,
                   int threads = 1) {
  detail::validate_time_series(data);
  const Index T = data.rows();
  const Index d = data.cols();
  require_input(cfg.n_bootstraps >= 1, "need at least one bootstrap");
  require_input(cfg.ridge_penalty >= 0.0, "ridge penalty must be non-negative");
  require_input(cfg.quantile >= 0.0 && cfg.quantile <= 1.0,
                "quantile must lie in [0, 1]");
  const Index v = cfg.sample_size.value_or(T - 1);
  require_input(v >= 1, "bootstrap sample size must be positive");

  std::vector<Matrix> slots(static_cast<std::size_t>(cfg.n_bootstraps));
  parallel_for(cfg.n_bootstraps, threads, [&](std::int64_t b) {
    Rng rng = make_rng(child_seed(cfg.seed, static_cast<std::uint64_t>(b)));
    Matrix diffs(v, d);
    Matrix past(v, d);
    for (Index k = 0; k < v; ++k) {
      const Index t = uniform_int(rng, 1, T - 1);
      diffs.row(k) = data.row(t) - data.row(t - 1);
      past.row(k) = data.row(t - 1);
    }
    slots[static_cast<std::size_t>(b)] =
        ridge_fit(past, diffs, cfg.ridge_penalty).cwiseAbs();
  });

  Matrix scores(d, d);
  std::vector<double> buf(slots.size());
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c) {
      for (std::size_t b = 0; b < slots.size(); ++b) buf[b] = slots[b](r, c);
      std::sort(buf.begin(), buf.end());
      // (r, c) indexes response r / predictor c; flip to the i->j convention.
      scores(c, r) = detail::sorted_quantile(buf, cfg.quantile);
    }
  return scores;
}

}  // namespace tscausal
