#pragma once

// Experiment orchestration: the iid scaling study (three marginal-variance
// regimes, coefficient vs T-statistic edge scoring) and algorithm benchmarks
// on generated VAR data. Everything is deterministic given the master seed;
// repetitions use per-index child seeds so any one record is independent of
// how many others run.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tscausal/algorithms.hpp"
#include "tscausal/common.hpp"
#include "tscausal/datagen.hpp"
#include "tscausal/evaluation.hpp"
#include "tscausal/parallel.hpp"
#include "tscausal/random.hpp"

namespace tscausal {

enum class Regime { EqualError, EqualMarginal, DecreasingMarginal };

inline std::string to_string(Regime r) {
  switch (r) {
    case Regime::EqualError: return "equal_error";
    case Regime::EqualMarginal: return "equal_marginal";
    case Regime::DecreasingMarginal: return "decreasing_marginal";
  }
  throw InputError("unknown regime");
}

inline Regime regime_from_string(const std::string& s) {
  if (s == "equal_error") return Regime::EqualError;
  if (s == "equal_marginal") return Regime::EqualMarginal;
  if (s == "decreasing_marginal") return Regime::DecreasingMarginal;
  throw InputError("unknown regime '" + s +
                   "' (expected equal_error, equal_marginal or "
                   "decreasing_marginal)");
}

struct ScalingExperimentConfig {
  Index d = 50;
  Index n = 200;
  int repetitions = 100;
  double edge_prob = 0.25;
  Regime regime = Regime::EqualError;
  double decreasing_ratio = 0.9;
  std::uint64_t master_seed = kDefaultSeed;
};

struct RepetitionRecord {
  std::uint64_t seed;
  double auc_coef;
  double auc_tstat;
};

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
};

struct ExperimentReport {
  ScalingExperimentConfig config;
  std::vector<RepetitionRecord> records;
  Vector mean_marginal_variance;  // by causal index, averaged over models
  SummaryStats coef;
  SummaryStats tstat;
  double paired_diff_mean = 0.0;  // mean(auc_coef - auc_tstat)
  double paired_diff_se = 0.0;    // stddev of differences / sqrt(repetitions)
};

namespace detail {

inline void validate(const ScalingExperimentConfig& cfg) {
  require_input(cfg.d >= 2, "need at least two variables");
  require_input(cfg.n > cfg.d, "need more samples than variables");
  require_input(cfg.repetitions >= 1, "need at least one repetition");
  require_input(cfg.edge_prob >= 0.0 && cfg.edge_prob <= 1.0,
                "edge probability must lie in [0, 1]");
  if (cfg.regime == Regime::DecreasingMarginal)
    require_input(cfg.decreasing_ratio > 0.0 && cfg.decreasing_ratio < 1.0,
                  "decreasing ratio must lie in (0, 1)");
}

// The model of one repetition: a random SEM, rescaled according to the
// regime. Shared between the experiment and variance_profile so both see
// exactly the same models.
inline SemModel scaling_model(const ScalingExperimentConfig& cfg,
                              std::uint64_t rep_seed) {
  SemModel model = random_sem(cfg.d, cfg.edge_prob, child_seed(rep_seed, 0));
  switch (cfg.regime) {
    case Regime::EqualError:
      break;
    case Regime::EqualMarginal:
      model = rescale_sem(model, Vector::Ones(cfg.d));
      break;
    case Regime::DecreasingMarginal: {
      Vector targets(cfg.d);
      for (Index i = 0; i < cfg.d; ++i)
        targets[i] = std::pow(cfg.decreasing_ratio, static_cast<double>(i));
      model = rescale_sem(model, targets);
      break;
    }
  }
  return model;
}

inline SummaryStats summarize(const std::vector<double>& values) {
  SummaryStats s;
  const auto n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

}  // namespace detail

// Runs the scaling study: per repetition draw a model, rescale per regime,
// sample iid data, score edges with absolute coefficients and with
// T-statistics, and record both AUCs against the model's adjacency. A failed
// repetition aborts the run.
inline ExperimentReport run_scaling_experiment(
    const ScalingExperimentConfig& cfg, int threads = 1) {
  detail::validate(cfg);
  const auto reps = static_cast<std::size_t>(cfg.repetitions);
  std::vector<RepetitionRecord> records(reps);
  std::vector<Vector> variances(reps);
  parallel_for(cfg.repetitions, threads, [&](std::int64_t r) {
    const std::uint64_t rep_seed =
        child_seed(cfg.master_seed, static_cast<std::uint64_t>(r));
    const SemModel model = detail::scaling_model(cfg, rep_seed);
    const Matrix data = sample_sem(model, cfg.n, child_seed(rep_seed, 1));
    const Matrix truth = adjacency(model);
    const double auc_coef = roc_auc(coef_scores(data).values, truth);
    const double auc_tstat = roc_auc(tstat_scores(data).values, truth);
    records[static_cast<std::size_t>(r)] = {rep_seed, auc_coef, auc_tstat};
    variances[static_cast<std::size_t>(r)] = marginal_variances(model);
  });

  ExperimentReport report;
  report.config = cfg;
  report.records = std::move(records);
  report.mean_marginal_variance = Vector::Zero(cfg.d);
  for (const Vector& v : variances) report.mean_marginal_variance += v;
  report.mean_marginal_variance /= static_cast<double>(cfg.repetitions);

  std::vector<double> coef_aucs(reps), tstat_aucs(reps), diffs(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    coef_aucs[r] = report.records[r].auc_coef;
    tstat_aucs[r] = report.records[r].auc_tstat;
    diffs[r] = coef_aucs[r] - tstat_aucs[r];
  }
  report.coef = detail::summarize(coef_aucs);
  report.tstat = detail::summarize(tstat_aucs);
  const SummaryStats diff = detail::summarize(diffs);
  report.paired_diff_mean = diff.mean;
  report.paired_diff_se =
      diff.stddev / std::sqrt(static_cast<double>(cfg.repetitions));
  return report;
}

// Mean marginal variance by causal index over the experiment's models (after
// regime rescaling); no data is sampled.
inline Vector variance_profile(const ScalingExperimentConfig& cfg,
                               int threads = 1) {
  detail::validate(cfg);
  std::vector<Vector> variances(static_cast<std::size_t>(cfg.repetitions));
  parallel_for(cfg.repetitions, threads, [&](std::int64_t r) {
    const std::uint64_t rep_seed =
        child_seed(cfg.master_seed, static_cast<std::uint64_t>(r));
    variances[static_cast<std::size_t>(r)] =
        marginal_variances(detail::scaling_model(cfg, rep_seed));
  });
  Vector profile = Vector::Zero(cfg.d);
  for (const Vector& v : variances) profile += v;
  return profile / static_cast<double>(cfg.repetitions);
}

// ---------------------------------------------------------------------------
// VAR benchmark: sample data with known truth, run each configured
// algorithm, record the per-repetition AUCs.

struct VarGeneratorSpec {
  Index d = 5;
  Index T = 500;
  Index lags = 1;
  double edge_prob = 0.3;
  double spectral_radius = 0.8;
  double noise_sigma = 1.0;
  Transition transition = Transition::Identity;
  Index burn_in = 200;
};

struct BenchmarkEntry {
  std::string algorithm;
  std::vector<double> aucs;  // one per repetition
  SummaryStats summary;
};

struct BenchmarkReport {
  VarGeneratorSpec generator;
  int repetitions = 0;
  std::uint64_t master_seed = kDefaultSeed;
  std::vector<BenchmarkEntry> entries;
};

inline BenchmarkReport run_algorithm_benchmark(
    const VarGeneratorSpec& gen, const std::vector<AlgoConfig>& algorithms,
    int repetitions, std::uint64_t master_seed, int threads = 1) {
  require_input(repetitions >= 1, "need at least one repetition");
  require_input(!algorithms.empty(), "need at least one algorithm");
  const auto n_algos = algorithms.size();
  std::vector<std::vector<double>> aucs(
      n_algos, std::vector<double>(static_cast<std::size_t>(repetitions)));
  parallel_for(repetitions, threads, [&](std::int64_t r) {
    const std::uint64_t rep_seed =
        child_seed(master_seed, static_cast<std::uint64_t>(r));
    const VarModel model =
        random_var(gen.d, gen.lags, gen.edge_prob, gen.spectral_radius,
                   gen.noise_sigma, gen.transition, child_seed(rep_seed, 0));
    const auto [data, truth] =
        sample_var(model, gen.T, gen.burn_in, child_seed(rep_seed, 1));
    for (std::size_t a = 0; a < n_algos; ++a) {
      AlgoConfig cfg = algorithms[a];
      set_algorithm_seed(cfg, child_seed(rep_seed, 2 + a));
      aucs[a][static_cast<std::size_t>(r)] =
          roc_auc(run_algorithm(data, cfg), truth);
    }
  });

  BenchmarkReport report;
  report.generator = gen;
  report.repetitions = repetitions;
  report.master_seed = master_seed;
  for (std::size_t a = 0; a < n_algos; ++a) {
    BenchmarkEntry entry;
    entry.algorithm = algorithm_name(algorithms[a]);
    entry.aucs = aucs[a];
    entry.summary = detail::summarize(entry.aucs);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace tscausal
