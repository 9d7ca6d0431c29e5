#pragma once

// Report serialisation: JSON documents plus plot-ready long-format CSVs.

#include <string>
#include <utility>
#include <vector>

#include "tscausal/experiments.hpp"
#include "tscausal/io/csv.hpp"
#include "tscausal/io/json.hpp"

namespace tscausal {

inline Json scaling_config_to_json(const ScalingExperimentConfig& cfg) {
  Json j;
  j["d"] = cfg.d;
  j["n"] = cfg.n;
  j["repetitions"] = cfg.repetitions;
  j["edge_prob"] = cfg.edge_prob;
  j["regime"] = to_string(cfg.regime);
  j["decreasing_ratio"] = cfg.decreasing_ratio;
  j["master_seed"] = cfg.master_seed;
  return j;
}

inline Json scaling_report_to_json(const ExperimentReport& report) {
  Json j;
  j["config"] = scaling_config_to_json(report.config);
  Json records = Json::array();
  for (const RepetitionRecord& r : report.records) {
    Json rec;
    rec["seed"] = r.seed;
    rec["auc_coef"] = r.auc_coef;
    rec["auc_tstat"] = r.auc_tstat;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  j["mean_marginal_variance"] =
      detail::vector_to_json(report.mean_marginal_variance);
  j["summary"] = {
      {"coef", {{"mean", report.coef.mean}, {"stddev", report.coef.stddev}}},
      {"tstat",
       {{"mean", report.tstat.mean}, {"stddev", report.tstat.stddev}}},
      {"paired_difference",
       {{"mean", report.paired_diff_mean},
        {"standard_error", report.paired_diff_se}}}};
  return j;
}

inline Json benchmark_report_to_json(const BenchmarkReport& report) {
  Json j;
  j["generator"] = {{"d", report.generator.d},
                    {"T", report.generator.T},
                    {"lags", report.generator.lags},
                    {"edge_prob", report.generator.edge_prob},
                    {"spectral_radius", report.generator.spectral_radius},
                    {"noise_sigma", report.generator.noise_sigma},
                    {"transition", to_string(report.generator.transition)},
                    {"burn_in", report.generator.burn_in}};
  j["repetitions"] = report.repetitions;
  j["master_seed"] = report.master_seed;
  Json entries = Json::array();
  for (const BenchmarkEntry& e : report.entries) {
    Json entry;
    entry["algorithm"] = e.algorithm;
    entry["aucs"] = e.aucs;
    entry["mean"] = e.summary.mean;
    entry["stddev"] = e.summary.stddev;
    entries.push_back(std::move(entry));
  }
  j["entries"] = std::move(entries);
  return j;
}

// Long-format AUC table: one row per (regime, repetition, scorer).
inline std::string scaling_auc_csv(
    const std::vector<ExperimentReport>& reports) {
  std::string out = "regime,repetition,scorer,auc\n";
  for (const ExperimentReport& report : reports) {
    const std::string regime = to_string(report.config.regime);
    for (std::size_t r = 0; r < report.records.size(); ++r) {
      out += regime + ',' + std::to_string(r) + ",coef," +
             format_double(report.records[r].auc_coef) + '\n';
      out += regime + ',' + std::to_string(r) + ",tstat," +
             format_double(report.records[r].auc_tstat) + '\n';
    }
  }
  return out;
}

// Long-format variance profile: one row per (regime, causal index).
inline std::string scaling_variance_csv(
    const std::vector<ExperimentReport>& reports) {
  std::string out = "regime,causal_index,mean_variance\n";
  for (const ExperimentReport& report : reports) {
    const std::string regime = to_string(report.config.regime);
    for (Index i = 0; i < report.mean_marginal_variance.size(); ++i)
      out += regime + ',' + std::to_string(i) + ',' +
             format_double(report.mean_marginal_variance[i]) + '\n';
  }
  return out;
}

inline std::string benchmark_auc_csv(const BenchmarkReport& report) {
  std::string out = "algorithm,repetition,auc\n";
  for (const BenchmarkEntry& e : report.entries)
    for (std::size_t r = 0; r < e.aucs.size(); ++r)
      out += e.algorithm + ',' + std::to_string(r) + ',' +
             format_double(e.aucs[r]) + '\n';
  return out;
}

}  // namespace tscausal
