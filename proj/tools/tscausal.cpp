// Command line front end: run a scoring algorithm on a CSV time series,
// generate synthetic data with known ground truth, run experiments, and
// evaluate score matrices against a truth adjacency.
//
// Exit codes: 0 success, 2 invalid input or arguments, 3 computation error,
// 4 I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "tscausal/tscausal.hpp"

namespace {

using namespace tscausal;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;
constexpr int kExitIo = 4;

struct GlobalOpts {
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
  bool quiet = false;
};

// Column-wise z-scoring (sample standard deviation). Constant columns have
// no scale and are rejected.
Matrix normalise_columns(const Matrix& data) {
  require_input(data.rows() >= 2, "normalising needs at least two rows");
  Matrix out = data;
  for (Index j = 0; j < out.cols(); ++j) {
    const double mean = out.col(j).mean();
    out.col(j).array() -= mean;
    const double sd = std::sqrt(out.col(j).squaredNorm() /
                                static_cast<double>(out.rows() - 1));
    if (!(sd > 0.0))
      throw InputError("column " + std::to_string(j + 1) +
                       " is constant and cannot be normalised");
    out.col(j) /= sd;
  }
  return out;
}

std::pair<std::string, std::string> split_key_value(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw InputError("expected key=value, got '" + kv + "'");
  return {kv.substr(0, eq), kv.substr(eq + 1)};
}

int do_run(const GlobalOpts& global, const std::string& algorithm,
           const std::string& input, const std::string& output,
           bool normalise, const std::vector<std::string>& params) {
  AlgoConfig cfg = default_algo_config(algorithm);
  set_algorithm_seed(cfg, global.seed);
  for (const std::string& kv : params) {
    const auto [key, value] = split_key_value(kv);
    apply_algorithm_override(cfg, key, value);
  }

  CsvMatrix series;
  try {
    series = read_time_series_csv(read_file(input));
  } catch (const ParseError& e) {
    throw ParseError(input + ":" + std::to_string(e.row) + ":" +
                         std::to_string(e.col) + ": " + e.what(),
                     e.row, e.col);
  }
  require_input(series.values.allFinite(),
                "time series contains non-finite values");
  const Matrix data =
      normalise ? normalise_columns(series.values) : series.values;

  const Matrix scores = run_algorithm(data, cfg, global.threads);
  write_file_atomic(output, write_labeled_matrix_csv(scores, series.names));
  if (!global.quiet)
    std::fprintf(stderr, "%s: d=%ld T=%ld seed=%llu -> %s\n",
                 algorithm.c_str(), static_cast<long>(data.cols()),
                 static_cast<long>(data.rows()),
                 static_cast<unsigned long long>(algorithm_seed(cfg)),
                 output.c_str());
  return kExitOk;
}

int do_simulate_sem(const GlobalOpts& global, Index dim, Index samples,
                    double edge_prob, const std::string& prefix) {
  const SemModel model = random_sem(dim, edge_prob, child_seed(global.seed, 0));
  const Matrix data = sample_sem(model, samples, child_seed(global.seed, 1));
  const auto names = tscausal::detail::default_names(dim);
  write_file_atomic(prefix + "_data.csv", write_time_series_csv(data, names));
  write_file_atomic(prefix + "_truth.csv",
                    write_labeled_matrix_csv(adjacency(model), names));
  write_file_atomic(prefix + "_model.json",
                    sem_model_to_json(model, global.seed).dump(2) + "\n");
  if (!global.quiet)
    std::fprintf(stderr, "sem: d=%ld n=%ld seed=%llu -> %s_{data,truth,model}\n",
                 static_cast<long>(dim), static_cast<long>(samples),
                 static_cast<unsigned long long>(global.seed), prefix.c_str());
  return kExitOk;
}

int do_simulate_var(const GlobalOpts& global, Index dim, Index length,
                    Index lags, double edge_prob, double radius,
                    double noise_sigma, const std::string& transition,
                    Index burn_in, const std::string& prefix) {
  const VarModel model =
      random_var(dim, lags, edge_prob, radius, noise_sigma,
                 transition_from_string(transition), child_seed(global.seed, 0));
  const auto [data, truth] =
      sample_var(model, length, burn_in, child_seed(global.seed, 1));
  const auto names = tscausal::detail::default_names(dim);
  write_file_atomic(prefix + "_data.csv", write_time_series_csv(data, names));
  write_file_atomic(prefix + "_truth.csv",
                    write_labeled_matrix_csv(truth, names));
  write_file_atomic(prefix + "_model.json",
                    var_model_to_json(model, global.seed).dump(2) + "\n");
  if (!global.quiet)
    std::fprintf(stderr, "var: d=%ld T=%ld seed=%llu -> %s_{data,truth,model}\n",
                 static_cast<long>(dim), static_cast<long>(length),
                 static_cast<unsigned long long>(global.seed), prefix.c_str());
  return kExitOk;
}

Json parse_json(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

int do_experiment(const GlobalOpts& global, const std::string& name,
                  const std::string& config_path, const std::string& out_dir) {
  const Json config = parse_json(read_file(config_path), config_path);
  const std::filesystem::path out(out_dir);

  if (name == "iid-scaling") {
    ScalingRunSpec spec = scaling_spec_from_json(config);
    std::vector<ExperimentReport> reports;
    Json report_json = Json::array();
    for (Regime regime : spec.regimes) {
      ScalingExperimentConfig cfg = spec.base;
      cfg.regime = regime;
      reports.push_back(run_scaling_experiment(cfg, global.threads));
      report_json.push_back(scaling_report_to_json(reports.back()));
      if (!global.quiet)
        std::fprintf(stderr,
                     "iid-scaling %s: mean auc coef=%.4f tstat=%.4f\n",
                     to_string(regime).c_str(), reports.back().coef.mean,
                     reports.back().tstat.mean);
    }
    write_file_atomic(out / "report.json",
                      Json{{"regimes", report_json}}.dump(2) + "\n");
    write_file_atomic(out / "auc.csv", scaling_auc_csv(reports));
    write_file_atomic(out / "variance.csv", scaling_variance_csv(reports));
    return kExitOk;
  }
  if (name == "var-benchmark") {
    const BenchmarkRunSpec spec = benchmark_spec_from_json(config);
    const BenchmarkReport report =
        run_algorithm_benchmark(spec.generator, spec.algorithms,
                                spec.repetitions, spec.master_seed,
                                global.threads);
    write_file_atomic(out / "report.json",
                      benchmark_report_to_json(report).dump(2) + "\n");
    write_file_atomic(out / "auc.csv", benchmark_auc_csv(report));
    if (!global.quiet)
      for (const BenchmarkEntry& e : report.entries)
        std::fprintf(stderr, "var-benchmark %s: mean auc=%.4f\n",
                     e.algorithm.c_str(), e.summary.mean);
    return kExitOk;
  }
  throw InputError("unknown experiment '" + name +
                   "' (expected iid-scaling or var-benchmark)");
}

int do_evaluate(const std::string& scores_path, const std::string& truth_path,
                bool include_diagonal) {
  const CsvMatrix scores = read_labeled_matrix_csv(read_file(scores_path));
  const CsvMatrix truth = read_labeled_matrix_csv(read_file(truth_path));
  const double auc = roc_auc(scores.values, truth.values, include_diagonal);
  std::printf("%.6f\n", auc);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal structure learning for multivariate time series"};
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--seed", global.seed, "Master random seed")
      ->capture_default_str();
  app.add_option("--threads", global.threads, "Worker thread cap")
      ->capture_default_str();
  app.add_flag("--quiet", global.quiet, "Suppress progress output");

  // run
  auto* run = app.add_subcommand("run", "Score edges of a CSV time series");
  std::string algorithm, input, output;
  bool normalise = false;
  std::vector<std::string> params;
  run->add_option("--algorithm,-a", algorithm, "slarac, qrbs, lasar or selvar")
      ->required();
  run->add_option("--input,-i", input, "Input time series CSV")->required();
  run->add_option("--output,-o", output, "Output score matrix CSV")->required();
  run->add_flag("--normalise", normalise, "Z-score columns before scoring");
  run->add_option("--param,-p", params, "Hyperparameter override key=value");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Generate synthetic data");
  simulate->require_subcommand(1);
  Index dim = 3, samples = 200, length = 500, lags = 1, burn_in = 200;
  double edge_prob = 0.25, radius = 0.8, noise_sigma = 1.0;
  std::string transition = "identity", prefix;
  auto* sem = simulate->add_subcommand("sem", "Acyclic linear Gaussian model");
  sem->add_option("--dim", dim, "Number of variables")->capture_default_str();
  sem->add_option("--samples", samples, "Number of iid samples")
      ->capture_default_str();
  sem->add_option("--edge-prob", edge_prob, "Lower-triangle edge probability")
      ->capture_default_str();
  sem->add_option("--out-prefix", prefix, "Output path prefix")->required();
  auto* var = simulate->add_subcommand("var", "Vector autoregression");
  var->add_option("--dim", dim, "Number of variables")->capture_default_str();
  var->add_option("--length", length, "Series length")->capture_default_str();
  var->add_option("--lags", lags, "Model order")->capture_default_str();
  var->add_option("--edge-prob", edge_prob, "Coefficient density")
      ->capture_default_str();
  var->add_option("--spectral-radius", radius, "Companion spectral radius")
      ->capture_default_str();
  var->add_option("--noise-sigma", noise_sigma, "Noise standard deviation")
      ->capture_default_str();
  var->add_option("--transition", transition, "identity, tanh or quadratic")
      ->capture_default_str();
  var->add_option("--burn-in", burn_in, "Discarded initial samples")
      ->capture_default_str();
  var->add_option("--out-prefix", prefix, "Output path prefix")->required();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a named experiment");
  std::string exp_name, config_path, out_dir;
  experiment->add_option("name", exp_name, "iid-scaling or var-benchmark")
      ->required();
  experiment->add_option("--config", config_path, "JSON config file")
      ->required();
  experiment->add_option("--out-dir", out_dir, "Output directory")->required();

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "ROC-AUC of scores vs truth");
  std::string scores_path, truth_path;
  bool include_diagonal = false;
  evaluate->add_option("--scores", scores_path, "Score matrix CSV")->required();
  evaluate->add_option("--truth", truth_path, "Truth adjacency CSV")->required();
  evaluate->add_flag("--include-diagonal", include_diagonal,
                     "Score self-loops too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*run) return do_run(global, algorithm, input, output, normalise, params);
    if (*sem) return do_simulate_sem(global, dim, samples, edge_prob, prefix);
    if (*var)
      return do_simulate_var(global, dim, length, lags, edge_prob, radius,
                             noise_sigma, transition, burn_in, prefix);
    if (*experiment)
      return do_experiment(global, exp_name, config_path, out_dir);
    if (*evaluate)
      return do_evaluate(scores_path, truth_path, include_diagonal);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const ContractError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCompute;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCompute;
  }
  return kExitOk;
}
