#pragma once

// JSON documents: generator models (replayable), experiment configurations,
// and algorithm configs referenced by name plus flat parameter overrides.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "tscausal/algorithms.hpp"
#include "tscausal/common.hpp"
#include "tscausal/datagen.hpp"
#include "tscausal/experiments.hpp"

namespace tscausal {

using Json = nlohmann::json;

namespace detail {

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw InputError(what + " must be a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw InputError(what + " rows must all have the same length");
    for (Index c = 0; c < cols; ++c)
      m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

inline Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

inline Vector vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = j.at(i).get<double>();
  return v;
}

inline void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                       const std::string& context) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* key : allowed)
      if (item.key() == key) ok = true;
    if (!ok)
      throw InputError("unknown key '" + item.key() + "' in " + context);
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Generator models. The seed recorded in the document is the one the data
// was (or should be) sampled with.

inline Json sem_model_to_json(const SemModel& model, std::uint64_t seed) {
  Json j;
  j["type"] = "sem";
  j["b_matrix"] = detail::matrix_to_json(model.b);
  j["sigma"] = detail::vector_to_json(model.sigma);
  j["seed"] = seed;
  return j;
}

inline Json var_model_to_json(const VarModel& model, std::uint64_t seed) {
  Json j;
  j["type"] = "var";
  Json lags = Json::array();
  for (const Matrix& a : model.lag_coefficients)
    lags.push_back(detail::matrix_to_json(a));
  j["lag_coefficients"] = std::move(lags);
  j["sigma"] = detail::vector_to_json(model.noise_sigma);
  j["transition"] = to_string(model.transition);
  j["seed"] = seed;
  return j;
}

inline SemModel sem_model_from_json(const Json& j) {
  detail::check_keys(j, {"type", "b_matrix", "sigma", "seed"}, "sem model");
  SemModel model;
  model.b = detail::matrix_from_json(j.at("b_matrix"), "b_matrix");
  model.sigma = detail::vector_from_json(j.at("sigma"), "sigma");
  validate(model);
  return model;
}

inline VarModel var_model_from_json(const Json& j) {
  detail::check_keys(j, {"type", "lag_coefficients", "sigma", "transition", "seed"},
                     "var model");
  VarModel model;
  for (const Json& a : j.at("lag_coefficients"))
    model.lag_coefficients.push_back(
        detail::matrix_from_json(a, "lag_coefficients"));
  model.noise_sigma = detail::vector_from_json(j.at("sigma"), "sigma");
  model.transition =
      transition_from_string(j.value("transition", std::string("identity")));
  validate(model);
  return model;
}

// ---------------------------------------------------------------------------
// Experiment configurations.

struct ScalingRunSpec {
  ScalingExperimentConfig base;      // regime field is overwritten per run
  std::vector<Regime> regimes;       // defaults to all three
};

inline ScalingRunSpec scaling_spec_from_json(const Json& j) {
  detail::check_keys(j,
                     {"d", "n", "repetitions", "edge_prob", "regimes",
                      "decreasing_ratio", "master_seed"},
                     "iid-scaling config");
  ScalingRunSpec spec;
  spec.base.d = j.value("d", spec.base.d);
  spec.base.n = j.value("n", spec.base.n);
  spec.base.repetitions = j.value("repetitions", spec.base.repetitions);
  spec.base.edge_prob = j.value("edge_prob", spec.base.edge_prob);
  spec.base.decreasing_ratio =
      j.value("decreasing_ratio", spec.base.decreasing_ratio);
  spec.base.master_seed = j.value("master_seed", spec.base.master_seed);
  if (j.contains("regimes")) {
    for (const Json& r : j.at("regimes"))
      spec.regimes.push_back(regime_from_string(r.get<std::string>()));
    require_input(!spec.regimes.empty(), "regimes must be non-empty");
  } else {
    spec.regimes = {Regime::EqualError, Regime::EqualMarginal,
                    Regime::DecreasingMarginal};
  }
  return spec;
}

struct BenchmarkRunSpec {
  VarGeneratorSpec generator;
  std::vector<AlgoConfig> algorithms;  // defaults to all four
  int repetitions = 20;
  std::uint64_t master_seed = kDefaultSeed;
};

inline AlgoConfig algo_config_from_json(const Json& j) {
  detail::check_keys(j, {"name", "params"}, "algorithm spec");
  AlgoConfig cfg = default_algo_config(j.at("name").get<std::string>());
  if (j.contains("params")) {
    for (const auto& item : j.at("params").items()) {
      std::string value;
      if (item.value().is_string()) {
        value = item.value().get<std::string>();
      } else if (item.value().is_array()) {
        for (std::size_t k = 0; k < item.value().size(); ++k) {
          if (k) value += ',';
          value += item.value().at(k).dump();
        }
      } else {
        value = item.value().dump();
      }
      apply_algorithm_override(cfg, item.key(), value);
    }
  }
  return cfg;
}

inline BenchmarkRunSpec benchmark_spec_from_json(const Json& j) {
  detail::check_keys(j, {"generator", "algorithms", "repetitions", "master_seed"},
                     "var-benchmark config");
  BenchmarkRunSpec spec;
  if (j.contains("generator")) {
    const Json& g = j.at("generator");
    detail::check_keys(g,
                       {"d", "T", "lags", "edge_prob", "spectral_radius",
                        "noise_sigma", "transition", "burn_in"},
                       "generator spec");
    spec.generator.d = g.value("d", spec.generator.d);
    spec.generator.T = g.value("T", spec.generator.T);
    spec.generator.lags = g.value("lags", spec.generator.lags);
    spec.generator.edge_prob = g.value("edge_prob", spec.generator.edge_prob);
    spec.generator.spectral_radius =
        g.value("spectral_radius", spec.generator.spectral_radius);
    spec.generator.noise_sigma =
        g.value("noise_sigma", spec.generator.noise_sigma);
    spec.generator.burn_in = g.value("burn_in", spec.generator.burn_in);
    if (g.contains("transition"))
      spec.generator.transition =
          transition_from_string(g.at("transition").get<std::string>());
  }
  if (j.contains("algorithms")) {
    for (const Json& a : j.at("algorithms"))
      spec.algorithms.push_back(algo_config_from_json(a));
    require_input(!spec.algorithms.empty(), "algorithms must be non-empty");
  } else {
    for (const std::string& name : algorithm_names())
      spec.algorithms.push_back(default_algo_config(name));
  }
  spec.repetitions = j.value("repetitions", spec.repetitions);
  spec.master_seed = j.value("master_seed", spec.master_seed);
  return spec;
}

}  // namespace tscausal
