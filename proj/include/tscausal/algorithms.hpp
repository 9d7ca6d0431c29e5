#pragma once

// Umbrella header plus a small name-based registry used by the CLI and the
// benchmark runner: default configs, key=value overrides, dispatch.

#include <charconv>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tscausal/algorithms/lasar.hpp"
#include "tscausal/algorithms/qrbs.hpp"
#include "tscausal/algorithms/selvar.hpp"
#include "tscausal/algorithms/slarac.hpp"
#include "tscausal/common.hpp"

namespace tscausal {

using AlgoConfig =
    std::variant<SlaracConfig, QrbsConfig, LasarConfig, SelvarConfig>;

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"slarac", "qrbs", "lasar",
                                                 "selvar"};
  return names;
}

inline AlgoConfig default_algo_config(const std::string& name) {
  if (name == "slarac") return SlaracConfig{};
  if (name == "qrbs") return QrbsConfig{};
  if (name == "lasar") return LasarConfig{};
  if (name == "selvar") return SelvarConfig{};
  throw InputError("unknown algorithm '" + name +
                   "' (expected slarac, qrbs, lasar or selvar)");
}

inline std::string algorithm_name(const AlgoConfig& cfg) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, SlaracConfig>) return "slarac";
        if constexpr (std::is_same_v<T, QrbsConfig>) return "qrbs";
        if constexpr (std::is_same_v<T, LasarConfig>) return "lasar";
        if constexpr (std::is_same_v<T, SelvarConfig>) return "selvar";
      },
      cfg);
}

inline void set_algorithm_seed(AlgoConfig& cfg, std::uint64_t seed) {
  std::visit([seed](auto& c) { c.seed = seed; }, cfg);
}

inline std::uint64_t algorithm_seed(const AlgoConfig& cfg) {
  return std::visit([](const auto& c) { return c.seed; }, cfg);
}

namespace detail {

inline long parse_long(const std::string& s, const std::string& what) {
  long value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InputError("cannot parse '" + s + "' as integer for " + what);
  return value;
}

inline double parse_double(const std::string& s, const std::string& what) {
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InputError("cannot parse '" + s + "' as number for " + what);
  return value;
}

inline std::vector<double> parse_double_list(const std::string& s,
                                             const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string item =
        s.substr(start, comma == std::string::npos ? std::string::npos
                                                   : comma - start);
    out.push_back(parse_double(item, what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

// Applies one flat key=value hyperparameter override; unknown keys for the
// config's algorithm are an input error.
inline void apply_algorithm_override(AlgoConfig& cfg, const std::string& key,
                                     const std::string& value) {
  using detail::parse_double;
  using detail::parse_double_list;
  using detail::parse_long;
  const auto unknown = [&]() -> InputError {
    return InputError("unknown hyperparameter '" + key + "' for algorithm " +
                      algorithm_name(cfg));
  };
  if (key == "seed") {
    set_algorithm_seed(cfg, static_cast<std::uint64_t>(parse_long(value, key)));
    return;
  }
  if (auto* c = std::get_if<SlaracConfig>(&cfg)) {
    if (key == "max_lag") c->max_lag = parse_long(value, key);
    else if (key == "n_bootstraps") c->n_bootstraps = static_cast<int>(parse_long(value, key));
    else if (key == "sample_size") c->sample_sizes = {parse_long(value, key)};
    else throw unknown();
  } else if (auto* c = std::get_if<QrbsConfig>(&cfg)) {
    if (key == "n_bootstraps") c->n_bootstraps = static_cast<int>(parse_long(value, key));
    else if (key == "sample_size") c->sample_size = parse_long(value, key);
    else if (key == "ridge_penalty") c->ridge_penalty = parse_double(value, key);
    else if (key == "quantile") c->quantile = parse_double(value, key);
    else throw unknown();
  } else if (auto* c = std::get_if<LasarConfig>(&cfg)) {
    if (key == "max_lag") c->max_lag = parse_long(value, key);
    else if (key == "n_bootstraps") c->n_bootstraps = static_cast<int>(parse_long(value, key));
    else if (key == "sample_size") c->sample_size = parse_long(value, key);
    else if (key == "lambda_grid") c->lambda_grid = parse_double_list(value, key);
    else throw unknown();
  } else if (auto* c = std::get_if<SelvarConfig>(&cfg)) {
    if (key == "max_lag") c->max_lag = parse_long(value, key);
    else if (key == "max_hill_climb_steps") c->max_hill_climb_steps = parse_long(value, key);
    else throw unknown();
  }
}

inline Matrix run_algorithm(const Matrix& data, const AlgoConfig& cfg,
                            int threads = 1) {
  return std::visit(
      [&](const auto& c) -> Matrix {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, SlaracConfig>)
          return slarac(data, c, threads);
        else if constexpr (std::is_same_v<T, QrbsConfig>)
          return qrbs(data, c, threads);
        else if constexpr (std::is_same_v<T, LasarConfig>)
          return lasar(data, c, threads);
        else
          return selvar(data, c, threads);
      },
      cfg);
}

}  // namespace tscausal
