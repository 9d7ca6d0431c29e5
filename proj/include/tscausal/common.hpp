#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tscausal {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Default seed used by the CLI and by configs that do not set one.
inline constexpr std::uint64_t kDefaultSeed = 42;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid values or parameters supplied by the caller (non-finite data,
// negative penalty, too few samples, ...).
struct InputError : Error {
  using Error::Error;
};

// A call that violates a documented precondition, e.g. mismatched dimensions.
struct ContractError : Error {
  using Error::Error;
};

// Iterative solver did not converge within its sweep budget.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, long sweeps_run)
      : Error(what), sweeps(sweeps_run) {}
  long sweeps;
};

// Numerically degenerate problem: leverage at one, singular Gram matrix,
// vanishing implied variance.
struct DegenerateError : Error {
  using Error::Error;
};

// Simulated process left the representable range.
struct InstabilityError : Error {
  using Error::Error;
};

// ROC-AUC is undefined when the truth has no positive or no negative edges.
struct UndefinedAucError : Error {
  using Error::Error;
};

// File could not be read or written.
struct IoError : Error {
  using Error::Error;
};

// Malformed text input; row and column are 1-based.
struct ParseError : Error {
  ParseError(const std::string& what, long row_, long col_)
      : Error(what), row(row_), col(col_) {}
  long row;
  long col;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ContractError(what);
}

inline void require_input(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

inline void require_finite(const Matrix& m, const std::string& name) {
  if (!m.allFinite()) throw InputError(name + " contains non-finite entries");
}

inline void require_finite(const Vector& v, const std::string& name) {
  if (!v.allFinite()) throw InputError(name + " contains non-finite entries");
}

}  // namespace tscausal
