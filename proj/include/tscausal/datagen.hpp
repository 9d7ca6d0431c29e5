#pragma once

// Synthetic data with known ground truth: an acyclic linear Gaussian SEM
// (iid draws, three marginal-variance regimes via rescaling) and linear or
// elementwise-nonlinear VAR time series.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tscausal/common.hpp"
#include "tscausal/random.hpp"

namespace tscausal {

// ---------------------------------------------------------------------------
// Acyclic linear Gaussian SEM: X = B X + N, B strictly lower triangular.

struct SemModel {
  Matrix b;      // d x d strictly lower-triangular structural coefficients
  Vector sigma;  // d noise standard deviations, all positive
};

inline void validate(const SemModel& model) {
  const Index d = model.b.rows();
  require(model.b.cols() == d, "B must be square");
  require(model.sigma.size() == d, "sigma size must match B");
  require_finite(model.b, "B");
  require_finite(model.sigma, "sigma");
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j)
      require_input(model.b(i, j) == 0.0, "B must be strictly lower triangular");
  require_input((model.sigma.array() > 0.0).all(),
                "noise standard deviations must be positive");
}

// Ground-truth summary adjacency: (i,j) = 1 iff X_i enters the equation of
// X_j, i.e. B(j,i) != 0.
inline Matrix adjacency(const SemModel& model) {
  const Index d = model.b.rows();
  Matrix a = Matrix::Zero(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i)
      if (model.b(j, i) != 0.0) a(i, j) = 1.0;
  return a;
}

// n iid draws of X = (I - B)^{-1} N with N ~ Normal(0, diag(sigma^2)),
// arranged as an n x d matrix with columns centred to exactly zero mean.
inline Matrix sample_sem(const SemModel& model, Index n, std::uint64_t seed) {
  validate(model);
  require_input(n >= 1, "need at least one sample");
  const Index d = model.b.rows();
  Rng rng = make_rng(seed);
  Matrix noise(n, d);
  for (Index t = 0; t < n; ++t)
    for (Index j = 0; j < d; ++j)
      noise(t, j) = model.sigma[j] * standard_normal(rng);
  const Matrix lhs = Matrix::Identity(d, d) - model.b;  // unit lower triangular
  Matrix x = lhs.triangularView<Eigen::Lower>()
                 .solve(noise.transpose())
                 .transpose();
  x.rowwise() -= x.colwise().mean();
  return x;
}

// Random strictly lower-triangular model: each lower-triangle entry is a
// standard Gaussian with probability edge_prob and zero otherwise; unit
// noise variances.
inline SemModel random_sem(Index d, double edge_prob, std::uint64_t seed) {
  require_input(d >= 1, "dimension must be positive");
  require_input(edge_prob >= 0.0 && edge_prob <= 1.0,
                "edge probability must lie in [0, 1]");
  Rng rng = make_rng(seed);
  SemModel model;
  model.b = Matrix::Zero(d, d);
  model.sigma = Vector::Ones(d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < i; ++j)
      if (uniform01(rng) < edge_prob) model.b(i, j) = standard_normal(rng);
  return model;
}

// Diagonal of (I - B)^{-1} diag(sigma^2) (I - B)^{-T}, computed exactly via
// a triangular solve.
inline Vector marginal_variances(const SemModel& model) {
  const Index d = model.b.rows();
  require(model.b.cols() == d && model.sigma.size() == d,
          "inconsistent model dimensions");
  const Matrix lhs = Matrix::Identity(d, d) - model.b;
  const Matrix m = lhs.triangularView<Eigen::Lower>().solve(
      Matrix(model.sigma.asDiagonal()));
  return m.rowwise().squaredNorm();
}

// Rescales rows of B and the noise scales, sweeping in causal order, so that
// the marginal variances equal the targets. Zero entries of B stay zero.
inline SemModel rescale_sem(const SemModel& model, const Vector& targets) {
  const Index d = model.b.rows();
  require(model.b.cols() == d && model.sigma.size() == d,
          "inconsistent model dimensions");
  require(targets.size() == d, "target size must match model dimension");
  require_input((targets.array() > 0.0).all(), "targets must be positive");
  require_finite(model.b, "B");
  SemModel out = model;
  Matrix cov = Matrix::Zero(d, d);  // covariance of the rescaled prefix
  for (Index i = 0; i < d; ++i) {
    const auto b_head = out.b.row(i).head(i);
    const double implied =
        i == 0 ? 0.0
               : double(b_head * cov.topLeftCorner(i, i) * b_head.transpose());
    const double v = implied + out.sigma[i] * out.sigma[i];
    if (!(v > 0.0))
      throw DegenerateError("implied marginal variance vanished at index " +
                            std::to_string(i));
    const double s = std::sqrt(targets[i] / v);
    if (i > 0) {
      const Vector cross =
          cov.topLeftCorner(i, i) * b_head.transpose() * s;
      cov.row(i).head(i) = cross.transpose();
      cov.col(i).head(i) = cross;
    }
    out.b.row(i).head(i) *= s;
    out.sigma[i] *= s;
    cov(i, i) = targets[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// VAR generator: X(t) = g(sum_l A(l) X(t-l)) + N(t).

enum class Transition { Identity, Tanh, Quadratic };

inline std::string to_string(Transition t) {
  switch (t) {
    case Transition::Identity: return "identity";
    case Transition::Tanh: return "tanh";
    case Transition::Quadratic: return "quadratic";
  }
  throw InputError("unknown transition");
}

inline Transition transition_from_string(const std::string& s) {
  if (s == "identity") return Transition::Identity;
  if (s == "tanh") return Transition::Tanh;
  if (s == "quadratic") return Transition::Quadratic;
  throw InputError("unknown transition '" + s +
                   "' (expected identity, tanh or quadratic)");
}

// Elementwise transition maps; all are increasing on the range the stationary
// process visits, so the summary-graph support equals the coefficient support.
inline double apply_transition(Transition t, double x) {
  switch (t) {
    case Transition::Identity: return x;
    case Transition::Tanh: return std::tanh(x);
    case Transition::Quadratic: {
      const double z = std::clamp(x, -5.0, 5.0);
      return z + 0.1 * z * z;
    }
  }
  throw InputError("unknown transition");
}

struct VarModel {
  std::vector<Matrix> lag_coefficients;  // A(1..L), rows index responses
  Vector noise_sigma;
  Transition transition = Transition::Identity;
};

// Spectral radius of the companion matrix of the linear part.
inline double spectral_radius(const VarModel& model) {
  const auto L = static_cast<Index>(model.lag_coefficients.size());
  require(L >= 1, "VAR model needs at least one lag matrix");
  const Index d = model.lag_coefficients[0].rows();
  Matrix companion = Matrix::Zero(d * L, d * L);
  for (Index l = 0; l < L; ++l)
    companion.block(0, l * d, d, d) = model.lag_coefficients[l];
  if (L > 1)
    companion.block(d, 0, d * (L - 1), d * (L - 1)) =
        Matrix::Identity(d * (L - 1), d * (L - 1));
  return Eigen::EigenSolver<Matrix>(companion, false)
      .eigenvalues()
      .cwiseAbs()
      .maxCoeff();
}

inline void validate(const VarModel& model) {
  const auto L = static_cast<Index>(model.lag_coefficients.size());
  require(L >= 1, "VAR model needs at least one lag matrix");
  const Index d = model.lag_coefficients[0].rows();
  for (const Matrix& a : model.lag_coefficients) {
    require(a.rows() == d && a.cols() == d, "lag matrices must be d x d");
    require_finite(a, "lag coefficients");
  }
  require(model.noise_sigma.size() == d, "noise sigma size must match");
  require_input((model.noise_sigma.array() > 0.0).all(),
                "noise standard deviations must be positive");
  const double radius = spectral_radius(model);
  require_input(radius < 1.0, "VAR model is not stationary: spectral radius " +
                                  std::to_string(radius));
}

inline Matrix adjacency(const VarModel& model) {
  const Index d = model.lag_coefficients[0].rows();
  Matrix a = Matrix::Zero(d, d);
  for (const Matrix& lag : model.lag_coefficients)
    for (Index j = 0; j < d; ++j)
      for (Index i = 0; i < d; ++i)
        if (lag(j, i) != 0.0) a(i, j) = 1.0;
  return a;
}

// Simulates T observations after discarding burn_in initial steps, starting
// from a zero history. Returns the series and the ground-truth adjacency.
inline std::pair<Matrix, Matrix> sample_var(const VarModel& model, Index T,
                                            Index burn_in,
                                            std::uint64_t seed) {
  validate(model);
  require_input(T >= 2, "need at least two time samples");
  require_input(burn_in >= 0, "burn-in must be non-negative");
  const auto L = static_cast<Index>(model.lag_coefficients.size());
  const Index d = model.lag_coefficients[0].rows();
  Rng rng = make_rng(seed);
  Matrix history = Matrix::Zero(L, d);  // row l holds X(t - 1 - l)
  Matrix out(T, d);
  for (Index step = 0; step < burn_in + T; ++step) {
    Vector u = Vector::Zero(d);
    for (Index l = 0; l < L; ++l)
      u += model.lag_coefficients[l] * history.row(l).transpose();
    Vector x(d);
    for (Index j = 0; j < d; ++j) {
      x[j] = apply_transition(model.transition, u[j]) +
             model.noise_sigma[j] * standard_normal(rng);
      if (std::abs(x[j]) > 1e12)
        throw InstabilityError("simulated value exceeded 1e12 at step " +
                               std::to_string(step));
    }
    for (Index l = L - 1; l > 0; --l) history.row(l) = history.row(l - 1);
    history.row(0) = x.transpose();
    if (step >= burn_in) out.row(step - burn_in) = x.transpose();
  }
  return {std::move(out), adjacency(model)};
}

// Random VAR model: each coefficient is a standard Gaussian with probability
// edge_prob, then all lag matrices are rescaled so the companion spectral
// radius hits the requested target (A(l) scaled by c^l scales the radius
// by c). An all-zero draw is left at radius zero.
inline VarModel random_var(Index d, Index lags, double edge_prob,
                           double target_radius, double noise_sigma,
                           Transition transition, std::uint64_t seed) {
  require_input(d >= 1 && lags >= 1, "dimensions must be positive");
  require_input(edge_prob >= 0.0 && edge_prob <= 1.0,
                "edge probability must lie in [0, 1]");
  require_input(target_radius > 0.0 && target_radius < 1.0,
                "spectral radius must lie in (0, 1) for a stationary model");
  require_input(noise_sigma > 0.0, "noise sigma must be positive");
  Rng rng = make_rng(seed);
  VarModel model;
  model.transition = transition;
  model.noise_sigma = Vector::Constant(d, noise_sigma);
  model.lag_coefficients.assign(static_cast<std::size_t>(lags),
                                Matrix::Zero(d, d));
  for (auto& a : model.lag_coefficients)
    for (Index j = 0; j < d; ++j)
      for (Index i = 0; i < d; ++i)
        if (uniform01(rng) < edge_prob) a(j, i) = standard_normal(rng);
  const double r0 = spectral_radius(model);
  if (r0 > 0.0) {
    for (Index l = 0; l < lags; ++l)
      model.lag_coefficients[static_cast<std::size_t>(l)] *=
          std::pow(target_radius / r0, static_cast<double>(l + 1));
  }
  return model;
}

}  // namespace tscausal
