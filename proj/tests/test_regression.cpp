#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_util.hpp"
#include "tscausal/regression.hpp"

using namespace tscausal;
using test_util::random_matrix;
using test_util::random_vector;

namespace {

// Independent route for full-rank least squares: explicit normal equations.
Matrix normal_equations_fit(const Matrix& X, const Matrix& Y) {
  return ((X.transpose() * X).inverse() * X.transpose() * Y).transpose();
}

// Literal leave-one-out: refit without row k, predict it, accumulate.
double brute_force_loo(const Matrix& X, const Vector& y) {
  const Index n = X.rows();
  double rss = 0.0;
  for (Index k = 0; k < n; ++k) {
    Matrix Xk(n - 1, X.cols());
    Vector yk(n - 1);
    Index w = 0;
    for (Index r = 0; r < n; ++r) {
      if (r == k) continue;
      Xk.row(w) = X.row(r);
      yk[w] = y[r];
      ++w;
    }
    const Vector b =
        (Xk.transpose() * Xk).inverse() * Xk.transpose() * yk;
    const double e = y[k] - X.row(k).dot(b);
    rss += e * e;
  }
  return rss;
}

}  // namespace

TEST_CASE("ols_fit identity on orthonormal columns") {
  Matrix X(3, 2);
  X << 1, 0, 0, 1, 0, 0;
  const Matrix C = ols_fit(X, X);
  REQUIRE(C.rows() == 2);
  REQUIRE(C.cols() == 2);
  REQUIRE((C - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ols_fit zero design gives minimum-norm zero coefficients") {
  const Matrix X = Matrix::Zero(4, 2);
  Rng rng = make_rng(1);
  const Matrix Y = random_matrix(rng, 4, 1);
  const Matrix C = ols_fit(X, Y);
  REQUIRE(C.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ols_fit recovers exact coefficients and matches normal equations") {
  Rng rng = make_rng(7);
  const Matrix X = random_matrix(rng, 10, 3);
  Matrix C(2, 3);
  C << 0.5, -1.25, 2.0, 0.0, 3.5, -0.75;
  const Matrix Y = X * C.transpose();
  const Matrix fitted = ols_fit(X, Y);
  REQUIRE((fitted - C).cwiseAbs().maxCoeff() < 1e-10);
  REQUIRE((fitted - normal_equations_fit(X, Y)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ols_fit residual is a local minimum") {
  Rng rng = make_rng(11);
  for (int inst = 0; inst < 3; ++inst) {
    const Matrix X = random_matrix(rng, 12, 3);
    const Matrix Y = random_matrix(rng, 12, 2);
    const Matrix C = ols_fit(X, Y);
    const double base = (Y - X * C.transpose()).squaredNorm();
    for (Index r = 0; r < C.rows(); ++r)
      for (Index c = 0; c < C.cols(); ++c)
        for (double delta : {1e-3, -1e-3}) {
          Matrix P = C;
          P(r, c) += delta;
          REQUIRE((Y - X * P.transpose()).squaredNorm() >= base);
        }
  }
}

TEST_CASE("ols_fit is deterministic and validates input") {
  Rng rng = make_rng(3);
  const Matrix X = random_matrix(rng, 8, 2);
  const Matrix Y = random_matrix(rng, 8, 2);
  const Matrix a = ols_fit(X, Y);
  const Matrix b = ols_fit(X, Y);
  REQUIRE(a == b);

  REQUIRE_THROWS_AS(ols_fit(X, random_matrix(rng, 7, 2)), ContractError);
  Matrix bad = X;
  bad(0, 0) = std::nan("");
  REQUIRE_THROWS_AS(ols_fit(bad, Y), InputError);
}

TEST_CASE("ridge_fit equals OLS at zero penalty") {
  Rng rng = make_rng(21);
  const Matrix X = random_matrix(rng, 15, 4);
  const Matrix Y = random_matrix(rng, 15, 2);
  REQUIRE((ridge_fit(X, Y, 0.0) - ols_fit(X, Y)).cwiseAbs().maxCoeff() <
          1e-10);
}

TEST_CASE("ridge_fit shrinks to zero under a huge penalty") {
  Rng rng = make_rng(22);
  const Matrix X = random_matrix(rng, 20, 3);
  const Matrix Y = random_matrix(rng, 20, 3);
  REQUIRE(ridge_fit(X, Y, 1e12).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("ridge_fit matches the scalar normal equation") {
  Rng rng = make_rng(23);
  const Matrix x = random_matrix(rng, 25, 1);
  const Matrix y = random_matrix(rng, 25, 1);
  for (double kappa : {0.1, 1.0, 42.0}) {
    const double expected =
        (x.col(0).dot(y.col(0))) / (x.col(0).squaredNorm() + kappa);
    REQUIRE(ridge_fit(x, y, kappa)(0, 0) == Catch::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("ridge_fit norm decreases with the penalty") {
  Rng rng = make_rng(24);
  const Matrix X = random_matrix(rng, 30, 5);
  const Matrix Y = random_matrix(rng, 30, 4);
  double prev = ridge_fit(X, Y, 0.0).norm();
  for (double kappa : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double cur = ridge_fit(X, Y, kappa).norm();
    REQUIRE(cur <= prev + 1e-12);
    prev = cur;
  }
  REQUIRE_THROWS_AS(ridge_fit(X, Y, -1.0), InputError);
}

TEST_CASE("lasso_fit equals OLS at zero penalty") {
  Rng rng = make_rng(31);
  const Matrix X = random_matrix(rng, 40, 3);
  const Vector y = random_vector(rng, 40);
  const Vector b = lasso_fit(X, y, 0.0);
  const Matrix ols = ols_fit(X, y);
  REQUIRE((b.transpose() - ols).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("lasso_fit is exactly zero at and above the KKT threshold") {
  Rng rng = make_rng(32);
  const Matrix X = random_matrix(rng, 50, 4);
  const Vector y = random_vector(rng, 50);
  const double n = static_cast<double>(X.rows());
  const double lambda_max = (X.transpose() * y).cwiseAbs().maxCoeff() / n;
  for (double lambda : {lambda_max, 2.0 * lambda_max}) {
    const Vector b = lasso_fit(X, y, lambda);
    REQUIRE(b.cwiseAbs().maxCoeff() == 0.0);
    // Subgradient condition at zero: every correlation within lambda.
    REQUIRE(((X.transpose() * y) / n).cwiseAbs().maxCoeff() <= lambda + 1e-12);
  }
}

TEST_CASE("lasso_fit single predictor equals soft thresholding") {
  Rng rng = make_rng(33);
  const Matrix x = random_matrix(rng, 30, 1);
  const Vector y = random_vector(rng, 30);
  const double n = static_cast<double>(x.rows());
  const double rho = x.col(0).dot(y) / n;
  const double z = x.col(0).squaredNorm() / n;
  for (double lambda : {0.0, 0.05, 0.2, 1.0}) {
    const double soft =
        rho > lambda ? rho - lambda : (rho < -lambda ? rho + lambda : 0.0);
    REQUIRE(lasso_fit(x, y, lambda)[0] ==
            Catch::Approx(soft / z).margin(1e-10));
  }
}

TEST_CASE("lasso_fit satisfies the KKT conditions") {
  Rng rng = make_rng(34);
  for (int inst = 0; inst < 5; ++inst) {
    const Matrix X = random_matrix(rng, 60, 6);
    const Vector y = random_vector(rng, 60);
    const double lambda = 0.05 + 0.05 * inst;
    const Vector b = lasso_fit(X, y, lambda);
    const Vector grad =
        X.transpose() * (y - X * b) / static_cast<double>(X.rows());
    for (Index i = 0; i < b.size(); ++i) {
      if (b[i] == 0.0) {
        REQUIRE(std::abs(grad[i]) <= lambda + 1e-4);
      } else {
        REQUIRE(grad[i] ==
                Catch::Approx(lambda * (b[i] > 0 ? 1.0 : -1.0)).margin(1e-4));
      }
    }
  }
}

TEST_CASE("lasso_path warm starts match cold starts") {
  Rng rng = make_rng(35);
  const Matrix X = random_matrix(rng, 40, 5);
  const Vector y = random_vector(rng, 40);
  const std::vector<double> grid = {0.5, 0.2, 0.1, 0.02};
  const auto path = lasso_path(X, y, grid);
  REQUIRE(path.size() == grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vector cold = lasso_fit(X, y, grid[k]);
    REQUIRE((path[k] - cold).cwiseAbs().maxCoeff() < 1e-5);
  }
  REQUIRE_THROWS_AS(lasso_path(X, y, {0.1, 0.5}), InputError);
}

TEST_CASE("lasso_fit reports non-convergence with the sweep count") {
  Rng rng = make_rng(36);
  const Matrix X = random_matrix(rng, 50, 8);
  const Vector y = random_vector(rng, 50);
  LassoOptions opts;
  opts.tol = 1e-14;
  opts.max_sweeps = 2;
  try {
    lasso_fit(X, y, 0.0, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    REQUIRE(e.sweeps == 2);
  }
}

TEST_CASE("loo_rss vanishes for a noiseless fit") {
  Rng rng = make_rng(41);
  const Matrix X = random_matrix(rng, 12, 3);
  Vector b(3);
  b << 1.0, -2.0, 0.5;
  const Vector y = X * b;
  REQUIRE(loo_rss(X, y) < 1e-16);
}

TEST_CASE("loo_rss equals brute-force refits") {
  Rng rng = make_rng(42);

  SECTION("n=5, p=1 random instance") {
    const Matrix X = random_matrix(rng, 5, 1);
    const Vector y = random_vector(rng, 5);
    REQUIRE(loo_rss(X, y) ==
            Catch::Approx(brute_force_loo(X, y)).epsilon(1e-10));
  }

  SECTION("constant predictor with noise responses") {
    const Matrix X = Matrix::Ones(8, 1);
    const Vector y = random_vector(rng, 8);
    REQUIRE(loo_rss(X, y) ==
            Catch::Approx(brute_force_loo(X, y)).epsilon(1e-10));
  }

  SECTION("random instances up to n = 50") {
    for (Index n : {6L, 12L, 30L, 50L}) {
      for (Index p : {1L, 2L, 5L}) {
        const Matrix X = random_matrix(rng, n, p);
        const Vector y = random_vector(rng, n);
        REQUIRE(loo_rss(X, y) ==
                Catch::Approx(brute_force_loo(X, y)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("loo_rss rejects degenerate problems") {
  Matrix X(3, 2);
  X << 1, 0, 0, 1, 0, 1;  // first row determines the first coordinate alone
  Vector y(3);
  y << 1.0, 2.0, 3.0;
  REQUIRE_THROWS_AS(loo_rss(X, y), DegenerateError);

  Rng rng = make_rng(43);
  Matrix dup = random_matrix(rng, 6, 2);
  dup.col(1) = dup.col(0);
  REQUIRE_THROWS_AS(loo_rss(dup, random_vector(rng, 6)), DegenerateError);

  const Matrix square = Matrix::Identity(2, 2);
  REQUIRE_THROWS_AS(loo_rss(square, Vector::Ones(2)), ContractError);
}

TEST_CASE("residual_stats near-zero partial correlations for independent data") {
  Rng rng = make_rng(51);
  const Matrix X = random_matrix(rng, 2000, 3);
  const ResidualStats stats = residual_stats(X);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      if (i != j) REQUIRE(std::abs(stats.partial_correlations(i, j)) < 0.1);
  REQUIRE((stats.residual_variances.array() > 0.0).all());
}

TEST_CASE("residual_stats rejects perfectly collinear columns") {
  Rng rng = make_rng(52);
  Matrix X = random_matrix(rng, 100, 3);
  X.col(1) = X.col(0);
  REQUIRE_THROWS_AS(residual_stats(X), DegenerateError);
}

TEST_CASE("residual_stats with two columns reduces to plain correlation") {
  Rng rng = make_rng(53);
  const Matrix X = random_matrix(rng, 200, 2);
  const ResidualStats stats = residual_stats(X);
  const double corr = X.col(0).dot(X.col(1)) /
                      (X.col(0).norm() * X.col(1).norm());
  REQUIRE(stats.partial_correlations(0, 1) ==
          Catch::Approx(corr).epsilon(1e-12));
}

TEST_CASE("residual_stats matches explicit per-column regressions") {
  Rng rng = make_rng(54);
  const Index n = 40, d = 5;
  Matrix X = random_matrix(rng, n, d);
  // Add some dependence so the partial correlations are non-trivial.
  X.col(2) += 0.5 * X.col(0);
  X.col(4) -= 0.8 * X.col(1);
  const ResidualStats stats = residual_stats(X);

  const auto drop = [&](std::vector<Index> cols) {
    Matrix out(n, static_cast<Index>(d - cols.size()));
    Index w = 0;
    for (Index c = 0; c < d; ++c) {
      bool skip = false;
      for (Index s : cols) skip = skip || (s == c);
      if (!skip) out.col(w++) = X.col(c);
    }
    return out;
  };
  const auto residual_of = [&](Index target, std::vector<Index> given_drop) {
    const Matrix Z = drop(given_drop);
    const Vector b =
        (Z.transpose() * Z).inverse() * Z.transpose() * X.col(target);
    return Vector(X.col(target) - Z * b);
  };

  for (Index j = 0; j < d; ++j) {
    const Vector r = residual_of(j, {j});
    const double expected =
        r.squaredNorm() / static_cast<double>(n - d + 1);
    REQUIRE(stats.residual_variances[j] ==
            Catch::Approx(expected).epsilon(1e-8));
  }
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      const Vector ri = residual_of(i, {i, j});
      const Vector rj = residual_of(j, {i, j});
      const double expected = ri.dot(rj) / (ri.norm() * rj.norm());
      REQUIRE(stats.partial_correlations(i, j) ==
              Catch::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("residual_stats needs more rows than columns") {
  Rng rng = make_rng(55);
  REQUIRE_THROWS_AS(residual_stats(random_matrix(rng, 3, 3)), InputError);
}
