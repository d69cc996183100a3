// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "minilearn/matrix.hpp"
#include "minilearn/model_selection.hpp"

namespace ml::linear {

struct ElasticNetParams {
    double alpha = 1.0;      // overall penalty strength
    double l1_ratio = 0.5;   // 1 = pure lasso
    std::size_t max_iter = 1000;
    double tol = 1e-4;       // certificate threshold, checked every sweep
    bool fit_intercept = true;
};

struct LinearFit {
    Eigen::VectorXd weights;
    double intercept = 0.0;
    // Duality gap at termination for l1-penalized fits; gradient sup-norm
    // for the smooth case (alpha*l1_ratio == 0), where the lasso dual
    // construction degenerates.
    double dual_gap = 0.0;
    std::size_t n_iter = 0;
};

// Minimizes
//   (1/(2*S)) * sum_i w_i (y_i - x_i.beta - b)^2
//     + alpha*l1_ratio*|beta|_1 + (alpha*(1-l1_ratio)/2)*|beta|_2^2
// with S the total sample weight (= n_samples when unweighted), so that
// duplicating a row and doubling its weight solve the same problem.
// `warm_start` seeds the coefficients when given.
LinearFit elastic_net_fit(const ElasticNetParams& params, const Matrix& X,
                          const std::vector<double>& y,
                          const std::vector<double>* sample_weight = nullptr,
                          const Eigen::VectorXd* warm_start = nullptr);

// The certificate elastic_net_fit reports, recomputed from (beta, residual).
double elastic_net_gap(const ElasticNetParams& params, const Matrix& X,
                       const std::vector<double>& y, const Eigen::VectorXd& beta,
                       double intercept, const std::vector<double>* sample_weight = nullptr);

struct LarsKnot {
    double lambda = 0.0;
    Eigen::VectorXd weights;
    // residual of the centered problem as maintained incrementally by the
    // solver at this knot (diagnostic; lets callers audit the refinement)
    Eigen::VectorXd residual;
    std::vector<int> joined;   // features activated at this knot
    std::vector<int> dropped;  // features that left the active set (lasso mode)
};

struct LarsPath {
    std::vector<LarsKnot> knots;  // lambdas strictly decreasing
    Eigen::RowVectorXd x_mean;
    double y_mean = 0.0;
    bool fit_intercept = true;
    std::vector<std::string> warnings;

    Eigen::VectorXd weights_at(double lambda) const;  // piecewise-linear in lambda
    double intercept_at(double lambda) const;
};

// Least-angle regression path under the same (1/(2n)) loss normalization as
// elastic_net_fit, so a knot at lambda solves the lasso at alpha = lambda.
// The residual vector is refined incrementally by the step taken; it is
// never recomputed as y - X*beta inside the loop. max_knots = 0 means no
// cap. Exactly collinear active sets drop the higher-index feature and
// record a warning.
LarsPath lars_path(const Matrix& X, const std::vector<double>& y, std::size_t max_knots = 0,
                   bool lasso_mode = true, bool fit_intercept = true);

struct LassoCvResult {
    double best_lambda = 0.0;
    LinearFit model;  // refit on all data at best_lambda
    std::vector<double> lambdas;
    std::vector<double> mean_scores;  // held-out R^2 per lambda, fold average
};

// Solves the whole lambda grid per fold, warm-starting each solve from the
// previous lambda's solution. An empty grid selects an automatic geometric
// grid of 100 values from lambda_max down to lambda_max/1000. Ties on the
// mean score go to the larger lambda.
LassoCvResult lasso_cv(std::vector<double> grid, const model_selection::SplitPlan& folds,
                       const Matrix& X, const std::vector<double>& y, double tol = 1e-4,
                       std::size_t max_iter = 1000);

}  // namespace ml::linear
