// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "minilearn/matrix.hpp"

namespace ml::svm {

struct KernelSpec {
    enum class Type { Linear, Rbf, Poly };
    Type type = Type::Rbf;
    double gamma = 0.0;  // 0 = automatic 1/n_features
    long long degree = 3;
    double coef0 = 0.0;
};

KernelSpec kernel_from_string(const std::string& name, double gamma, long long degree,
                              double coef0);

struct SvcParams {
    double c = 1.0;
    KernelSpec kernel;
    double tol = 1e-3;           // KKT violation threshold
    std::size_t max_passes = 0;  // pair updates; 0 = automatic 10*n_samples
    std::size_t cache_rows = 200;
};

// Fitted binary classifier in dual form. support vectors carry alpha_i*y_i;
// the full alpha/y arrays are kept for certificate checks.
struct SvcFit {
    std::vector<std::size_t> support_indices;
    Eigen::VectorXd dual_coefs;  // one per support vector
    double bias = 0.0;
    KernelSpec kernel;           // gamma resolved
    RowMatrixXd support_vectors;

    std::vector<double> alphas;   // per training sample
    std::vector<int> y_signs;     // per training sample, +1/-1
    std::vector<double> box;      // per-sample upper bound c*w_i
    std::size_t n_iter = 0;
    double final_violation = 0.0;
    double dual_objective = 0.0;        // max-form: sum(alpha) - 1/2 a'Qa
    double worst_objective_step = 0.0;  // most positive min-form step seen (<= 0 ideally)
};

// Solves the soft-margin dual with per-sample box bounds C_i = c*w_i using
// maximal-violating-pair SMO. y entries must be +1/-1 with both classes
// present.
SvcFit svc_fit(const SvcParams& params, const Matrix& X, const std::vector<int>& y,
               const std::vector<double>* sample_weight = nullptr);

// Signed distances sum_j coef_j K(sv_j, x) + bias.
std::vector<double> svc_decision(const SvcFit& fit, const Matrix& X);

double kernel_value(const KernelSpec& k, const Eigen::RowVectorXd& a,
                    const Eigen::RowVectorXd& b);

struct PairwiseSvc {
    int class_a = 0;  // decision < 0 side
    int class_b = 0;  // decision >= 0 side
    SvcFit fit;
};

// One-vs-one ensemble over class codes 0..n_classes-1. Prediction is by
// vote; ties break on summed winning decision magnitude, then lowest code.
struct MulticlassSvcFit {
    int n_classes = 0;
    std::vector<PairwiseSvc> pairs;
};

MulticlassSvcFit multiclass_svc_fit(const SvcParams& params, const Matrix& X,
                                    const std::vector<int>& y_codes, int n_classes,
                                    const std::vector<double>* sample_weight = nullptr);

std::vector<int> multiclass_svc_predict(const MulticlassSvcFit& fit, const Matrix& X);

}  // namespace ml::svm
