// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "minilearn/matrix.hpp"

namespace ml::decomposition {

struct PcaParams {
    std::size_t n_components = 0;  // 0 = min(n_samples, n_features)
    std::size_t n_oversamples = 10;
    std::size_t n_power_iters = 4;
    std::uint64_t seed = 0;
    enum class Solver { Auto, Exact, Randomized };
    Solver solver = Solver::Auto;
};

// Principal axes of the centered data. components has orthonormal rows;
// explained_variance is the variance of the training projection onto each
// row, sorted non-increasing. The sign convention makes each component's
// largest-magnitude entry positive.
struct PcaFit {
    RowMatrixXd components;  // k x n_features
    Eigen::VectorXd explained_variance;
    Eigen::RowVectorXd mean;
};

// Exact path: thin SVD of the centered data. Randomized path: Gaussian test
// matrix of width k + n_oversamples, power iterations re-orthonormalized at
// every step, then an exact SVD of the projected small matrix. Auto picks
// exact when min(n, p) <= 100 or k > min(n, p)/5.
PcaFit pca_fit(const PcaParams& params, const Matrix& X);

// (X - mean) * components^T
Matrix pca_transform(const PcaFit& fit, const Matrix& X);

}  // namespace ml::decomposition
