// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "minilearn/matrix.hpp"

namespace ml::cluster {

struct KMeansParams {
    std::size_t k = 8;
    std::size_t n_init = 10;
    std::size_t max_iter = 300;
    double tol = 1e-4;  // relative inertia change
    std::uint64_t seed = 0;
};

struct KMeansFit {
    RowMatrixXd centroids;  // k x n_features
    std::vector<int> labels;
    double inertia = 0.0;
    std::size_t n_iter = 0;
    std::vector<double> inertia_trace;  // per Lloyd iteration of the winning run
    std::vector<double> run_inertias;   // final inertia of every restart
    std::vector<std::string> warnings;
};

// Best of n_init runs by inertia; each run seeds centroids with k-means++
// and iterates Lloyd steps until assignments stop changing, the relative
// inertia improvement falls below tol, or max_iter. Each centroid is the
// weighted mean of its assigned points on return, and no cluster is empty.
// Fewer distinct points than k returns the distinct points as centroids and
// records a warning.
KMeansFit kmeans_fit(const KMeansParams& params, const Matrix& X,
                     const std::vector<double>* sample_weight = nullptr);

// Nearest centroid per row, ties to the lower centroid index.
std::vector<int> kmeans_predict(const KMeansFit& fit, const Matrix& X);

}  // namespace ml::cluster
