// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minilearn/rng.hpp"

namespace ml::decomposition {

namespace {

Eigen::MatrixXd thin_orthonormal(const Eigen::MatrixXd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

// right singular vectors as rows, by singular value descending
Eigen::MatrixXd top_right_vectors(const Eigen::MatrixXd& m, Eigen::Index k) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
    return svd.matrixV().leftCols(k).transpose();
}

}  // namespace

PcaFit pca_fit(const PcaParams& params, const Matrix& X) {
    const auto n = static_cast<Eigen::Index>(X.n_samples());
    const auto p = static_cast<Eigen::Index>(X.n_features());
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "fit requires at least one sample");

    const Eigen::Index min_np = std::min(n, p);
    const Eigen::Index k = params.n_components == 0
                               ? min_np
                               : static_cast<Eigen::Index>(params.n_components);
    if (k < 1 || k > min_np)
        throw Error(ErrorCode::InvalidArgument,
                    "n_components must lie in 1..min(n_samples, n_features)");

    PcaFit fit;
    fit.mean = X.eigen().colwise().mean();
    RowMatrixXd centered = X.eigen();
    centered.rowwise() -= fit.mean;

    bool randomized = params.solver == PcaParams::Solver::Randomized;
    if (params.solver == PcaParams::Solver::Auto)
        randomized = !(min_np <= 100 || k > min_np / 5);

    Eigen::MatrixXd components;
    if (!randomized) {
        components = top_right_vectors(centered, k);
    } else {
        const Eigen::Index width =
            std::min<Eigen::Index>(k + static_cast<Eigen::Index>(params.n_oversamples), min_np);
        Rng rng(params.seed);
        Eigen::MatrixXd test(p, width);
        for (Eigen::Index j = 0; j < width; ++j)
            for (Eigen::Index i = 0; i < p; ++i) test(i, j) = rng.gaussian();

        Eigen::MatrixXd range = thin_orthonormal(centered * test);
        for (std::size_t it = 0; it < params.n_power_iters; ++it) {
            const Eigen::MatrixXd z = thin_orthonormal(centered.transpose() * range);
            range = thin_orthonormal(centered * z);
        }
        const Eigen::MatrixXd small = range.transpose() * centered;  // width x p
        components = top_right_vectors(small, k);
    }

    // deterministic orientation: largest-magnitude entry positive
    for (Eigen::Index c = 0; c < components.rows(); ++c) {
        Eigen::Index arg = 0;
        components.row(c).cwiseAbs().maxCoeff(&arg);
        if (components(c, arg) < 0.0) components.row(c) = -components.row(c);
    }

    // explained variance = variance of the training projection per component
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    Eigen::VectorXd variance(k);
    for (Eigen::Index c = 0; c < k; ++c)
        variance(c) = (centered * components.row(c).transpose()).squaredNorm() / denom;

    // keep components sorted by captured variance (stable for ties)
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return variance(a) > variance(b); });

    fit.components.resize(k, p);
    fit.explained_variance.resize(k);
    for (Eigen::Index c = 0; c < k; ++c) {
        fit.components.row(c) = components.row(order[static_cast<std::size_t>(c)]);
        fit.explained_variance(c) = variance(order[static_cast<std::size_t>(c)]);
    }
    return fit;
}

Matrix pca_transform(const PcaFit& fit, const Matrix& X) {
    if (static_cast<Eigen::Index>(X.n_features()) != fit.components.cols())
        throw ShapeMismatchError("feature count does not match the fitted model");
    RowMatrixXd centered = X.eigen();
    centered.rowwise() -= fit.mean;
    return Matrix(RowMatrixXd(centered * fit.components.transpose()));
}

}  // namespace ml::decomposition
