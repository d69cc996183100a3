// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "minilearn/decomposition.hpp"
#include "oracles.hpp"

using namespace ml;
using decomposition::PcaFit;
using decomposition::PcaParams;

namespace {

// data with singular values decaying by the given ratio
Matrix gapped_spectrum(std::size_t n, std::size_t p, std::size_t rank, double ratio,
                       std::uint64_t seed) {
    const Eigen::MatrixXd left = oracles::random_matrix(n, rank, seed).eigen();
    const Eigen::MatrixXd right = oracles::random_matrix(p, rank, seed + 1).eigen();
    const Eigen::MatrixXd U = Eigen::HouseholderQR<Eigen::MatrixXd>(left).householderQ() *
                              Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                        static_cast<Eigen::Index>(rank));
    const Eigen::MatrixXd V = Eigen::HouseholderQR<Eigen::MatrixXd>(right).householderQ() *
                              Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p),
                                                        static_cast<Eigen::Index>(rank));
    Eigen::VectorXd sv(static_cast<Eigen::Index>(rank));
    double s = 20.0;
    for (std::size_t i = 0; i < rank; ++i) {
        sv(static_cast<Eigen::Index>(i)) = s;
        s /= ratio;
    }
    return Matrix{RowMatrixXd(U * sv.asDiagonal() * V.transpose())};
}

void check_orthonormal(const RowMatrixXd& components) {
    const Eigen::MatrixXd gram = components * components.transpose();
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
    CHECK((gram - eye).cwiseAbs().maxCoeff() < 1e-8);
}

}  // namespace

TEST_CASE("a single active column is recovered as the leading axis") {
    RowMatrixXd m = RowMatrixXd::Zero(10, 5);
    Rng rng(6001);
    for (int i = 0; i < 10; ++i) m(i, 2) = rng.gaussian();
    const Matrix X{std::move(m)};

    PcaParams params;
    params.n_components = 3;
    const PcaFit fit = decomposition::pca_fit(params, X);
    CHECK(std::abs(fit.components(0, 2)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.components(0, 2) > 0.0);  // sign convention
    CHECK(fit.explained_variance(1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-18));
    CHECK(fit.explained_variance(2) == doctest::Approx(0.0).scale(1.0).epsilon(1e-18));
    check_orthonormal(fit.components);
}

TEST_CASE("top-5 captured variance within 1% of the dense reference") {
    const Matrix X = oracles::random_matrix(100, 30, 6101);
    const Eigen::VectorXd expected = oracles::pca_variances_reference(X, 5);

    for (const auto solver : {PcaParams::Solver::Exact, PcaParams::Solver::Randomized}) {
        PcaParams params;
        params.n_components = 5;
        params.solver = solver;
        params.seed = 11;
        const PcaFit fit = decomposition::pca_fit(params, X);
        CHECK(fit.explained_variance.sum() ==
              doctest::Approx(expected.sum()).epsilon(0.01));
        check_orthonormal(fit.components);
    }
}

TEST_CASE("with a gapped spectrum the randomized solver matches exact to 0.1%") {
    const Matrix X = gapped_spectrum(80, 20, 6, 2.0, 6201);

    PcaParams exact;
    exact.n_components = 4;
    exact.solver = PcaParams::Solver::Exact;
    const PcaFit fe = decomposition::pca_fit(exact, X);

    PcaParams randomized = exact;
    randomized.solver = PcaParams::Solver::Randomized;
    randomized.n_power_iters = 8;
    randomized.seed = 3;
    const PcaFit fr = decomposition::pca_fit(randomized, X);

    for (int c = 0; c < 4; ++c)
        CHECK(fr.explained_variance(c) ==
              doctest::Approx(fe.explained_variance(c)).epsilon(0.001));
}

TEST_CASE("transforming the training mean gives the zero vector") {
    const Matrix X = oracles::random_matrix(30, 6, 6301);
    PcaParams params;
    params.n_components = 4;
    const PcaFit fit = decomposition::pca_fit(params, X);

    Matrix mean_row{RowMatrixXd(fit.mean)};
    const Matrix z = decomposition::pca_transform(fit, mean_row);
    CHECK(z.eigen().cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("full-rank projection reconstructs the data to 1e-8") {
    const Matrix X = gapped_spectrum(40, 8, 8, 1.3, 6401);
    PcaParams params;
    params.n_components = 8;
    const PcaFit fit = decomposition::pca_fit(params, X);
    const Matrix Z = decomposition::pca_transform(fit, X);
    const RowMatrixXd reconstructed = (Z.eigen() * fit.components).rowwise() + fit.mean;
    CHECK((reconstructed - X.eigen()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("explained variance equals the training projection variance") {
    const Matrix X = oracles::random_matrix(120, 40, 6501);
    PcaParams params;
    params.n_components = 6;
    params.solver = PcaParams::Solver::Randomized;
    params.seed = 99;
    const PcaFit fit = decomposition::pca_fit(params, X);
    const Matrix Z = decomposition::pca_transform(fit, X);

    for (int c = 0; c < 6; ++c) {
        const auto col = Z.eigen().col(c);
        const double mean = col.mean();
        const double var = (col.array() - mean).square().sum() / (120 - 1);
        CHECK(var == doctest::Approx(fit.explained_variance(c)).epsilon(1e-6));
        if (c > 0) CHECK(fit.explained_variance(c) <= fit.explained_variance(c - 1));
    }
}

TEST_CASE("randomized defaults capture at least 95% of the exact top-k variance") {
    for (const std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const Matrix X = oracles::random_matrix(200, 50, 6600 + seed);
        const Eigen::VectorXd expected = oracles::pca_variances_reference(X, 5);

        PcaParams params;
        params.n_components = 5;
        params.solver = PcaParams::Solver::Randomized;
        params.seed = seed;
        const PcaFit fit = decomposition::pca_fit(params, X);
        CHECK(fit.explained_variance.sum() >= 0.95 * expected.sum());
    }
}

TEST_CASE("component counts outside 1..min(n,p) are rejected") {
    const Matrix X = oracles::random_matrix(10, 4, 6701);
    PcaParams params;
    params.n_components = 5;
    CHECK_THROWS_AS(decomposition::pca_fit(params, X), Error);
}
