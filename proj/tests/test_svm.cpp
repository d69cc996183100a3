// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "minilearn/svm.hpp"
#include "oracles.hpp"

using namespace ml;
using svm::KernelSpec;
using svm::SvcFit;
using svm::SvcParams;

namespace {

// two Gaussian blobs around +-center
Matrix two_blobs(std::size_t per_class, double center, double spread, std::uint64_t seed,
                 std::vector<int>& y) {
    Rng rng(seed);
    RowMatrixXd m(static_cast<Eigen::Index>(2 * per_class), 2);
    y.clear();
    for (std::size_t i = 0; i < 2 * per_class; ++i) {
        const int label = i < per_class ? -1 : 1;
        y.push_back(label);
        m(static_cast<Eigen::Index>(i), 0) = label * center + spread * rng.gaussian();
        m(static_cast<Eigen::Index>(i), 1) = spread * rng.gaussian();
    }
    return Matrix(std::move(m));
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& k, const Matrix& X) {
    const auto n = static_cast<Eigen::Index>(X.n_samples());
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            K(i, j) = svm::kernel_value(k, X.row(static_cast<std::size_t>(i)),
                                        X.row(static_cast<std::size_t>(j)));
    return K;
}

void check_kkt(const SvcFit& fit, const Matrix& X, double tol) {
    const std::vector<double> f = svc_decision(fit, X);
    for (std::size_t i = 0; i < X.n_samples(); ++i) {
        const double margin = fit.y_signs[i] * f[i];
        if (fit.alphas[i] <= 0.0) {
            CHECK(margin >= 1.0 - tol);
        } else if (fit.alphas[i] >= fit.box[i]) {
            CHECK(margin <= 1.0 + tol);
        } else {
            CHECK(std::abs(margin - 1.0) <= tol);
        }
    }
}

}  // namespace

TEST_CASE("separable blobs: perfect training accuracy, no bound alphas") {
    std::vector<int> y;
    const Matrix X = two_blobs(15, 5.0, 0.4, 42, y);
    SvcParams params;
    params.kernel.type = KernelSpec::Type::Linear;
    params.c = 10.0;
    params.tol = 1e-6;
    const SvcFit fit = svm::svc_fit(params, X, y);

    const std::vector<double> f = svc_decision(fit, X);
    for (std::size_t i = 0; i < X.n_samples(); ++i) CHECK(y[i] * f[i] > 0.0);
    for (std::size_t i = 0; i < X.n_samples(); ++i) CHECK(fit.alphas[i] < fit.box[i]);
    check_kkt(fit, X, params.tol);
}

TEST_CASE("six-point duals match the exhaustive QP reference within 1e-4") {
    for (const std::uint64_t seed : {1, 2, 3, 4, 5, 6, 7, 8}) {
        const Matrix X = oracles::random_matrix(6, 2, 4000 + seed);
        std::vector<int> y;
        Rng rng(seed);
        int pos = 0;
        for (int i = 0; i < 6; ++i) {
            const int label = rng.uniform() < 0.5 ? -1 : 1;
            pos += label == 1;
            y.push_back(label);
        }
        if (pos == 0) y[0] = 1;
        if (pos == 6) y[0] = -1;

        SvcParams params;
        params.kernel.type = seed % 2 == 0 ? KernelSpec::Type::Rbf : KernelSpec::Type::Linear;
        params.kernel.gamma = 0.5;
        params.c = 1.5;
        params.tol = 1e-7;
        params.max_passes = 100000;
        const SvcFit fit = svm::svc_fit(params, X, y);

        KernelSpec resolved = params.kernel;
        resolved.gamma = 0.5;
        const Eigen::MatrixXd K = kernel_matrix(resolved, X);
        const double reference = oracles::svm_dual_oracle(K, y, fit.box);
        CHECK(fit.dual_objective == doctest::Approx(reference).epsilon(1e-4));
        check_kkt(fit, X, params.tol);
    }
}

TEST_CASE("doubling a sample weight equals duplicating the sample") {
    std::vector<int> y;
    const Matrix X = two_blobs(8, 1.5, 1.0, 7, y);  // overlapping blobs

    std::vector<double> w(X.n_samples(), 1.0);
    w[3] = 2.0;

    std::vector<std::vector<double>> rows;
    std::vector<int> y_dup = y;
    for (std::size_t i = 0; i < X.n_samples(); ++i)
        rows.push_back({X(i, 0), X(i, 1)});
    rows.push_back(rows[3]);
    y_dup.push_back(y[3]);
    const Matrix X_dup = Matrix::from_rows(rows);

    SvcParams params;
    params.kernel.type = KernelSpec::Type::Rbf;
    params.kernel.gamma = 0.7;
    params.c = 1.0;
    params.tol = 1e-8;
    params.max_passes = 500000;

    const SvcFit weighted = svm::svc_fit(params, X, y, &w);
    const SvcFit duplicated = svm::svc_fit(params, X_dup, y_dup);

    const Matrix probe = oracles::random_matrix(12, 2, 99);
    const std::vector<double> fw = svc_decision(weighted, probe);
    const std::vector<double> fd = svc_decision(duplicated, probe);
    for (std::size_t i = 0; i < fw.size(); ++i)
        CHECK(fw[i] == doctest::Approx(fd[i]).epsilon(1e-6).scale(1.0));
}

TEST_CASE("a free support vector sits on the margin") {
    std::vector<int> y;
    const Matrix X = two_blobs(12, 2.0, 0.8, 17, y);
    SvcParams params;
    params.kernel.type = KernelSpec::Type::Linear;
    params.c = 1.0;
    params.tol = 1e-5;
    params.max_passes = 200000;
    const SvcFit fit = svm::svc_fit(params, X, y);

    const std::vector<double> f = svc_decision(fit, X);
    bool found_free = false;
    for (std::size_t i = 0; i < X.n_samples(); ++i) {
        if (fit.alphas[i] > 1e-9 && fit.alphas[i] < fit.box[i] - 1e-9) {
            found_free = true;
            CHECK(std::abs(std::abs(f[i]) - 1.0) <= params.tol * 10.0);
        }
    }
    CHECK(found_free);
}

TEST_CASE("empty query decision is the empty vector") {
    std::vector<int> y;
    const Matrix X = two_blobs(5, 3.0, 0.5, 23, y);
    SvcParams params;
    params.kernel.type = KernelSpec::Type::Linear;
    const SvcFit fit = svm::svc_fit(params, X, y);

    const Matrix empty{RowMatrixXd(0, 2)};
    CHECK(svc_decision(fit, empty).empty());
}

TEST_CASE("linear-kernel decision equals the collapsed hyperplane within 1e-10") {
    std::vector<int> y;
    const Matrix X = two_blobs(10, 2.0, 1.2, 31, y);
    SvcParams params;
    params.kernel.type = KernelSpec::Type::Linear;
    params.c = 0.7;
    const SvcFit fit = svm::svc_fit(params, X, y);

    Eigen::RowVectorXd w = Eigen::RowVectorXd::Zero(2);
    for (Eigen::Index s = 0; s < fit.support_vectors.rows(); ++s)
        w += fit.dual_coefs(s) * fit.support_vectors.row(s);

    const Matrix probe = oracles::random_matrix(7, 2, 32);
    const std::vector<double> f = svc_decision(fit, probe);
    for (std::size_t i = 0; i < 7; ++i)
        CHECK(std::abs(f[i] - (w.dot(probe.row(i)) + fit.bias)) < 1e-10);
}

TEST_CASE("dual objective never decreases across SMO steps") {
    std::vector<int> y;
    const Matrix X = two_blobs(20, 1.0, 1.5, 53, y);  // heavily overlapping
    SvcParams params;
    params.kernel.type = KernelSpec::Type::Rbf;
    params.kernel.gamma = 0.4;
    params.c = 2.0;
    params.tol = 1e-6;
    params.max_passes = 500000;
    const SvcFit fit = svm::svc_fit(params, X, y);
    // the largest min-form step must not be a positive (worsening) one
    CHECK(fit.worst_objective_step <= 1e-9);
    CHECK(fit.n_iter > 0);
    check_kkt(fit, X, params.tol);
    // sum alpha_i y_i = 0 within 1e-8
    double balance = 0.0;
    for (std::size_t i = 0; i < X.n_samples(); ++i) balance += fit.alphas[i] * fit.y_signs[i];
    CHECK(std::abs(balance) < 1e-8);
}

TEST_CASE("single-class input raises SingleClass") {
    const Matrix X = oracles::random_matrix(6, 2, 61);
    const std::vector<int> y(6, 1);
    SvcParams params;
    CHECK_THROWS_WITH_AS(svm::svc_fit(params, X, y), doctest::Contains("single class"),
                         Error);
}

TEST_CASE("pass cap raises NotConverged with the violation value") {
    std::vector<int> y;
    const Matrix X = two_blobs(20, 0.5, 2.0, 71, y);
    SvcParams params;
    params.kernel.type = KernelSpec::Type::Rbf;
    params.max_passes = 1;
    params.tol = 1e-9;
    try {
        svm::svc_fit(params, X, y);
        FAIL("expected NotConverged");
    } catch (const NotConvergedError& e) {
        CHECK(e.n_iter() == 1);
        CHECK(e.residual() > params.tol);
    }
}

TEST_CASE("one-vs-one with two classes matches the binary classifier") {
    std::vector<int> y;
    const Matrix X = two_blobs(8, 2.0, 1.0, 83, y);
    std::vector<int> codes;
    for (int v : y) codes.push_back(v == 1 ? 1 : 0);

    SvcParams params;
    params.kernel.type = KernelSpec::Type::Linear;
    params.tol = 1e-7;
    const SvcFit binary = svm::svc_fit(params, X, y);
    const svm::MulticlassSvcFit ovo = svm::multiclass_svc_fit(params, X, codes, 2);

    const Matrix probe = oracles::random_matrix(30, 2, 84);
    const std::vector<double> f = svc_decision(binary, probe);
    const std::vector<int> mc = svm::multiclass_svc_predict(ovo, probe);
    for (std::size_t i = 0; i < 30; ++i) CHECK(mc[i] == (f[i] >= 0.0 ? 1 : 0));
}

TEST_CASE("three well-separated blobs classify perfectly one-vs-one") {
    Rng rng(91);
    RowMatrixXd m(30, 2);
    std::vector<int> codes;
    const double cx[3] = {0.0, 12.0, 6.0};
    const double cy[3] = {0.0, 0.0, 10.0};
    for (int i = 0; i < 30; ++i) {
        const int c = i / 10;
        codes.push_back(c);
        m(i, 0) = cx[c] + 0.5 * rng.gaussian();
        m(i, 1) = cy[c] + 0.5 * rng.gaussian();
    }
    const Matrix X{std::move(m)};

    SvcParams params;
    params.kernel.type = KernelSpec::Type::Linear;
    params.c = 5.0;
    const svm::MulticlassSvcFit fit = svm::multiclass_svc_fit(params, X, codes, 3);
    const std::vector<int> pred = svm::multiclass_svc_predict(fit, X);
    CHECK(pred == codes);
}

TEST_CASE("vote ties break on summed winning magnitude, then lower code") {
    // bias-only pair models make the decision values fully scripted
    const auto constant_model = [](int a, int b, double decision) {
        svm::PairwiseSvc pair;
        pair.class_a = a;
        pair.class_b = b;
        pair.fit.bias = decision;
        pair.fit.kernel.type = KernelSpec::Type::Linear;
        pair.fit.support_vectors.resize(0, 1);
        pair.fit.dual_coefs.resize(0);
        return pair;
    };

    const Matrix q = Matrix::from_rows({{0.0}});

    // winners: (0,1)->0 |1.0|, (0,2)->0 |0.5|, (0,3)->3 |0.3|,
    //          (1,2)->1 |2.0|, (1,3)->1 |0.25|, (2,3)->3 |0.1|
    // votes 0:2 (strength 1.5), 1:2 (strength 2.25), 2:0, 3:2 (strength 0.4)
    svm::MulticlassSvcFit fit;
    fit.n_classes = 4;
    fit.pairs.push_back(constant_model(0, 1, -1.0));
    fit.pairs.push_back(constant_model(0, 2, -0.5));
    fit.pairs.push_back(constant_model(0, 3, 0.3));
    fit.pairs.push_back(constant_model(1, 2, -2.0));
    fit.pairs.push_back(constant_model(1, 3, -0.25));
    fit.pairs.push_back(constant_model(2, 3, 0.1));

    const std::vector<int> winner = svm::multiclass_svc_predict(fit, q);
    CHECK(winner[0] == 1);

    // equal strengths fall back to the lower class code
    svm::MulticlassSvcFit even;
    even.n_classes = 3;
    even.pairs.push_back(constant_model(0, 1, -1.0));  // 0 beats 1, |d| = 1
    even.pairs.push_back(constant_model(1, 2, -1.0));  // 1 beats 2, |d| = 1
    even.pairs.push_back(constant_model(0, 2, 0.0));   // 2 beats 0 (>= 0), |d| = 0
    // votes 1-1-1, strengths 1.0, 1.0, 0.0 -> classes 0 and 1 tie -> lower code
    const std::vector<int> fallback = svm::multiclass_svc_predict(even, q);
    CHECK(fallback[0] == 0);
}
