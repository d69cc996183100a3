// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn/cluster.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <set>

#include "minilearn/rng.hpp"

namespace ml::cluster {

namespace {

// squared distances of every sample to every centroid, as one blocked
// product instead of per-point passes
Eigen::MatrixXd all_pairs_sq(const RowMatrixXd& X, const RowMatrixXd& centroids) {
    const Eigen::VectorXd x_sq = X.rowwise().squaredNorm();
    const Eigen::VectorXd c_sq = centroids.rowwise().squaredNorm();
    Eigen::MatrixXd d = -2.0 * (X * centroids.transpose());
    d.colwise() += x_sq;
    d.rowwise() += c_sq.transpose();
    return d.cwiseMax(0.0);
}

void assign_nearest(const Eigen::MatrixXd& dist_sq, std::vector<int>& labels) {
    for (Eigen::Index i = 0; i < dist_sq.rows(); ++i) {
        int best = 0;
        for (Eigen::Index c = 1; c < dist_sq.cols(); ++c)
            if (dist_sq(i, c) < dist_sq(i, best)) best = static_cast<int>(c);
        labels[static_cast<std::size_t>(i)] = best;
    }
}

double weighted_inertia(const Eigen::MatrixXd& dist_sq, const std::vector<int>& labels,
                        const Eigen::VectorXd& w) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < dist_sq.rows(); ++i)
        total += w(i) * dist_sq(i, labels[static_cast<std::size_t>(i)]);
    return total;
}

RowMatrixXd plus_plus_seed(const RowMatrixXd& X, const Eigen::VectorXd& w, std::size_t k,
                           Rng& rng) {
    const Eigen::Index n = X.rows();
    RowMatrixXd centroids(static_cast<Eigen::Index>(k), X.cols());

    // first centroid: weighted draw
    const double w_total = w.sum();
    double target = rng.uniform() * w_total;
    Eigen::Index first = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        target -= w(i);
        if (target <= 0.0) {
            first = i;
            break;
        }
    }
    centroids.row(0) = X.row(first);

    Eigen::VectorXd best_sq = (X.rowwise() - centroids.row(0)).rowwise().squaredNorm();
    for (std::size_t c = 1; c < k; ++c) {
        const Eigen::VectorXd prob = w.cwiseProduct(best_sq);
        const double total = prob.sum();
        Eigen::Index chosen = 0;
        if (total > 0.0) {
            double t = rng.uniform() * total;
            for (Eigen::Index i = 0; i < n; ++i) {
                t -= prob(i);
                if (t <= 0.0) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = static_cast<Eigen::Index>(rng.uniform_int(static_cast<std::uint64_t>(n)));
        }
        centroids.row(static_cast<Eigen::Index>(c)) = X.row(chosen);
        best_sq = best_sq.cwiseMin(
            (X.rowwise() - centroids.row(static_cast<Eigen::Index>(c))).rowwise().squaredNorm());
    }
    return centroids;
}

struct LloydRun {
    RowMatrixXd centroids;
    std::vector<int> labels;
    double inertia = 0.0;
    std::size_t n_iter = 0;
    std::vector<double> trace;
};

// means of the assigned points; empty clusters are re-seeded on the point
// farthest from its current centroid (next-farthest for further empties)
void update_means(const RowMatrixXd& X, const Eigen::VectorXd& w, std::vector<int>& labels,
                  const Eigen::MatrixXd& dist_sq, RowMatrixXd& centroids) {
    const auto k = centroids.rows();
    Eigen::VectorXd mass = Eigen::VectorXd::Zero(k);
    RowMatrixXd sums = RowMatrixXd::Zero(k, X.cols());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const int c = labels[static_cast<std::size_t>(i)];
        mass(c) += w(i);
        sums.row(c) += w(i) * X.row(i);
    }

    std::vector<Eigen::Index> empties;
    for (Eigen::Index c = 0; c < k; ++c)
        if (mass(c) <= 0.0) empties.push_back(c);

    if (!empties.empty()) {
        // order points by how badly their current centroid fits them
        std::vector<Eigen::Index> order(static_cast<std::size_t>(X.rows()));
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
        std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            const double da = dist_sq(a, labels[static_cast<std::size_t>(a)]);
            const double db = dist_sq(b, labels[static_cast<std::size_t>(b)]);
            return da != db ? da > db : a < b;
        });
        std::size_t next = 0;
        for (Eigen::Index c : empties) {
            while (next < order.size()) {
                const Eigen::Index i = order[next++];
                const int old = labels[static_cast<std::size_t>(i)];
                if (mass(old) <= w(i) && mass(old) != 0.0) continue;  // would empty its donor
                if (w(i) <= 0.0) continue;
                mass(old) -= w(i);
                sums.row(old) -= w(i) * X.row(i);
                labels[static_cast<std::size_t>(i)] = static_cast<int>(c);
                mass(c) = w(i);
                sums.row(c) = w(i) * X.row(i);
                break;
            }
        }
    }

    for (Eigen::Index c = 0; c < k; ++c) {
        if (mass(c) > 0.0) centroids.row(c) = sums.row(c) / mass(c);
        // a cluster that stayed empty keeps its previous centroid
    }
}

LloydRun lloyd(const RowMatrixXd& X, const Eigen::VectorXd& w, std::size_t k, std::size_t max_iter,
               double tol, Rng& rng) {
    LloydRun run;
    run.centroids = plus_plus_seed(X, w, k, rng);
    run.labels.assign(static_cast<std::size_t>(X.rows()), 0);

    std::vector<int> prev_labels;
    double prev_inertia = std::numeric_limits<double>::infinity();
    for (std::size_t it = 1; it <= max_iter; ++it) {
        run.n_iter = it;
        Eigen::MatrixXd dist_sq = all_pairs_sq(X, run.centroids);
        assign_nearest(dist_sq, run.labels);
        update_means(X, w, run.labels, dist_sq, run.centroids);

        // inertia of the current assignment against the refreshed means
        dist_sq = all_pairs_sq(X, run.centroids);
        run.inertia = weighted_inertia(dist_sq, run.labels, w);
        run.trace.push_back(run.inertia);
        assert(run.trace.size() < 2 ||
               run.inertia <= run.trace[run.trace.size() - 2] * (1.0 + 1e-10) + 1e-12);

        if (run.labels == prev_labels) break;
        const bool small_change =
            std::isfinite(prev_inertia) &&
            std::abs(prev_inertia - run.inertia) <= tol * std::max(prev_inertia, 1e-300);
        if (small_change) break;
        prev_labels = run.labels;
        prev_inertia = run.inertia;
    }
    return run;
}

}  // namespace

KMeansFit kmeans_fit(const KMeansParams& params, const Matrix& X,
                     const std::vector<double>* sample_weight) {
    const std::size_t n = X.n_samples();
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "fit requires at least one sample");
    if (params.k < 1 || params.k > n)
        throw Error(ErrorCode::KTooLarge, "k must lie in 1..n_samples");
    if (params.n_init < 1) throw Error(ErrorCode::InvalidArgument, "n_init must be >= 1");

    Eigen::VectorXd w = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
    if (sample_weight) {
        if (sample_weight->size() != n)
            throw ShapeMismatchError("sample_weight length does not match sample count");
        for (double v : *sample_weight)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw Error(ErrorCode::InvalidArgument, "sample weights must be finite and >= 0");
        w = Eigen::Map<const Eigen::VectorXd>(sample_weight->data(),
                                              static_cast<Eigen::Index>(n));
        if (w.sum() <= 0.0)
            throw Error(ErrorCode::InvalidArgument, "sample weights sum to zero");
    }

    KMeansFit fit;

    // fewer distinct rows than k: the distinct rows are the best possible
    // centroids (inertia zero); return them with a warning
    {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            for (std::size_t d = 0; d < X.n_features(); ++d) {
                if (X(a, d) != X(b, d)) return X(a, d) < X(b, d);
            }
            return a < b;
        });
        std::vector<std::size_t> distinct;
        for (std::size_t i = 0; i < n; ++i) {
            if (!distinct.empty() && X.row(order[i]) == X.row(distinct.back())) continue;
            distinct.push_back(order[i]);
        }
        if (distinct.size() < params.k) {
            std::sort(distinct.begin(), distinct.end());
            fit.centroids = X.select_rows(distinct).eigen();
            fit.labels = kmeans_predict(fit, X);
            fit.inertia = 0.0;
            fit.n_iter = 0;
            fit.warnings.push_back("requested " + std::to_string(params.k) +
                                   " clusters but data has only " +
                                   std::to_string(distinct.size()) + " distinct points");
            return fit;
        }
    }

    Rng rng(params.seed);
    bool have_best = false;
    LloydRun best;
    for (std::size_t run_i = 0; run_i < params.n_init; ++run_i) {
        LloydRun run = lloyd(X.eigen(), w, params.k, params.max_iter, params.tol, rng);
        fit.run_inertias.push_back(run.inertia);
        if (!have_best || run.inertia < best.inertia) {
            best = std::move(run);
            have_best = true;
        }
    }

    fit.centroids = std::move(best.centroids);
    fit.labels = std::move(best.labels);
    fit.inertia = best.inertia;
    fit.n_iter = best.n_iter;
    fit.inertia_trace = std::move(best.trace);
    return fit;
}

std::vector<int> kmeans_predict(const KMeansFit& fit, const Matrix& X) {
    if (static_cast<Eigen::Index>(X.n_features()) != fit.centroids.cols())
        throw ShapeMismatchError("feature count does not match the fitted model");
    std::vector<int> labels(X.n_samples(), 0);
    if (X.n_samples() == 0) return labels;
    const Eigen::MatrixXd dist_sq = all_pairs_sq(X.eigen(), fit.centroids);
    assign_nearest(dist_sq, labels);
    return labels;
}

}  // namespace ml::cluster
