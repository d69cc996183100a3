// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn/linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minilearn/estimator.hpp"

namespace ml::linear {

namespace {

double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}

struct Prepared {
    Eigen::MatrixXd Xc;      // centered when fit_intercept; column-major for the column sweeps
    Eigen::VectorXd yc;
    Eigen::VectorXd w;       // sample weights (all ones when absent)
    Eigen::RowVectorXd x_mean;
    double y_mean = 0.0;
    double weight_sum = 0.0;
};

Prepared prepare(const Matrix& X, const std::vector<double>& y,
                 const std::vector<double>* sample_weight, bool fit_intercept) {
    const auto n = static_cast<Eigen::Index>(X.n_samples());
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "fit requires at least one sample");
    if (y.size() != X.n_samples())
        throw ShapeMismatchError("label length does not match sample count");

    Prepared p;
    p.w = Eigen::VectorXd::Ones(n);
    if (sample_weight) {
        if (sample_weight->size() != X.n_samples())
            throw ShapeMismatchError("sample_weight length does not match sample count");
        for (double v : *sample_weight)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw Error(ErrorCode::InvalidArgument, "sample weights must be finite and >= 0");
        p.w = Eigen::Map<const Eigen::VectorXd>(sample_weight->data(), n);
    }
    p.weight_sum = p.w.sum();
    if (p.weight_sum <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "sample weights sum to zero");

    p.Xc = X.eigen();
    p.yc = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
    if (fit_intercept) {
        p.x_mean = (p.w.transpose() * p.Xc) / p.weight_sum;
        p.y_mean = p.w.dot(p.yc) / p.weight_sum;
        p.Xc.rowwise() -= p.x_mean;
        p.yc.array() -= p.y_mean;
    } else {
        p.x_mean = Eigen::RowVectorXd::Zero(p.Xc.cols());
        p.y_mean = 0.0;
    }
    return p;
}

// Convergence certificate on the centered problem. For l1 > 0 this is the
// duality gap of the l1/l2-penalized least squares objective; for l1 == 0
// it is the sup-norm of the (smooth) objective gradient.
double gap_on_centered(const Eigen::MatrixXd& Xc, const Eigen::VectorXd& yc,
                       const Eigen::VectorXd& w, double weight_sum, double l1, double l2,
                       const Eigen::VectorXd& beta, const Eigen::VectorXd& resid) {
    const Eigen::VectorXd wr = w.cwiseProduct(resid);
    const Eigen::VectorXd corr = (Xc.transpose() * wr) / weight_sum;
    if (l1 <= 0.0) {
        return (corr - l2 * beta).cwiseAbs().maxCoeff();
    }
    const Eigen::VectorXd v = corr - l2 * beta;
    const double dual_norm = v.cwiseAbs().maxCoeff();
    const double cst = dual_norm > l1 ? l1 / dual_norm : 1.0;
    const double r2 = resid.dot(wr) / weight_sum;
    const double ry = yc.dot(wr) / weight_sum;
    const double b1 = beta.lpNorm<1>();
    const double b2 = beta.squaredNorm();
    return 0.5 * (1.0 + cst * cst) * r2 + l1 * b1 - cst * ry + 0.5 * l2 * (1.0 + cst * cst) * b2;
}

}  // namespace

LinearFit elastic_net_fit(const ElasticNetParams& params, const Matrix& X,
                          const std::vector<double>& y, const std::vector<double>* sample_weight,
                          const Eigen::VectorXd* warm_start) {
    if (params.alpha < 0.0)
        throw Error(ErrorCode::InvalidArgument, "alpha must be >= 0");
    if (params.l1_ratio < 0.0 || params.l1_ratio > 1.0)
        throw Error(ErrorCode::InvalidArgument, "l1_ratio must lie in [0, 1]");
    if (!(params.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");

    Prepared p = prepare(X, y, sample_weight, params.fit_intercept);
    const Eigen::Index n_features = p.Xc.cols();
    const double l1 = params.alpha * params.l1_ratio;
    const double l2 = params.alpha * (1.0 - params.l1_ratio);

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(n_features);
    if (warm_start) {
        if (warm_start->size() != n_features)
            throw ShapeMismatchError("warm start width does not match feature count");
        beta = *warm_start;
    }

    const bool unit_weights = sample_weight == nullptr;

    // weighted squared column norms, normalized by the total weight
    Eigen::VectorXd col_sq(n_features);
    for (Eigen::Index j = 0; j < n_features; ++j)
        col_sq(j) = p.Xc.col(j).cwiseProduct(p.w.cwiseProduct(p.Xc.col(j))).sum() / p.weight_sum;

    Eigen::VectorXd resid = p.yc - p.Xc * beta;
    // weighted residual, maintained alongside resid when weights are present
    Eigen::VectorXd wresid;
    if (!unit_weights) wresid = p.w.cwiseProduct(resid);

    LinearFit fit;
    bool converged = false;
    double gap = std::numeric_limits<double>::infinity();
    std::size_t sweep = 0;
    for (sweep = 1; sweep <= params.max_iter; ++sweep) {
        for (Eigen::Index j = 0; j < n_features; ++j) {
            if (col_sq(j) == 0.0) {
                beta(j) = 0.0;
                continue;
            }
            const double old = beta(j);
            const double corr = unit_weights ? p.Xc.col(j).dot(resid) : p.Xc.col(j).dot(wresid);
            const double rho = corr / p.weight_sum + col_sq(j) * old;
            const double updated = soft_threshold(rho, l1) / (col_sq(j) + l2);
            if (updated != old) {
                const double delta = old - updated;
                resid += p.Xc.col(j) * delta;
                if (!unit_weights)
                    wresid.array() += p.w.array() * p.Xc.col(j).array() * delta;
                beta(j) = updated;
            }
        }
        gap = gap_on_centered(p.Xc, p.yc, p.w, p.weight_sum, l1, l2, beta, resid);
        if (gap <= params.tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NotConvergedError("coordinate descent exhausted max_iter sweeps (gap " +
                                    std::to_string(gap) + " > tol)",
                                params.max_iter, gap);

    fit.weights = std::move(beta);
    fit.intercept = params.fit_intercept ? p.y_mean - p.x_mean.dot(fit.weights) : 0.0;
    fit.dual_gap = gap;
    fit.n_iter = sweep;
    return fit;
}

double elastic_net_gap(const ElasticNetParams& params, const Matrix& X,
                       const std::vector<double>& y, const Eigen::VectorXd& beta,
                       double intercept, const std::vector<double>* sample_weight) {
    Prepared p = prepare(X, y, sample_weight, params.fit_intercept);
    (void)intercept;  // centering absorbs the intercept
    const double l1 = params.alpha * params.l1_ratio;
    const double l2 = params.alpha * (1.0 - params.l1_ratio);
    const Eigen::VectorXd resid = p.yc - p.Xc * beta;
    return gap_on_centered(p.Xc, p.yc, p.w, p.weight_sum, l1, l2, beta, resid);
}

// ------------------------------------------------------------------- LARS

namespace {

constexpr double kLarsTiny = 1e-12;

// Active-set state for the path: the Gram matrix X_A'X_A/n and its lower
// Cholesky factor, grown one feature at a time so a join costs O(n|A|)
// instead of a full refactorization.
class LarsActiveSet {
public:
    LarsActiveSet(const Eigen::MatrixXd& Xc, std::size_t capacity)
        : Xc_(Xc),
          n_(static_cast<double>(Xc.rows())),
          gram_(capacity, capacity),
          chol_(capacity, capacity) {}

    std::size_t size() const { return features_.size(); }
    const std::vector<Eigen::Index>& features() const { return features_; }

    // false when the feature is numerically collinear with the active set
    bool join(Eigen::Index j, double sign) {
        const auto m = static_cast<Eigen::Index>(features_.size());
        const double gjj = Xc_.col(j).squaredNorm() / n_;
        Eigen::VectorXd g(m);
        for (Eigen::Index a = 0; a < m; ++a)
            g(a) = Xc_.col(features_[static_cast<std::size_t>(a)]).dot(Xc_.col(j)) / n_;

        double diag_sq = gjj;
        Eigen::VectorXd w;
        if (m > 0) {
            w = chol_.topLeftCorner(m, m)
                    .triangularView<Eigen::Lower>()
                    .solve(g);
            diag_sq = gjj - w.squaredNorm();
        }
        if (!(diag_sq > 1e-10 * std::max(gjj, 1e-300))) return false;

        gram_.block(m, 0, 1, m) = g.transpose();
        gram_.block(0, m, m, 1) = g;
        gram_(m, m) = gjj;
        if (m > 0) chol_.block(m, 0, 1, m) = w.transpose();
        chol_(m, m) = std::sqrt(diag_sq);

        features_.push_back(j);
        signs_.push_back(sign);
        return true;
    }

    void remove(std::size_t position) {
        const auto m = static_cast<Eigen::Index>(features_.size());
        const auto at = static_cast<Eigen::Index>(position);
        // close the gap in the Gram matrix, then refactor (drops are rare)
        for (Eigen::Index r = at; r + 1 < m; ++r)
            gram_.row(r).head(m) = gram_.row(r + 1).head(m);
        for (Eigen::Index c = at; c + 1 < m; ++c)
            gram_.col(c).head(m - 1) = gram_.col(c + 1).head(m - 1);
        features_.erase(features_.begin() + static_cast<std::ptrdiff_t>(position));
        signs_.erase(signs_.begin() + static_cast<std::ptrdiff_t>(position));

        const auto k = static_cast<Eigen::Index>(features_.size());
        if (k == 0) return;
        const Eigen::LLT<Eigen::MatrixXd> llt(gram_.topLeftCorner(k, k));
        chol_.topLeftCorner(k, k) = llt.matrixL();
    }

    // solves (X_A'X_A/n) d = s through the maintained factor
    Eigen::VectorXd direction() const {
        const auto m = static_cast<Eigen::Index>(features_.size());
        Eigen::VectorXd rhs(m);
        for (Eigen::Index a = 0; a < m; ++a) rhs(a) = signs_[static_cast<std::size_t>(a)];
        const auto L = chol_.topLeftCorner(m, m);
        Eigen::VectorXd d = L.triangularView<Eigen::Lower>().solve(rhs);
        L.triangularView<Eigen::Lower>().transpose().solveInPlace(d);
        return d;
    }

private:
    const Eigen::MatrixXd& Xc_;
    double n_;
    std::vector<Eigen::Index> features_;
    std::vector<double> signs_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd chol_;
};

}  // namespace

LarsPath lars_path(const Matrix& X, const std::vector<double>& y, std::size_t max_knots,
                   bool lasso_mode, bool fit_intercept) {
    Prepared p = prepare(X, y, nullptr, fit_intercept);
    const Eigen::Index n_features = p.Xc.cols();
    const double n = static_cast<double>(X.n_samples());

    LarsPath path;
    path.x_mean = p.x_mean;
    path.y_mean = p.y_mean;
    path.fit_intercept = fit_intercept;

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(n_features);
    Eigen::VectorXd resid = p.yc;  // refined in place by each step below

    Eigen::VectorXd corr = (p.Xc.transpose() * resid) / n;
    double lambda = corr.cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, p.yc.cwiseAbs().maxCoeff());
    const double tie_tol = kLarsTiny * scale;

    if (lambda <= tie_tol) {
        path.knots.push_back({0.0, beta, resid, {}, {}});
        return path;
    }

    path.knots.push_back({lambda, beta, resid, {}, {}});

    const std::size_t max_active =
        std::min<std::size_t>(static_cast<std::size_t>(n_features),
                              X.n_samples() - (fit_intercept ? 1 : 0));

    LarsActiveSet active(p.Xc, max_active);
    std::vector<bool> in_active(static_cast<std::size_t>(n_features), false);
    std::vector<bool> excluded(static_cast<std::size_t>(n_features), false);
    std::vector<int> pending_join;

    // activate every feature whose absolute correlation reaches lambda;
    // features collinear with the active set are excluded with a warning
    const auto activate_at_bound = [&]() {
        for (Eigen::Index j = 0; j < n_features && active.size() < max_active; ++j) {
            if (in_active[static_cast<std::size_t>(j)] || excluded[static_cast<std::size_t>(j)])
                continue;
            if (std::abs(corr(j)) >= lambda - tie_tol) {
                if (active.join(j, corr(j) >= 0.0 ? 1.0 : -1.0)) {
                    in_active[static_cast<std::size_t>(j)] = true;
                    pending_join.push_back(static_cast<int>(j));
                } else {
                    excluded[static_cast<std::size_t>(j)] = true;
                    path.warnings.push_back("dropped collinear feature " + std::to_string(j));
                }
            }
        }
    };
    activate_at_bound();
    if (active.size() == 0) {
        path.knots.push_back({0.0, beta, resid, {}, {}});
        return path;
    }

    while (lambda > tie_tol && (max_knots == 0 || path.knots.size() < max_knots)) {
        const Eigen::VectorXd direction = active.direction();
        const auto& features = active.features();

        // step direction in sample space, and correlation decay rates
        Eigen::VectorXd u = Eigen::VectorXd::Zero(p.Xc.rows());
        for (std::size_t a = 0; a < features.size(); ++a)
            u += p.Xc.col(features[a]) * direction(static_cast<Eigen::Index>(a));
        const Eigen::VectorXd decay = (p.Xc.transpose() * u) / n;

        double gamma = lambda;  // full descent to lambda = 0
        bool join_event = false;
        if (active.size() < max_active) {
            for (Eigen::Index j = 0; j < n_features; ++j) {
                if (in_active[static_cast<std::size_t>(j)] ||
                    excluded[static_cast<std::size_t>(j)])
                    continue;
                const double aj = decay(j);
                const double cj = corr(j);
                for (const double cand : {(lambda - cj) / (1.0 - aj), (lambda + cj) / (1.0 + aj)}) {
                    if (cand > kLarsTiny && cand < gamma - kLarsTiny) {
                        gamma = cand;
                        join_event = true;
                    }
                }
            }
        }

        bool drop_event = false;
        if (lasso_mode) {
            for (std::size_t a = 0; a < features.size(); ++a) {
                const double d = direction(static_cast<Eigen::Index>(a));
                if (d == 0.0) continue;
                const double cand = -beta(features[a]) / d;
                if (cand > kLarsTiny && cand < gamma - kLarsTiny) {
                    gamma = cand;
                    drop_event = true;
                    join_event = false;
                }
            }
        }

        for (std::size_t a = 0; a < features.size(); ++a)
            beta(features[a]) += gamma * direction(static_cast<Eigen::Index>(a));
        resid -= gamma * u;      // incremental residual refinement
        corr -= gamma * decay;   // consistent with the refined residual
        lambda -= gamma;
        if (lambda < 0.0) lambda = 0.0;

        LarsKnot knot;
        knot.lambda = lambda;
        knot.joined = std::move(pending_join);
        pending_join.clear();

        if (drop_event) {
            // every coefficient that hit zero at this step leaves the set
            for (std::size_t a = active.size(); a-- > 0;) {
                const Eigen::Index feature = active.features()[a];
                if (std::abs(beta(feature)) <= tie_tol) {
                    beta(feature) = 0.0;
                    in_active[static_cast<std::size_t>(feature)] = false;
                    knot.dropped.push_back(static_cast<int>(feature));
                    active.remove(a);
                }
            }
            std::sort(knot.dropped.begin(), knot.dropped.end());
        }
        knot.weights = beta;
        knot.residual = resid;
        path.knots.push_back(std::move(knot));

        if (lambda <= tie_tol) break;

        if (join_event) activate_at_bound();
        if (!join_event && !drop_event) break;  // descent ended short of zero
        if (active.size() == 0) break;
    }
    return path;
}

Eigen::VectorXd LarsPath::weights_at(double lambda) const {
    if (knots.empty()) throw Error(ErrorCode::Internal, "empty LARS path");
    if (lambda >= knots.front().lambda) {
        return knots.front().lambda == lambda ? knots.front().weights
                                              : Eigen::VectorXd::Zero(knots.front().weights.size());
    }
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double hi = knots[i].lambda;
        const double lo = knots[i + 1].lambda;
        if (lambda <= hi && lambda >= lo) {
            if (hi == lo) return knots[i + 1].weights;
            const double t = (hi - lambda) / (hi - lo);
            return knots[i].weights + t * (knots[i + 1].weights - knots[i].weights);
        }
    }
    return knots.back().weights;
}

double LarsPath::intercept_at(double lambda) const {
    if (!fit_intercept) return 0.0;
    return y_mean - x_mean.dot(weights_at(lambda));
}

// --------------------------------------------------------------- lasso CV

LassoCvResult lasso_cv(std::vector<double> grid, const model_selection::SplitPlan& folds,
                       const Matrix& X, const std::vector<double>& y, double tol,
                       std::size_t max_iter) {
    if (y.size() != X.n_samples())
        throw ShapeMismatchError("label length does not match sample count");

    if (grid.empty()) {
        // geometric grid from lambda_max (smallest penalty that zeroes every
        // coefficient on the full data) down three decades
        Prepared p = prepare(X, y, nullptr, true);
        const double lambda_max =
            ((p.Xc.transpose() * p.w.cwiseProduct(p.yc)) / p.weight_sum).cwiseAbs().maxCoeff();
        const double lo = std::max(lambda_max * 1e-3, 1e-15);
        const std::size_t count = 100;
        for (std::size_t i = 0; i < count; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(count - 1);
            grid.push_back(lambda_max * std::pow(lo / lambda_max, t));
        }
    }
    for (double v : grid)
        if (!(v >= 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda grid values must be >= 0");
    std::sort(grid.begin(), grid.end(), std::greater<double>());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> mean_scores(grid.size(), 0.0);
    for (std::size_t f = 0; f < folds.splits.size(); ++f) {
        const auto& split = folds.splits[f];
        const Matrix X_train = X.select_rows(split.train);
        const Matrix X_test = X.select_rows(split.test);
        std::vector<double> y_train, y_test;
        y_train.reserve(split.train.size());
        y_test.reserve(split.test.size());
        for (std::size_t i : split.train) y_train.push_back(y[i]);
        for (std::size_t i : split.test) y_test.push_back(y[i]);

        Eigen::VectorXd warm = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(X.n_features()));
        for (std::size_t g = 0; g < grid.size(); ++g) {
            ElasticNetParams params;
            params.alpha = grid[g];
            params.l1_ratio = 1.0;
            params.tol = tol;
            params.max_iter = max_iter;
            LinearFit fit;
            try {
                fit = elastic_net_fit(params, X_train, y_train, nullptr, &warm);
            } catch (const Error& e) {
                throw Error(e.code(), "fold " + std::to_string(f) + ", lambda " +
                                          std::to_string(grid[g]) + ": " + e.what());
            }
            warm = fit.weights;

            std::vector<double> pred(split.test.size());
            for (std::size_t i = 0; i < split.test.size(); ++i)
                pred[i] = X_test.row(i).dot(fit.weights) + fit.intercept;
            mean_scores[g] += r2_score(y_test, pred);
        }
    }
    const double n_folds = static_cast<double>(folds.splits.size());
    for (double& s : mean_scores) s /= n_folds;

    std::size_t best = 0;  // grid is sorted descending: ties keep the larger lambda
    for (std::size_t g = 1; g < grid.size(); ++g)
        if (mean_scores[g] > mean_scores[best]) best = g;

    ElasticNetParams params;
    params.alpha = grid[best];
    params.l1_ratio = 1.0;
    params.tol = tol;
    params.max_iter = max_iter;

    LassoCvResult result;
    result.best_lambda = grid[best];
    result.model = elastic_net_fit(params, X, y);
    result.lambdas = std::move(grid);
    result.mean_scores = std::move(mean_scores);
    return result;
}

}  // namespace ml::linear
