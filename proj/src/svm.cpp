// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <unordered_map>

namespace ml::svm {

KernelSpec kernel_from_string(const std::string& name, double gamma, long long degree,
                              double coef0) {
    KernelSpec k;
    if (name == "linear")
        k.type = KernelSpec::Type::Linear;
    else if (name == "rbf")
        k.type = KernelSpec::Type::Rbf;
    else if (name == "poly" || name == "polynomial")
        k.type = KernelSpec::Type::Poly;
    else
        throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + name + "'");
    k.gamma = gamma;
    k.degree = degree;
    k.coef0 = coef0;
    return k;
}

double kernel_value(const KernelSpec& k, const Eigen::RowVectorXd& a,
                    const Eigen::RowVectorXd& b) {
    switch (k.type) {
        case KernelSpec::Type::Linear:
            return a.dot(b);
        case KernelSpec::Type::Rbf:
            return std::exp(-k.gamma * (a - b).squaredNorm());
        case KernelSpec::Type::Poly:
            return std::pow(k.gamma * a.dot(b) + k.coef0, static_cast<double>(k.degree));
    }
    return 0.0;
}

namespace {

// LRU cache over full kernel rows. Eviction never changes values, only
// recomputation cost.
class KernelRowCache {
public:
    KernelRowCache(const RowMatrixXd& X, const KernelSpec& kernel, std::size_t capacity)
        : X_(X), kernel_(kernel), capacity_(std::max<std::size_t>(capacity, 2)) {
        if (kernel_.type != KernelSpec::Type::Linear)
            sq_norms_ = X_.rowwise().squaredNorm();
    }

    const Eigen::VectorXd& row(Eigen::Index i) {
        auto it = lookup_.find(i);
        if (it != lookup_.end()) {
            rows_.splice(rows_.begin(), rows_, it->second);
            return rows_.front().second;
        }
        if (rows_.size() >= capacity_) {
            lookup_.erase(rows_.back().first);
            rows_.pop_back();
        }
        rows_.emplace_front(i, compute(i));
        lookup_[i] = rows_.begin();
        return rows_.front().second;
    }

private:
    Eigen::VectorXd compute(Eigen::Index i) const {
        const Eigen::VectorXd dots = X_ * X_.row(i).transpose();
        switch (kernel_.type) {
            case KernelSpec::Type::Linear:
                return dots;
            case KernelSpec::Type::Rbf:
                return (-kernel_.gamma *
                        (sq_norms_.array() + sq_norms_(i) - 2.0 * dots.array()))
                    .exp()
                    .matrix();
            case KernelSpec::Type::Poly:
                return (kernel_.gamma * dots.array() + kernel_.coef0)
                    .pow(static_cast<double>(kernel_.degree))
                    .matrix();
        }
        return dots;
    }

    const RowMatrixXd& X_;
    KernelSpec kernel_;
    std::size_t capacity_;
    Eigen::VectorXd sq_norms_;
    std::list<std::pair<Eigen::Index, Eigen::VectorXd>> rows_;
    std::unordered_map<Eigen::Index, decltype(rows_)::iterator> lookup_;
};

}  // namespace

SvcFit svc_fit(const SvcParams& params, const Matrix& X, const std::vector<int>& y,
               const std::vector<double>* sample_weight) {
    const std::size_t n = X.n_samples();
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "fit requires at least one sample");
    if (y.size() != n) throw ShapeMismatchError("label length does not match sample count");
    if (!(params.c > 0.0)) throw Error(ErrorCode::InvalidArgument, "c must be > 0");
    if (!(params.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");

    bool has_pos = false, has_neg = false;
    for (int v : y) {
        if (v == 1)
            has_pos = true;
        else if (v == -1)
            has_neg = true;
        else
            throw Error(ErrorCode::InvalidArgument, "labels must be +1 or -1");
    }
    if (!has_pos || !has_neg)
        throw Error(ErrorCode::SingleClass, "training data contains a single class");

    KernelSpec kernel = params.kernel;
    if (kernel.gamma <= 0.0) kernel.gamma = 1.0 / static_cast<double>(X.n_features());
    if (kernel.type != KernelSpec::Type::Linear && !(kernel.gamma > 0.0))
        throw Error(ErrorCode::InvalidArgument, "gamma must be > 0");

    std::vector<double> box(n, params.c);
    if (sample_weight) {
        if (sample_weight->size() != n)
            throw ShapeMismatchError("sample_weight length does not match sample count");
        for (std::size_t i = 0; i < n; ++i) {
            const double w = (*sample_weight)[i];
            if (!(w >= 0.0) || !std::isfinite(w))
                throw Error(ErrorCode::InvalidArgument, "sample weights must be finite and >= 0");
            box[i] = params.c * w;
        }
    }

    const std::size_t max_passes = params.max_passes > 0 ? params.max_passes : 10 * n;
    KernelRowCache cache(X.eigen(), kernel, params.cache_rows);

    std::vector<double> alpha(n, 0.0);
    // gradient of the min-form dual W(a) = 1/2 a'Qa - e'a
    std::vector<double> grad(n, -1.0);

    const auto in_up = [&](std::size_t t) {
        return (y[t] == 1 && alpha[t] < box[t]) || (y[t] == -1 && alpha[t] > 0.0);
    };
    const auto in_low = [&](std::size_t t) {
        return (y[t] == -1 && alpha[t] < box[t]) || (y[t] == 1 && alpha[t] > 0.0);
    };

    SvcFit fit;
    fit.kernel = kernel;
    fit.worst_objective_step = 0.0;

    double violation = std::numeric_limits<double>::infinity();
    std::size_t iter = 0;
    bool converged = false;
    while (iter < max_passes) {
        // maximal violating pair
        double m_up = -std::numeric_limits<double>::infinity();
        double m_low = std::numeric_limits<double>::infinity();
        std::ptrdiff_t i = -1, j = -1;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            if (in_up(t) && v > m_up) {
                m_up = v;
                i = static_cast<std::ptrdiff_t>(t);
            }
            if (in_low(t) && v < m_low) {
                m_low = v;
                j = static_cast<std::ptrdiff_t>(t);
            }
        }
        violation = m_up - m_low;
        if (i < 0 || j < 0 || violation <= params.tol) {
            converged = true;
            break;
        }
        ++iter;

        const Eigen::VectorXd& Ki = cache.row(i);
        const Eigen::VectorXd Kj = cache.row(j);  // copy: Ki's slot may be evicted

        double quad = Ki(i) + Kj(j) - 2.0 * Ki(j);
        if (quad <= 0.0) quad = 1e-12;

        // step along alpha_i += y_i*t, alpha_j -= y_j*t
        double step = violation / quad;
        const double gi = static_cast<double>(y[i]) * grad[i];
        const double gj = static_cast<double>(y[j]) * grad[j];

        // box limits on t
        double t_max = std::numeric_limits<double>::infinity();
        if (y[i] == 1)
            t_max = std::min(t_max, box[i] - alpha[i]);
        else
            t_max = std::min(t_max, alpha[i]);
        if (y[j] == 1)
            t_max = std::min(t_max, alpha[j]);
        else
            t_max = std::min(t_max, box[j] - alpha[j]);
        step = std::min(step, t_max);

        const double delta_i = static_cast<double>(y[i]) * step;
        const double delta_j = -static_cast<double>(y[j]) * step;

        // objective change of the min-form dual; must never increase
        const double d_obj = gi * step - gj * step + 0.5 * step * step * quad;
        fit.worst_objective_step = std::max(fit.worst_objective_step, d_obj);

        alpha[i] = std::clamp(alpha[i] + delta_i, 0.0, box[i]);
        alpha[j] = std::clamp(alpha[j] + delta_j, 0.0, box[j]);

        for (std::size_t t = 0; t < n; ++t)
            grad[t] += static_cast<double>(y[t]) *
                       (delta_i * static_cast<double>(y[i]) * Ki(static_cast<Eigen::Index>(t)) +
                        delta_j * static_cast<double>(y[j]) * Kj(static_cast<Eigen::Index>(t)));
    }
    if (!converged)
        throw NotConvergedError("SMO exhausted max_passes (KKT violation " +
                                    std::to_string(violation) + " > tol)",
                                iter, violation);

    // bias: average of y_t - f~(x_t) over free vectors, else the midpoint of
    // the feasibility interval; -y*grad equals that candidate value per sample
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double v = -y[t] * grad[t];
        if (alpha[t] > 0.0 && alpha[t] < box[t]) {
            free_sum += v;
            ++free_count;
        }
        if (in_up(t)) m_up = std::max(m_up, v);
        if (in_low(t)) m_low = std::min(m_low, v);
    }
    fit.bias = free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (m_up + m_low);

    // dual objective in max form: sum(alpha) - 1/2 a'Qa; from the gradient,
    // a'Qa = a'(grad + e)
    double asum = 0.0, aga = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        asum += alpha[t];
        aga += alpha[t] * (grad[t] + 1.0);
    }
    fit.dual_objective = asum - 0.5 * aga;

    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0) fit.support_indices.push_back(t);
    }
    fit.support_vectors.resize(static_cast<Eigen::Index>(fit.support_indices.size()),
                               static_cast<Eigen::Index>(X.n_features()));
    fit.dual_coefs.resize(static_cast<Eigen::Index>(fit.support_indices.size()));
    for (std::size_t s = 0; s < fit.support_indices.size(); ++s) {
        const std::size_t t = fit.support_indices[s];
        fit.support_vectors.row(static_cast<Eigen::Index>(s)) =
            X.eigen().row(static_cast<Eigen::Index>(t));
        fit.dual_coefs(static_cast<Eigen::Index>(s)) = alpha[t] * static_cast<double>(y[t]);
    }
    fit.alphas = std::move(alpha);
    fit.y_signs = y;
    fit.box = std::move(box);
    fit.n_iter = iter;
    fit.final_violation = violation;
    return fit;
}

std::vector<double> svc_decision(const SvcFit& fit, const Matrix& X) {
    if (fit.support_vectors.cols() != static_cast<Eigen::Index>(X.n_features()) &&
        X.n_samples() > 0)
        throw ShapeMismatchError("query feature count does not match the fitted model");
    std::vector<double> out(X.n_samples(), fit.bias);
    for (std::size_t q = 0; q < X.n_samples(); ++q) {
        const Eigen::RowVectorXd x = X.row(q);
        double acc = 0.0;
        for (Eigen::Index s = 0; s < fit.support_vectors.rows(); ++s)
            acc += fit.dual_coefs(s) * kernel_value(fit.kernel, fit.support_vectors.row(s), x);
        out[q] += acc;
    }
    return out;
}

MulticlassSvcFit multiclass_svc_fit(const SvcParams& params, const Matrix& X,
                                    const std::vector<int>& y_codes, int n_classes,
                                    const std::vector<double>* sample_weight) {
    if (n_classes < 2) throw Error(ErrorCode::SingleClass, "need at least two classes");
    if (y_codes.size() != X.n_samples())
        throw ShapeMismatchError("label length does not match sample count");

    MulticlassSvcFit out;
    out.n_classes = n_classes;
    for (int a = 0; a < n_classes; ++a) {
        for (int b = a + 1; b < n_classes; ++b) {
            std::vector<std::size_t> rows;
            std::vector<int> sub_y;
            std::vector<double> sub_w;
            for (std::size_t i = 0; i < y_codes.size(); ++i) {
                if (y_codes[i] == a || y_codes[i] == b) {
                    rows.push_back(i);
                    sub_y.push_back(y_codes[i] == b ? 1 : -1);
                    if (sample_weight) sub_w.push_back((*sample_weight)[i]);
                }
            }
            const Matrix sub_X = X.select_rows(rows);
            PairwiseSvc pair;
            pair.class_a = a;
            pair.class_b = b;
            pair.fit = svc_fit(params, sub_X, sub_y, sample_weight ? &sub_w : nullptr);
            out.pairs.push_back(std::move(pair));
        }
    }
    return out;
}

std::vector<int> multiclass_svc_predict(const MulticlassSvcFit& fit, const Matrix& X) {
    const std::size_t n = X.n_samples();
    std::vector<std::vector<int>> votes(n, std::vector<int>(fit.n_classes, 0));
    std::vector<std::vector<double>> strength(n, std::vector<double>(fit.n_classes, 0.0));

    for (const auto& pair : fit.pairs) {
        const std::vector<double> decision = svc_decision(pair.fit, X);
        for (std::size_t q = 0; q < n; ++q) {
            const int winner = decision[q] >= 0.0 ? pair.class_b : pair.class_a;
            votes[q][winner] += 1;
            strength[q][winner] += std::abs(decision[q]);
        }
    }

    std::vector<int> out(n, 0);
    for (std::size_t q = 0; q < n; ++q) {
        int best = 0;
        for (int c = 1; c < fit.n_classes; ++c) {
            if (votes[q][c] > votes[q][best] ||
                (votes[q][c] == votes[q][best] && strength[q][c] > strength[q][best]))
                best = c;
        }
        out[q] = best;
    }
    return out;
}

}  // namespace ml::svm
