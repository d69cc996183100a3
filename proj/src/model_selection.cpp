// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn/model_selection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

#include "minilearn/rng.hpp"

namespace ml::model_selection {

namespace {

// contiguous chunks over a (possibly shuffled) index sequence, remainder
// spread over the leading folds
std::vector<std::vector<std::size_t>> chunk(const std::vector<std::size_t>& order, std::size_t k) {
    std::vector<std::vector<std::size_t>> folds(k);
    const std::size_t base = order.size() / k;
    const std::size_t extra = order.size() % k;
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t len = base + (f < extra ? 1 : 0);
        folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                        order.begin() + static_cast<std::ptrdiff_t>(pos + len));
        pos += len;
    }
    return folds;
}

SplitPlan assemble(std::size_t n, std::vector<std::vector<std::size_t>> test_folds) {
    SplitPlan plan;
    plan.n = n;
    std::vector<bool> in_test(n, false);
    for (auto& test : test_folds) {
        std::sort(test.begin(), test.end());
        for (std::size_t i : test) in_test[i] = true;
        Split split;
        split.test = std::move(test);
        split.train.reserve(n - split.test.size());
        for (std::size_t i = 0; i < n; ++i)
            if (!in_test[i]) split.train.push_back(i);
        for (std::size_t i : split.test) in_test[i] = false;
        plan.splits.push_back(std::move(split));
    }
    return plan;
}

}  // namespace

SplitPlan kfold(std::size_t n, std::size_t k, bool shuffle, std::uint64_t seed) {
    if (k < 2 || k > n) throw Error(ErrorCode::BadK, "k must lie in 2..n");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (shuffle) {
        Rng rng(seed);
        rng.shuffle(order);
    }
    return assemble(n, chunk(order, k));
}

SplitPlan leave_one_out(std::size_t n) {
    if (n < 2) throw Error(ErrorCode::BadK, "leave-one-out needs n >= 2");
    std::vector<std::vector<std::size_t>> tests(n);
    for (std::size_t i = 0; i < n; ++i) tests[i] = {i};
    return assemble(n, std::move(tests));
}

SplitPlan stratified_kfold(const Labels& y, std::size_t k, bool shuffle, std::uint64_t seed) {
    const Labels classes = y.to_classes();
    const std::size_t n = classes.size();
    if (k < 2 || k > n) throw Error(ErrorCode::BadK, "k must lie in 2..n");

    std::vector<std::vector<std::size_t>> members(classes.class_names().size());
    for (std::size_t i = 0; i < n; ++i)
        members[static_cast<std::size_t>(classes.class_codes()[i])].push_back(i);

    for (std::size_t c = 0; c < members.size(); ++c)
        if (members[c].size() < k)
            throw Error(ErrorCode::ClassTooSmall,
                        "class '" + classes.class_names()[c] + "' has " +
                            std::to_string(members[c].size()) + " members, fewer than k=" +
                            std::to_string(k));

    Rng rng(seed);
    std::vector<std::vector<std::size_t>> tests(k);
    for (auto& class_members : members) {
        if (shuffle) rng.shuffle(class_members);
        auto chunks = chunk(class_members, k);
        for (std::size_t f = 0; f < k; ++f)
            tests[f].insert(tests[f].end(), chunks[f].begin(), chunks[f].end());
    }
    return assemble(n, std::move(tests));
}

std::vector<double> cross_val_score(const EstimatorSpec& spec, const Matrix& X, const Labels& y,
                                    const SplitPlan& plan) {
    if (plan.n != X.n_samples())
        throw ShapeMismatchError("split plan was built for a different sample count");
    std::vector<double> scores;
    scores.reserve(plan.splits.size());
    for (std::size_t s = 0; s < plan.splits.size(); ++s) {
        const auto& split = plan.splits[s];
        try {
            const Labels y_train = y.subset(split.train);
            const Model model = fit(spec, X.select_rows(split.train), &y_train);
            scores.push_back(model.score(X.select_rows(split.test), y.subset(split.test)));
        } catch (const Error& e) {
            throw Error(e.code(), "split " + std::to_string(s) + ": " + e.what());
        }
    }
    return scores;
}

// ------------------------------------------------------------- param grids

ParamGrid& ParamGrid::add(const std::string& axis, std::vector<ParamValue> candidates) {
    if (candidates.empty())
        throw Error(ErrorCode::InvalidArgument, "grid axis '" + axis + "' has no candidates");
    axes_[axis] = std::move(candidates);
    return *this;
}

std::size_t ParamGrid::size() const {
    std::size_t total = 1;
    for (const auto& [name, candidates] : axes_) total *= candidates.size();
    return total;
}

std::map<std::string, ParamValue> ParamGrid::point(std::size_t index) const {
    std::map<std::string, ParamValue> out;
    // axes_ iterates in sorted name order; build strides so the last axis
    // varies fastest
    std::size_t stride = size();
    for (const auto& [name, candidates] : axes_) {
        stride /= candidates.size();
        out[name] = candidates[(index / stride) % candidates.size()];
    }
    return out;
}

// -------------------------------------------------------------- grid search

GridSearchResult::GridSearchResult(std::vector<GridPointReport> table, std::size_t best_index,
                                   Model refit)
    : table_(std::move(table)), best_index_(best_index), refit_(std::move(refit)) {}

const std::map<std::string, ParamValue>& GridSearchResult::best_params() const {
    return table_[best_index_].params;
}

double GridSearchResult::best_score() const { return table_[best_index_].mean_score; }

std::size_t effective_worker_count(std::size_t requested) {
    std::size_t workers = std::max<std::size_t>(requested, 1);
    if (const char* cap = std::getenv("BENCH_THREADS")) {
        const long parsed = std::strtol(cap, nullptr, 10);
        if (parsed >= 1) workers = std::min(workers, static_cast<std::size_t>(parsed));
    }
    return workers;
}

GridSearchResult grid_search_fit(const EstimatorSpec& base, const ParamGrid& grid,
                                 const SplitPlan& plan, const Matrix& X, const Labels& y,
                                 std::size_t n_workers) {
    if (plan.n != X.n_samples())
        throw ShapeMismatchError("split plan was built for a different sample count");
    if (plan.splits.empty())
        throw Error(ErrorCode::InvalidArgument, "split plan has no splits");

    const std::size_t n_points = grid.size();

    // validate every axis against the base spec before any fitting
    std::vector<EstimatorSpec> specs;
    specs.reserve(n_points);
    for (std::size_t p = 0; p < n_points; ++p) {
        EstimatorSpec spec = base;
        for (const auto& [name, value] : grid.point(p)) {
            try {
                spec.set(name, value);
            } catch (const UnsupportedParamError& e) {
                throw Error(ErrorCode::UnknownAxis, e.what());
            }
        }
        specs.push_back(std::move(spec));
    }

    const std::size_t n_folds = plan.splits.size();
    struct Cell {
        double score = 0.0;
        bool failed = false;
        std::string error;
    };
    std::vector<Cell> cells(n_points * n_folds);

    // grid points x folds are independent; each task owns one output cell,
    // so worker count cannot change any value
    const std::size_t n_tasks = cells.size();
    std::atomic<std::size_t> next_task{0};
    const auto worker = [&]() {
        while (true) {
            const std::size_t task = next_task.fetch_add(1);
            if (task >= n_tasks) return;
            const std::size_t point = task / n_folds;
            const std::size_t fold = task % n_folds;
            const auto& split = plan.splits[fold];
            Cell& cell = cells[task];
            try {
                const Matrix X_train = X.select_rows(split.train);
                const Labels y_train = y.subset(split.train);
                const Model model = fit(specs[point], X_train, &y_train);
                cell.score = model.score(X.select_rows(split.test), y.subset(split.test));
            } catch (const Error& e) {
                cell.failed = true;
                cell.error = std::string(error_code_name(e.code())) + ": " + e.what();
            } catch (const std::exception& e) {
                cell.failed = true;
                cell.error = e.what();
            }
        }
    };

    const std::size_t workers = std::min(effective_worker_count(n_workers), n_tasks);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<GridPointReport> table(n_points);
    for (std::size_t p = 0; p < n_points; ++p) {
        GridPointReport& report = table[p];
        report.params = grid.point(p);
        report.fold_scores.reserve(n_folds);
        double sum = 0.0;
        for (std::size_t f = 0; f < n_folds; ++f) {
            const Cell& cell = cells[p * n_folds + f];
            if (cell.failed) {
                report.failed = true;
                if (!report.error.empty()) report.error += "; ";
                report.error += "fold " + std::to_string(f) + ": " + cell.error;
            }
            report.fold_scores.push_back(cell.score);
            sum += cell.score;
        }
        if (report.failed) {
            report.mean_score = -std::numeric_limits<double>::infinity();
            report.std_score = 0.0;
        } else {
            report.mean_score = sum / static_cast<double>(n_folds);
            double var = 0.0;
            for (double s : report.fold_scores)
                var += (s - report.mean_score) * (s - report.mean_score);
            report.std_score = std::sqrt(var / static_cast<double>(n_folds));
        }
    }

    std::size_t best = 0;
    for (std::size_t p = 1; p < n_points; ++p)
        if (table[p].mean_score > table[best].mean_score) best = p;
    if (table[best].failed)
        throw Error(ErrorCode::Internal, "every grid point failed; first error: " + table[0].error);

    Model refit = fit(specs[best], X, &y);
    return GridSearchResult(std::move(table), best, std::move(refit));
}

}  // namespace ml::model_selection
