// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "minilearn/estimator.hpp"

namespace ml::model_selection {

struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

// Ordered train/test index pairs. For the K-fold family the test sets
// partition 0..n-1.
struct SplitPlan {
    std::size_t n = 0;
    std::vector<Split> splits;
};

SplitPlan kfold(std::size_t n, std::size_t k, bool shuffle = false, std::uint64_t seed = 0);
SplitPlan leave_one_out(std::size_t n);
SplitPlan stratified_kfold(const Labels& y, std::size_t k, bool shuffle = false,
                           std::uint64_t seed = 0);

std::vector<double> cross_val_score(const EstimatorSpec& spec, const Matrix& X, const Labels& y,
                                    const SplitPlan& plan);

// Named axes of hyperparameter candidates; the grid is their Cartesian
// product, enumerated with axes in sorted name order and the last axis
// varying fastest.
class ParamGrid {
public:
    ParamGrid& add(const std::string& axis, std::vector<ParamValue> candidates);

    std::size_t size() const;
    std::map<std::string, ParamValue> point(std::size_t index) const;
    const std::map<std::string, std::vector<ParamValue>>& axes() const { return axes_; }

private:
    std::map<std::string, std::vector<ParamValue>> axes_;
};

struct GridPointReport {
    std::map<std::string, ParamValue> params;
    std::vector<double> fold_scores;
    double mean_score = 0.0;
    double std_score = 0.0;
    bool failed = false;       // any fold raised; mean_score is -inf
    std::string error;
};

// Outcome of a cross-validated grid search. Behaves as a fitted estimator:
// predict/transform/score delegate to the model refit at the best point.
class GridSearchResult {
public:
    GridSearchResult(std::vector<GridPointReport> table, std::size_t best_index, Model refit);

    const std::map<std::string, ParamValue>& best_params() const;
    double best_score() const;
    const std::vector<GridPointReport>& table() const { return table_; }
    const Model& refit_model() const { return refit_; }

    Labels predict(const Matrix& X) const { return refit_.predict(X); }
    Matrix transform(const Matrix& X) const { return refit_.transform(X); }
    double score(const Matrix& X, const Labels& y) const { return refit_.score(X, y); }

private:
    std::vector<GridPointReport> table_;
    std::size_t best_index_;
    Model refit_;
};

GridSearchResult grid_search_fit(const EstimatorSpec& base, const ParamGrid& grid,
                                 const SplitPlan& plan, const Matrix& X, const Labels& y,
                                 std::size_t n_workers = 1);

inline EstimatorSpec make_pipeline(const std::vector<EstimatorSpec>& steps) {
    return EstimatorSpec::pipeline(steps);
}

// Worker count after applying the BENCH_THREADS environment cap.
std::size_t effective_worker_count(std::size_t requested);

}  // namespace ml::model_selection
