// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minilearn/datasets.hpp"

namespace ml::bench {

struct BenchTask {
    std::string algorithm;  // svc | lasso_lars | elastic_net | knn | pca | kmeans
    std::map<std::string, std::string> params;
};

struct BenchConfig {
    std::string dataset = "madelon";  // "madelon" or a .csv/.svmlight path
    std::string label_column;         // for csv datasets; name or 0-based index
    datasets::MadelonSpec madelon{1100, 125, 5, 15, 1.0, 0.01, 0};
    std::uint64_t seed = 0;           // overrides madelon.seed and estimator seeds
    std::size_t repeats = 3;
    double timeout_seconds = 3600.0;
    bool parallel_tasks = false;
    std::string output;               // records path; empty = next to the config
    std::vector<BenchTask> tasks;     // defaults to the full six-row protocol
};

// Flat "key = value" text format; '#' starts a comment.
BenchConfig parse_config_text(const std::string& text);
BenchConfig load_config(const std::string& path);

struct BenchRecord {
    std::string algorithm;
    std::string dataset;
    std::size_t n_samples = 0;
    std::size_t n_features = 0;
    double wall_seconds = 0.0;  // median over repeats, warm-up discarded
    std::string quality_metric;
    double quality_value = 0.0;
    std::uint64_t seed = 0;
    std::size_t repeats = 0;
    std::string status = "ok";  // ok | failed | timeout
    std::string error;
    std::map<std::string, std::string> params;

    std::string to_json_line() const;
    static BenchRecord from_json_line(const std::string& line);
};

struct BenchResult {
    std::vector<BenchRecord> records;
    std::string table;
    bool any_failed = false;
};

// Times fit() only, on a monotonic clock, discarding one warm-up run and
// reporting the median of `repeats` timed runs. Task failures become failed
// rows; the run always produces one record per task.
BenchResult run_bench(const BenchConfig& config);

std::string render_table(const std::vector<BenchRecord>& records);

std::vector<BenchRecord> load_records(const std::string& path);
void save_records(const std::string& path, const std::vector<BenchRecord>& records);

// Table 1-style row label ("Support Vector Classification", ...).
std::string algorithm_label(const BenchRecord& record);

}  // namespace ml::bench
