// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minilearn/bench.hpp"
#include "minilearn/datasets.hpp"
#include "minilearn/estimator.hpp"
#include "minilearn/model_selection.hpp"

using ml::Error;
using ml::ErrorCode;

struct ml_matrix {
    ml::Matrix value;
};
struct ml_labels {
    ml::Labels value;
};
struct ml_spec {
    ml::EstimatorSpec value;
};
struct ml_model {
    ml::Model value;
};
struct ml_splits {
    ml::model_selection::SplitPlan value;
};
struct ml_grid {
    ml::model_selection::ParamGrid value;
};
struct ml_grid_result {
    ml::model_selection::GridSearchResult value;
};

namespace {

thread_local int g_last_code = ML_OK;
thread_local std::string g_last_message;

void clear_error() {
    g_last_code = ML_OK;
    g_last_message.clear();
}

ml_status set_error(int code, const std::string& message) {
    g_last_code = code;
    g_last_message = message;
    return code;
}

template <typename Fn>
ml_status guarded(Fn&& fn) {
    clear_error();
    try {
        fn();
        return ML_OK;
    } catch (const Error& e) {
        return set_error(static_cast<int>(e.code()), e.what());
    } catch (const std::exception& e) {
        return set_error(ML_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(ML_ERR_INTERNAL, "unknown error");
    }
}

ml_status require(bool ok, const char* message) {
    if (ok) return ML_OK;
    return set_error(ML_ERR_INVALID_ARGUMENT, message);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* ml_last_error_message(void) { return g_last_message.c_str(); }

int ml_last_error_code(void) { return g_last_code; }

const char* ml_error_name(int code) {
    return ml::error_code_name(static_cast<ErrorCode>(code));
}

const char* ml_version(void) { return "0.1.0"; }

/* -------------------------------------------------------------- matrices */

ml_status ml_matrix_create(const double* row_major, size_t n_samples, size_t n_features,
                           ml_matrix** out) {
    if (ml_status s = require(row_major && out, "null argument")) return s;
    return guarded([&] { *out = new ml_matrix{ml::Matrix(n_samples, n_features, row_major)}; });
}

ml_status ml_matrix_shape(const ml_matrix* m, size_t* n_samples, size_t* n_features) {
    if (ml_status s = require(m && n_samples && n_features, "null argument")) return s;
    clear_error();
    *n_samples = m->value.n_samples();
    *n_features = m->value.n_features();
    return ML_OK;
}

ml_status ml_matrix_get(const ml_matrix* m, size_t i, size_t j, double* out) {
    if (ml_status s = require(m && out, "null argument")) return s;
    if (ml_status s = require(i < m->value.n_samples() && j < m->value.n_features(),
                              "matrix index out of range"))
        return s;
    clear_error();
    *out = m->value(i, j);
    return ML_OK;
}

ml_status ml_matrix_copy_data(const ml_matrix* m, double* out, size_t capacity) {
    if (ml_status s = require(m && out, "null argument")) return s;
    const size_t needed = m->value.n_samples() * m->value.n_features();
    if (ml_status s = require(capacity >= needed, "destination buffer too small")) return s;
    clear_error();
    std::memcpy(out, m->value.eigen().data(), needed * sizeof(double));
    return ML_OK;
}

void ml_matrix_free(ml_matrix* m) { delete m; }

/* ---------------------------------------------------------------- labels */

ml_status ml_labels_create_real(const double* values, size_t n, ml_labels** out) {
    if (ml_status s = require(values && out, "null argument")) return s;
    return guarded([&] {
        *out = new ml_labels{ml::Labels::reals(std::vector<double>(values, values + n))};
    });
}

ml_status ml_labels_create_class(const char* const* names, size_t n, ml_labels** out) {
    if (ml_status s = require(names && out, "null argument")) return s;
    return guarded([&] {
        std::vector<std::string> raw;
        raw.reserve(n);
        for (size_t i = 0; i < n; ++i) raw.emplace_back(names[i]);
        *out = new ml_labels{ml::Labels::classes(raw)};
    });
}

ml_status ml_labels_size(const ml_labels* y, size_t* out) {
    if (ml_status s = require(y && out, "null argument")) return s;
    clear_error();
    *out = y->value.size();
    return ML_OK;
}

ml_status ml_labels_kind(const ml_labels* y, int* out) {
    if (ml_status s = require(y && out, "null argument")) return s;
    clear_error();
    *out = y->value.kind() == ml::Labels::Kind::Class ? 1 : 0;
    return ML_OK;
}

ml_status ml_labels_get_real(const ml_labels* y, size_t i, double* out) {
    if (ml_status s = require(y && out, "null argument")) return s;
    return guarded([&] {
        if (i >= y->value.size()) throw Error(ErrorCode::InvalidArgument, "index out of range");
        *out = y->value.real_values()[i];
    });
}

ml_status ml_labels_get_name(const ml_labels* y, size_t i, const char** out) {
    if (ml_status s = require(y && out, "null argument")) return s;
    return guarded([&] {
        if (i >= y->value.size()) throw Error(ErrorCode::InvalidArgument, "index out of range");
        *out = y->value.name_of(i).c_str();
    });
}

void ml_labels_free(ml_labels* y) { delete y; }

/* ------------------------------------------------------------ estimators */

ml_status ml_spec_create(const char* kind, ml_spec** out) {
    if (ml_status s = require(kind && out, "null argument")) return s;
    return guarded([&] { *out = new ml_spec{ml::EstimatorSpec(kind)}; });
}

ml_status ml_spec_set_int(ml_spec* spec, const char* name, long long value) {
    if (ml_status s = require(spec && name, "null argument")) return s;
    return guarded([&] { spec->value.set(name, value); });
}

ml_status ml_spec_set_real(ml_spec* spec, const char* name, double value) {
    if (ml_status s = require(spec && name, "null argument")) return s;
    return guarded([&] { spec->value.set(name, value); });
}

ml_status ml_spec_set_string(ml_spec* spec, const char* name, const char* value) {
    if (ml_status s = require(spec && name && value, "null argument")) return s;
    return guarded([&] { spec->value.set(name, std::string(value)); });
}

ml_status ml_spec_create_pipeline(const ml_spec* const* steps, size_t n_steps, ml_spec** out) {
    if (ml_status s = require(steps && out && n_steps > 0, "null argument")) return s;
    return guarded([&] {
        std::vector<ml::EstimatorSpec> list;
        list.reserve(n_steps);
        for (size_t i = 0; i < n_steps; ++i) {
            if (!steps[i]) throw Error(ErrorCode::InvalidArgument, "null pipeline step");
            list.push_back(steps[i]->value);
        }
        *out = new ml_spec{ml::EstimatorSpec::pipeline(list)};
    });
}

void ml_spec_free(ml_spec* spec) { delete spec; }

ml_status ml_fit(const ml_spec* spec, const ml_matrix* X, const ml_labels* y,
                 const double* sample_weight, ml_model** out) {
    if (ml_status s = require(spec && X && out, "null argument")) return s;
    return guarded([&] {
        std::optional<std::vector<double>> weights;
        if (sample_weight)
            weights.emplace(sample_weight, sample_weight + X->value.n_samples());
        *out = new ml_model{ml::fit(spec->value, X->value, y ? &y->value : nullptr,
                                    weights ? &*weights : nullptr)};
    });
}

ml_status ml_model_predict(const ml_model* model, const ml_matrix* X, ml_labels** out) {
    if (ml_status s = require(model && X && out, "null argument")) return s;
    return guarded([&] { *out = new ml_labels{model->value.predict(X->value)}; });
}

ml_status ml_model_transform(const ml_model* model, const ml_matrix* X, ml_matrix** out) {
    if (ml_status s = require(model && X && out, "null argument")) return s;
    return guarded([&] { *out = new ml_matrix{model->value.transform(X->value)}; });
}

ml_status ml_model_score(const ml_model* model, const ml_matrix* X, const ml_labels* y,
                         double* out) {
    if (ml_status s = require(model && X && y && out, "null argument")) return s;
    return guarded([&] { *out = model->value.score(X->value, y->value); });
}

ml_status ml_model_n_features(const ml_model* model, size_t* out) {
    if (ml_status s = require(model && out, "null argument")) return s;
    clear_error();
    *out = model->value.n_features_in();
    return ML_OK;
}

void ml_model_free(ml_model* model) { delete model; }

/* -------------------------------------------------------- model selection */

ml_status ml_kfold(size_t n, size_t k, int shuffle, uint64_t seed, ml_splits** out) {
    if (ml_status s = require(out != nullptr, "null argument")) return s;
    return guarded(
        [&] { *out = new ml_splits{ml::model_selection::kfold(n, k, shuffle != 0, seed)}; });
}

ml_status ml_leave_one_out(size_t n, ml_splits** out) {
    if (ml_status s = require(out != nullptr, "null argument")) return s;
    return guarded([&] { *out = new ml_splits{ml::model_selection::leave_one_out(n)}; });
}

ml_status ml_stratified_kfold(const ml_labels* y, size_t k, int shuffle, uint64_t seed,
                              ml_splits** out) {
    if (ml_status s = require(y && out, "null argument")) return s;
    return guarded([&] {
        *out = new ml_splits{
            ml::model_selection::stratified_kfold(y->value, k, shuffle != 0, seed)};
    });
}

ml_status ml_splits_count(const ml_splits* plan, size_t* out) {
    if (ml_status s = require(plan && out, "null argument")) return s;
    clear_error();
    *out = plan->value.splits.size();
    return ML_OK;
}

void ml_splits_free(ml_splits* plan) { delete plan; }

ml_status ml_cross_val_score(const ml_spec* spec, const ml_matrix* X, const ml_labels* y,
                             const ml_splits* plan, double* scores) {
    if (ml_status s = require(spec && X && y && plan && scores, "null argument")) return s;
    return guarded([&] {
        const std::vector<double> out =
            ml::model_selection::cross_val_score(spec->value, X->value, y->value, plan->value);
        std::memcpy(scores, out.data(), out.size() * sizeof(double));
    });
}

ml_status ml_grid_create(ml_grid** out) {
    if (ml_status s = require(out != nullptr, "null argument")) return s;
    clear_error();
    *out = new ml_grid{};
    return ML_OK;
}

ml_status ml_grid_add_int(ml_grid* grid, const char* axis, const long long* values, size_t n) {
    if (ml_status s = require(grid && axis && values, "null argument")) return s;
    return guarded([&] {
        std::vector<ml::ParamValue> cands(values, values + n);
        grid->value.add(axis, std::move(cands));
    });
}

ml_status ml_grid_add_real(ml_grid* grid, const char* axis, const double* values, size_t n) {
    if (ml_status s = require(grid && axis && values, "null argument")) return s;
    return guarded([&] {
        std::vector<ml::ParamValue> cands(values, values + n);
        grid->value.add(axis, std::move(cands));
    });
}

ml_status ml_grid_add_string(ml_grid* grid, const char* axis, const char* const* values,
                             size_t n) {
    if (ml_status s = require(grid && axis && values, "null argument")) return s;
    return guarded([&] {
        std::vector<ml::ParamValue> cands;
        cands.reserve(n);
        for (size_t i = 0; i < n; ++i) cands.emplace_back(std::string(values[i]));
        grid->value.add(axis, std::move(cands));
    });
}

void ml_grid_free(ml_grid* grid) { delete grid; }

ml_status ml_grid_search(const ml_spec* base, const ml_grid* grid, const ml_splits* plan,
                         const ml_matrix* X, const ml_labels* y, size_t n_workers,
                         ml_grid_result** out) {
    if (ml_status s = require(base && grid && plan && X && y && out, "null argument")) return s;
    return guarded([&] {
        *out = new ml_grid_result{ml::model_selection::grid_search_fit(
            base->value, grid->value, plan->value, X->value, y->value, n_workers)};
    });
}

ml_status ml_grid_result_best_score(const ml_grid_result* result, double* out) {
    if (ml_status s = require(result && out, "null argument")) return s;
    clear_error();
    *out = result->value.best_score();
    return ML_OK;
}

ml_status ml_grid_result_n_points(const ml_grid_result* result, size_t* out) {
    if (ml_status s = require(result && out, "null argument")) return s;
    clear_error();
    *out = result->value.table().size();
    return ML_OK;
}

ml_status ml_grid_result_point_score(const ml_grid_result* result, size_t index, double* mean,
                                     double* std_dev, int* failed) {
    if (ml_status s = require(result && mean && std_dev && failed, "null argument")) return s;
    if (ml_status s = require(index < result->value.table().size(), "grid index out of range"))
        return s;
    clear_error();
    const auto& report = result->value.table()[index];
    *mean = report.mean_score;
    *std_dev = report.std_score;
    *failed = report.failed ? 1 : 0;
    return ML_OK;
}

ml_status ml_grid_result_refit_model(const ml_grid_result* result, ml_model** out) {
    if (ml_status s = require(result && out, "null argument")) return s;
    clear_error();
    *out = new ml_model{result->value.refit_model()};
    return ML_OK;
}

ml_status ml_grid_result_predict(const ml_grid_result* result, const ml_matrix* X,
                                 ml_labels** out) {
    if (ml_status s = require(result && X && out, "null argument")) return s;
    return guarded([&] { *out = new ml_labels{result->value.predict(X->value)}; });
}

ml_status ml_grid_result_score(const ml_grid_result* result, const ml_matrix* X,
                               const ml_labels* y, double* out) {
    if (ml_status s = require(result && X && y && out, "null argument")) return s;
    return guarded([&] { *out = result->value.score(X->value, y->value); });
}

void ml_grid_result_free(ml_grid_result* result) { delete result; }

/* ------------------------------------------------------------------ data */

ml_status ml_make_madelon(size_t n_samples, size_t n_features, size_t n_informative,
                          size_t n_redundant, double class_sep, double flip_fraction,
                          uint64_t seed, ml_matrix** X_out, ml_labels** y_out) {
    if (ml_status s = require(X_out && y_out, "null argument")) return s;
    return guarded([&] {
        ml::datasets::MadelonSpec spec;
        spec.n_samples = n_samples;
        spec.n_features = n_features;
        spec.n_informative = n_informative;
        spec.n_redundant = n_redundant;
        spec.class_sep = class_sep;
        spec.flip_fraction = flip_fraction;
        spec.seed = seed;
        auto [X, y] = ml::datasets::make_madelon(spec);
        *X_out = new ml_matrix{std::move(X)};
        *y_out = new ml_labels{std::move(y)};
    });
}

ml_status ml_load_csv(const char* path, const char* label_column, ml_matrix** X_out,
                      ml_labels** y_out) {
    if (ml_status s = require(path && X_out, "null argument")) return s;
    return guarded([&] {
        ml::datasets::LabelColumn label = ml::datasets::LabelColumn::none();
        if (label_column && *label_column) {
            char* end = nullptr;
            const long idx = std::strtol(label_column, &end, 10);
            if (end && *end == '\0' && idx >= 0)
                label = ml::datasets::LabelColumn::by_index(static_cast<size_t>(idx));
            else
                label = ml::datasets::LabelColumn::by_name(label_column);
        }
        auto [X, y] = ml::datasets::load_csv(path, label);
        if (label.engaged() && y_out) {
            if (!y) throw Error(ErrorCode::ParseError, "label column requested but absent");
            *y_out = new ml_labels{std::move(*y)};
        } else if (y_out) {
            *y_out = nullptr;
        }
        *X_out = new ml_matrix{std::move(X)};
    });
}

ml_status ml_save_csv(const char* path, const ml_matrix* X, const ml_labels* y) {
    if (ml_status s = require(path && X, "null argument")) return s;
    return guarded([&] { ml::datasets::save_csv(path, X->value, y ? &y->value : nullptr); });
}

ml_status ml_load_svmlight(const char* path, ml_matrix** X_out, ml_labels** y_out) {
    if (ml_status s = require(path && X_out && y_out, "null argument")) return s;
    return guarded([&] {
        auto [X, y] = ml::datasets::load_svmlight(path);
        *X_out = new ml_matrix{std::move(X)};
        *y_out = new ml_labels{std::move(y)};
    });
}

/* ----------------------------------------------------------------- bench */

ml_status ml_bench_run_file(const char* config_path, char** table_out, int* any_failed) {
    if (ml_status s = require(config_path && table_out && any_failed, "null argument")) return s;
    return guarded([&] {
        const ml::bench::BenchConfig config = ml::bench::load_config(config_path);
        const ml::bench::BenchResult result = ml::bench::run_bench(config);
        *table_out = dup_string(result.table);
        *any_failed = result.any_failed ? 1 : 0;
    });
}

ml_status ml_bench_table_from_records(const char* records_path, char** table_out) {
    if (ml_status s = require(records_path && table_out, "null argument")) return s;
    return guarded([&] {
        const auto records = ml::bench::load_records(records_path);
        *table_out = dup_string(ml::bench::render_table(records));
    });
}

void ml_string_free(char* s) { std::free(s); }

}  // extern "C"
