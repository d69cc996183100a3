/*
 * Copyright 2026 The Minilearn Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the minilearn library. Every object is an opaque handle
 * created and released through these functions; every call returns an
 * ml_status (0 on success). On failure the thread-local error state holds
 * the code and a human-readable message.
 */

#ifndef MINILEARN_H
#define MINILEARN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int ml_status;

enum {
    ML_OK = 0,
    ML_ERR_INVALID_ARGUMENT = 1,
    ML_ERR_SHAPE_MISMATCH = 2,
    ML_ERR_UNSUPPORTED_PARAM = 3,
    ML_ERR_NOT_CONVERGED = 4,
    ML_ERR_WRONG_CAPABILITY = 5,
    ML_ERR_SINGLE_CLASS = 6,
    ML_ERR_K_TOO_LARGE = 7,
    ML_ERR_BAD_K = 8,
    ML_ERR_CLASS_TOO_SMALL = 9,
    ML_ERR_UNKNOWN_AXIS = 10,
    ML_ERR_NON_TRANSFORMER_STEP = 11,
    ML_ERR_DEGENERATE_DESIGN = 12,
    ML_ERR_PARSE = 13,
    ML_ERR_RAGGED_ROW = 14,
    ML_ERR_NON_ASCENDING_INDEX = 15,
    ML_ERR_BAD_SPEC = 16,
    ML_ERR_INTERNAL = 17
};

typedef struct ml_matrix ml_matrix;
typedef struct ml_labels ml_labels;
typedef struct ml_spec ml_spec;
typedef struct ml_model ml_model;
typedef struct ml_splits ml_splits;
typedef struct ml_grid ml_grid;
typedef struct ml_grid_result ml_grid_result;

/* ---------------------------------------------------------------- errors */

const char* ml_last_error_message(void);
int ml_last_error_code(void);
const char* ml_error_name(int code);
const char* ml_version(void);

/* -------------------------------------------------------------- matrices */

ml_status ml_matrix_create(const double* row_major, size_t n_samples, size_t n_features,
                           ml_matrix** out);
ml_status ml_matrix_shape(const ml_matrix* m, size_t* n_samples, size_t* n_features);
ml_status ml_matrix_get(const ml_matrix* m, size_t i, size_t j, double* out);
/* copies the whole matrix into caller memory, row major */
ml_status ml_matrix_copy_data(const ml_matrix* m, double* out, size_t capacity);
void ml_matrix_free(ml_matrix* m);

/* ---------------------------------------------------------------- labels */

ml_status ml_labels_create_real(const double* values, size_t n, ml_labels** out);
ml_status ml_labels_create_class(const char* const* names, size_t n, ml_labels** out);
ml_status ml_labels_size(const ml_labels* y, size_t* out);
/* 0 = real-valued, 1 = categorical */
ml_status ml_labels_kind(const ml_labels* y, int* out);
ml_status ml_labels_get_real(const ml_labels* y, size_t i, double* out);
/* pointer stays valid while the labels object lives */
ml_status ml_labels_get_name(const ml_labels* y, size_t i, const char** out);
void ml_labels_free(ml_labels* y);

/* ----------------------------------------------------------- estimators */

ml_status ml_spec_create(const char* kind, ml_spec** out);
ml_status ml_spec_set_int(ml_spec* spec, const char* name, long long value);
ml_status ml_spec_set_real(ml_spec* spec, const char* name, double value);
ml_status ml_spec_set_string(ml_spec* spec, const char* name, const char* value);
/* steps are addressed as "step.param"; step names default to the kind */
ml_status ml_spec_create_pipeline(const ml_spec* const* steps, size_t n_steps, ml_spec** out);
void ml_spec_free(ml_spec* spec);

/* y may be NULL for unsupervised estimators, sample_weight may be NULL */
ml_status ml_fit(const ml_spec* spec, const ml_matrix* X, const ml_labels* y,
                 const double* sample_weight, ml_model** out);
ml_status ml_model_predict(const ml_model* model, const ml_matrix* X, ml_labels** out);
ml_status ml_model_transform(const ml_model* model, const ml_matrix* X, ml_matrix** out);
ml_status ml_model_score(const ml_model* model, const ml_matrix* X, const ml_labels* y,
                         double* out);
ml_status ml_model_n_features(const ml_model* model, size_t* out);
void ml_model_free(ml_model* model);

/* ---------------------------------------------------------- model selection */

ml_status ml_kfold(size_t n, size_t k, int shuffle, uint64_t seed, ml_splits** out);
ml_status ml_leave_one_out(size_t n, ml_splits** out);
ml_status ml_stratified_kfold(const ml_labels* y, size_t k, int shuffle, uint64_t seed,
                              ml_splits** out);
ml_status ml_splits_count(const ml_splits* plan, size_t* out);
void ml_splits_free(ml_splits* plan);

/* scores must have room for one value per split */
ml_status ml_cross_val_score(const ml_spec* spec, const ml_matrix* X, const ml_labels* y,
                             const ml_splits* plan, double* scores);

ml_status ml_grid_create(ml_grid** out);
ml_status ml_grid_add_int(ml_grid* grid, const char* axis, const long long* values, size_t n);
ml_status ml_grid_add_real(ml_grid* grid, const char* axis, const double* values, size_t n);
ml_status ml_grid_add_string(ml_grid* grid, const char* axis, const char* const* values, size_t n);
void ml_grid_free(ml_grid* grid);

ml_status ml_grid_search(const ml_spec* base, const ml_grid* grid, const ml_splits* plan,
                         const ml_matrix* X, const ml_labels* y, size_t n_workers,
                         ml_grid_result** out);
ml_status ml_grid_result_best_score(const ml_grid_result* result, double* out);
ml_status ml_grid_result_n_points(const ml_grid_result* result, size_t* out);
ml_status ml_grid_result_point_score(const ml_grid_result* result, size_t index, double* mean,
                                     double* std_dev, int* failed);
/* the tuned estimator; the grid result keeps working if freed first */
ml_status ml_grid_result_refit_model(const ml_grid_result* result, ml_model** out);
/* delegation: same outputs as the refit model */
ml_status ml_grid_result_predict(const ml_grid_result* result, const ml_matrix* X,
                                 ml_labels** out);
ml_status ml_grid_result_score(const ml_grid_result* result, const ml_matrix* X,
                               const ml_labels* y, double* out);
void ml_grid_result_free(ml_grid_result* result);

/* ------------------------------------------------------------------ data */

ml_status ml_make_madelon(size_t n_samples, size_t n_features, size_t n_informative,
                          size_t n_redundant, double class_sep, double flip_fraction,
                          uint64_t seed, ml_matrix** X_out, ml_labels** y_out);
/* label_column: NULL = none, digits = 0-based index, otherwise header name */
ml_status ml_load_csv(const char* path, const char* label_column, ml_matrix** X_out,
                      ml_labels** y_out);
ml_status ml_save_csv(const char* path, const ml_matrix* X, const ml_labels* y);
ml_status ml_load_svmlight(const char* path, ml_matrix** X_out, ml_labels** y_out);

/* ----------------------------------------------------------------- bench */

/* Runs the benchmark described by a config file, writes the record stream
 * to the config's output path, and hands back the rendered table (release
 * with ml_string_free). any_failed reports whether any task failed. */
ml_status ml_bench_run_file(const char* config_path, char** table_out, int* any_failed);
ml_status ml_bench_table_from_records(const char* records_path, char** table_out);
void ml_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* MINILEARN_H */
