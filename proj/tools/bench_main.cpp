// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

// Benchmark CLI. Talks to the library exclusively through the C API.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "minilearn.h"

namespace {

int fail_with_last_error(const char* what) {
    std::fprintf(stderr, "error: %s: [%s] %s\n", what, ml_error_name(ml_last_error_code()),
                 ml_last_error_message());
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minilearn benchmark harness"};
    app.require_subcommand(1);

    // ------------------------------------------------------------- run
    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "run the benchmark protocol from a config file");
    run->add_option("--config", config_path, "benchmark config file")->required();

    // -------------------------------------------------------- generate
    bool gen_madelon = false;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    std::size_t gen_samples = 4400, gen_features = 500;
    std::size_t gen_informative = 5, gen_redundant = 15;
    double gen_class_sep = 1.0, gen_flip = 0.01;
    CLI::App* generate = app.add_subcommand("generate", "write a synthetic dataset to CSV");
    generate->add_flag("--madelon", gen_madelon, "Madelon-style generator");
    generate->add_option("--seed", gen_seed, "generator seed");
    generate->add_option("--out", gen_out, "output CSV path")->required();
    generate->add_option("--samples", gen_samples, "sample count");
    generate->add_option("--features", gen_features, "feature count");
    generate->add_option("--informative", gen_informative, "informative feature count");
    generate->add_option("--redundant", gen_redundant, "redundant feature count");
    generate->add_option("--class-sep", gen_class_sep, "class separation");
    generate->add_option("--flip-fraction", gen_flip, "label noise fraction");

    // ----------------------------------------------------------- table
    std::string records_path;
    CLI::App* table = app.add_subcommand("table", "render the table for a stored record stream");
    table->add_option("--records", records_path, "newline-delimited record file")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        char* rendered = nullptr;
        int any_failed = 0;
        if (ml_bench_run_file(config_path.c_str(), &rendered, &any_failed) != ML_OK)
            return fail_with_last_error("bench run");
        std::fputs(rendered, stdout);
        ml_string_free(rendered);
        return any_failed ? 1 : 0;
    }

    if (generate->parsed()) {
        if (!gen_madelon) {
            std::fprintf(stderr, "error: generate currently needs --madelon\n");
            return 2;
        }
        ml_matrix* X = nullptr;
        ml_labels* y = nullptr;
        if (ml_make_madelon(gen_samples, gen_features, gen_informative, gen_redundant,
                            gen_class_sep, gen_flip, gen_seed, &X, &y) != ML_OK)
            return fail_with_last_error("generate");
        const ml_status saved = ml_save_csv(gen_out.c_str(), X, y);
        ml_matrix_free(X);
        ml_labels_free(y);
        if (saved != ML_OK) return fail_with_last_error("write dataset");
        std::printf("wrote %zux%zu dataset to %s\n", gen_samples, gen_features, gen_out.c_str());
        return 0;
    }

    if (table->parsed()) {
        char* rendered = nullptr;
        if (ml_bench_table_from_records(records_path.c_str(), &rendered) != ML_OK)
            return fail_with_last_error("table");
        std::fputs(rendered, stdout);
        ml_string_free(rendered);
        return 0;
    }

    return 2;
}
