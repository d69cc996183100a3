// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <thread>

#include "minilearn/decomposition.hpp"
#include "minilearn/estimator.hpp"

namespace ml::bench {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

long long to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used == value.size()) return v;
    } catch (...) {
    }
    throw Error(ErrorCode::BadSpec, "config key '" + key + "' expects an integer, got '" + value + "'");
}

double to_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used == value.size()) return v;
    } catch (...) {
    }
    throw Error(ErrorCode::BadSpec, "config key '" + key + "' expects a number, got '" + value + "'");
}

const std::vector<std::string> kDefaultTasks = {"svc",  "lasso_lars", "elastic_net",
                                                "knn", "pca",        "kmeans"};

}  // namespace

BenchConfig parse_config_text(const std::string& text) {
    BenchConfig config;
    std::map<std::string, std::map<std::string, std::string>> task_params;
    std::vector<std::string> task_names = kDefaultTasks;

    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseErrorAt(ErrorCode::BadSpec,
                               "config line " + std::to_string(line_no) + " is not 'key = value'",
                               line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "dataset") {
            config.dataset = value;
        } else if (key == "label_column") {
            config.label_column = value;
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(to_int(key, value));
        } else if (key == "repeats") {
            const long long v = to_int(key, value);
            if (v < 1) throw Error(ErrorCode::BadSpec, "repeats must be >= 1");
            config.repeats = static_cast<std::size_t>(v);
        } else if (key == "timeout_seconds") {
            config.timeout_seconds = to_real(key, value);
        } else if (key == "parallel_tasks") {
            config.parallel_tasks = to_int(key, value) != 0;
        } else if (key == "output") {
            config.output = value;
        } else if (key == "madelon.samples") {
            config.madelon.n_samples = static_cast<std::size_t>(to_int(key, value));
        } else if (key == "madelon.features") {
            config.madelon.n_features = static_cast<std::size_t>(to_int(key, value));
        } else if (key == "madelon.informative") {
            config.madelon.n_informative = static_cast<std::size_t>(to_int(key, value));
        } else if (key == "madelon.redundant") {
            config.madelon.n_redundant = static_cast<std::size_t>(to_int(key, value));
        } else if (key == "madelon.class_sep") {
            config.madelon.class_sep = to_real(key, value);
        } else if (key == "madelon.flip_fraction") {
            config.madelon.flip_fraction = to_real(key, value);
        } else if (key == "tasks") {
            task_names.clear();
            std::istringstream list(value);
            std::string name;
            while (std::getline(list, name, ',')) {
                name = trim(name);
                if (!name.empty()) task_names.push_back(name);
            }
            if (task_names.empty()) throw Error(ErrorCode::BadSpec, "tasks list is empty");
        } else if (key.rfind("task.", 0) == 0) {
            const auto rest = key.substr(5);
            const auto dot = rest.find('.');
            if (dot == std::string::npos || dot == 0 || dot + 1 == rest.size())
                throw Error(ErrorCode::BadSpec, "task keys look like task.<algo>.<param>");
            task_params[rest.substr(0, dot)][rest.substr(dot + 1)] = value;
        } else {
            throw Error(ErrorCode::BadSpec, "unknown config key '" + key + "'");
        }
    }

    for (const auto& name : task_names) {
        BenchTask task;
        task.algorithm = name;
        const auto it = task_params.find(name);
        if (it != task_params.end()) task.params = it->second;
        config.tasks.push_back(std::move(task));
    }
    config.madelon.seed = config.seed;
    return config;
}

BenchConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::BadSpec, "cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    BenchConfig config = parse_config_text(buf.str());
    if (config.output.empty()) config.output = path + ".records";
    return config;
}

// ----------------------------------------------------------------- records

std::string BenchRecord::to_json_line() const {
    json j;
    j["algorithm"] = algorithm;
    j["dataset"] = dataset;
    j["n_samples"] = n_samples;
    j["n_features"] = n_features;
    j["wall_seconds"] = wall_seconds;
    j["quality_metric"] = quality_metric;
    j["quality_value"] = quality_value;
    j["seed"] = seed;
    j["repeats"] = repeats;
    j["status"] = status;
    j["error"] = error;
    j["params"] = params;
    return j.dump();
}

BenchRecord BenchRecord::from_json_line(const std::string& line) {
    const json j = json::parse(line);
    BenchRecord r;
    r.algorithm = j.at("algorithm").get<std::string>();
    r.dataset = j.at("dataset").get<std::string>();
    r.n_samples = j.at("n_samples").get<std::size_t>();
    r.n_features = j.at("n_features").get<std::size_t>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.quality_metric = j.at("quality_metric").get<std::string>();
    r.quality_value = j.at("quality_value").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.repeats = j.at("repeats").get<std::size_t>();
    r.status = j.at("status").get<std::string>();
    r.error = j.at("error").get<std::string>();
    r.params = j.at("params").get<std::map<std::string, std::string>>();
    return r;
}

std::vector<BenchRecord> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open records '" + path + "'");
    std::vector<BenchRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        out.push_back(BenchRecord::from_json_line(line));
    }
    return out;
}

void save_records(const std::string& path, const std::vector<BenchRecord>& records) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write records '" + path + "'");
    for (const auto& r : records) out << r.to_json_line() << '\n';
}

// ------------------------------------------------------------------ tasks

namespace {

struct LoadedData {
    Matrix X = Matrix::zeros(1, 1);
    Labels y = Labels::reals({0.0});
    std::string name;
};

LoadedData load_dataset(const BenchConfig& config) {
    LoadedData data;
    if (config.dataset == "madelon") {
        auto [X, y] = datasets::make_madelon(config.madelon);
        data.X = std::move(X);
        data.y = std::move(y);
        data.name = "madelon-synthetic";
        return data;
    }
    const auto dot = config.dataset.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : config.dataset.substr(dot + 1);
    if (ext == "csv") {
        datasets::LabelColumn label = datasets::LabelColumn::none();
        if (!config.label_column.empty()) {
            // an integer selects by position, anything else by header name
            char* end = nullptr;
            const long idx = std::strtol(config.label_column.c_str(), &end, 10);
            if (end && *end == '\0' && idx >= 0)
                label = datasets::LabelColumn::by_index(static_cast<std::size_t>(idx));
            else
                label = datasets::LabelColumn::by_name(config.label_column);
        }
        auto [X, y] = datasets::load_csv(config.dataset, label);
        if (!y) throw Error(ErrorCode::BadSpec, "benchmark datasets need a label column");
        data.X = std::move(X);
        data.y = std::move(*y);
    } else if (ext == "svmlight" || ext == "svm" || ext == "libsvm") {
        auto [X, y] = datasets::load_svmlight(config.dataset);
        data.X = std::move(X);
        data.y = std::move(y);
    } else {
        throw Error(ErrorCode::BadSpec, "dataset must be 'madelon', a .csv or a .svmlight file");
    }
    data.name = config.dataset;
    return data;
}

// default hyperparameters for each protocol row; config task.<algo>.<param>
// entries override
EstimatorSpec task_spec(const BenchTask& task, std::uint64_t seed) {
    EstimatorSpec spec(task.algorithm);
    if (task.algorithm == "svc") {
        spec.set("kernel", std::string("rbf"));
        spec.set("c", 1.0);
        spec.set("max_passes", 2000000LL);
    } else if (task.algorithm == "lasso_lars") {
        spec.set("alpha", 0.01);
    } else if (task.algorithm == "elastic_net") {
        spec.set("alpha", 0.01);
        spec.set("l1_ratio", 0.5);
        spec.set("max_iter", 20000LL);  // redundant features make the design ill-conditioned
    } else if (task.algorithm == "knn") {
        spec.set("k", 5LL);
    } else if (task.algorithm == "pca") {
        spec.set("n_components", 9LL);
        spec.set("seed", static_cast<long long>(seed));
    } else if (task.algorithm == "kmeans") {
        spec.set("k", 9LL);
        spec.set("seed", static_cast<long long>(seed));
    } else {
        throw Error(ErrorCode::BadSpec, "unknown benchmark algorithm '" + task.algorithm + "'");
    }
    for (const auto& [name, value] : task.params) {
        // integers, then reals, then strings
        try {
            std::size_t used = 0;
            const long long v = std::stoll(value, &used);
            if (used == value.size()) {
                spec.set(name, v);
                continue;
            }
        } catch (...) {
        }
        try {
            std::size_t used = 0;
            const double v = std::stod(value, &used);
            if (used == value.size()) {
                spec.set(name, v);
                continue;
            }
        } catch (...) {
        }
        spec.set(name, value);
    }
    return spec;
}

struct TaskOutcome {
    double seconds = 0.0;
    std::string metric;
    double value = 0.0;
};

TaskOutcome run_task(const EstimatorSpec& spec, const LoadedData& data, std::size_t repeats,
                     double timeout_seconds, bool& timed_out) {
    using clock = std::chrono::steady_clock;
    const auto deadline =
        clock::now() + std::chrono::duration_cast<clock::duration>(
                           std::chrono::duration<double>(timeout_seconds));

    const bool supervised = spec.supervised();
    const bool regression = supervised && !spec.classifier();

    // regression rows train on +-1 targets derived from the class labels
    Labels y = data.y;
    if (regression && y.kind() == Labels::Kind::Class) {
        std::vector<double> pm;
        pm.reserve(y.size());
        for (int c : y.class_codes()) pm.push_back(c == 1 ? 1.0 : -1.0);
        y = Labels::reals(std::move(pm));
    }
    const Labels* y_ptr = supervised ? &y : nullptr;

    TaskOutcome outcome;
    std::vector<double> times;
    std::optional<Model> model;
    for (std::size_t r = 0; r <= repeats; ++r) {  // run 0 is the discarded warm-up
        const auto start = clock::now();
        model = fit(spec, data.X, y_ptr);
        const auto stop = clock::now();
        if (r > 0)
            times.push_back(std::chrono::duration<double>(stop - start).count());
        if (clock::now() > deadline && r < repeats) {
            timed_out = true;
            break;
        }
    }
    if (times.empty()) times.push_back(0.0);
    std::sort(times.begin(), times.end());
    outcome.seconds = std::max(times[times.size() / 2], 1e-9);

    if (spec.classifier()) {
        outcome.metric = "train_accuracy";
        outcome.value = model->score(data.X, y);
    } else if (regression) {
        outcome.metric = "train_r2";
        outcome.value = model->score(data.X, y);
    } else if (spec.kind() == "pca") {
        const Matrix projected = model->transform(data.X);
        double captured = 0.0;
        for (std::size_t j = 0; j < projected.n_features(); ++j) {
            const auto col = projected.eigen().col(static_cast<Eigen::Index>(j));
            const double mean = col.mean();
            captured += (col.array() - mean).square().sum();
        }
        double total = 0.0;
        for (std::size_t j = 0; j < data.X.n_features(); ++j) {
            const auto col = data.X.eigen().col(static_cast<Eigen::Index>(j));
            const double mean = col.mean();
            total += (col.array() - mean).square().sum();
        }
        outcome.metric = "explained_variance_ratio";
        outcome.value = total > 0.0 ? captured / total : 0.0;
    } else {
        // kmeans: within-cluster sum of squares of the training assignment
        const Labels assignment = model->predict(data.X);
        Eigen::VectorXd inertia = Eigen::VectorXd::Zero(1);
        const auto& codes = assignment.class_codes();
        RowMatrixXd centroids =
            RowMatrixXd::Zero(static_cast<Eigen::Index>(assignment.class_names().size()),
                              static_cast<Eigen::Index>(data.X.n_features()));
        Eigen::VectorXd counts = Eigen::VectorXd::Zero(centroids.rows());
        for (std::size_t i = 0; i < codes.size(); ++i) {
            centroids.row(codes[i]) += data.X.row(i);
            counts(codes[i]) += 1.0;
        }
        for (Eigen::Index c = 0; c < centroids.rows(); ++c)
            if (counts(c) > 0.0) centroids.row(c) /= counts(c);
        double total = 0.0;
        for (std::size_t i = 0; i < codes.size(); ++i)
            total += (data.X.row(i) - centroids.row(codes[i])).squaredNorm();
        outcome.metric = "inertia";
        outcome.value = total;
    }
    return outcome;
}

}  // namespace

std::string algorithm_label(const BenchRecord& record) {
    if (record.algorithm == "svc") return "Support Vector Classification";
    if (record.algorithm == "lasso_lars") return "Lasso (LARS)";
    if (record.algorithm == "elastic_net") return "Elastic Net";
    if (record.algorithm == "knn") return "k-Nearest Neighbors";
    if (record.algorithm == "pca") {
        const auto it = record.params.find("n_components");
        return "PCA (" + (it != record.params.end() ? it->second : "?") + " components)";
    }
    if (record.algorithm == "kmeans") {
        const auto it = record.params.find("k");
        return "k-Means (" + (it != record.params.end() ? it->second : "?") + " clusters)";
    }
    return record.algorithm;
}

std::string render_table(const std::vector<BenchRecord>& records) {
    std::ostringstream out;
    if (!records.empty()) {
        out << "Dataset: " << records.front().dataset << " (" << records.front().n_samples << " x "
            << records.front().n_features << "), seed " << records.front().seed << "\n";
        out << "Timing: fit only, median of " << records.front().repeats
            << " runs, one warm-up run discarded\n\n";
    }
    std::vector<std::array<std::string, 3>> rows;
    rows.push_back({"Algorithm", "Time (s)", "Quality"});
    for (const auto& r : records) {
        std::array<std::string, 3> row;
        row[0] = algorithm_label(r);
        if (r.status == "ok" || r.status == "timeout") {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.4f", r.wall_seconds);
            row[1] = buf;
            if (r.status == "timeout") row[1] += " (timeout)";
            std::snprintf(buf, sizeof(buf), "%.6g", r.quality_value);
            row[2] = r.quality_metric + "=" + buf;
        } else {
            row[1] = "failed";
            row[2] = r.error.substr(0, 60);
        }
        rows.push_back(std::move(row));
    }
    std::array<std::size_t, 3> width = {0, 0, 0};
    for (const auto& row : rows)
        for (std::size_t c = 0; c < 3; ++c) width[c] = std::max(width[c], row[c].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
            out << rows[i][c];
            if (c < 2) out << std::string(width[c] - rows[i][c].size() + 3, ' ');
        }
        out << '\n';
        if (i == 0) out << std::string(width[0] + width[1] + width[2] + 6, '-') << '\n';
    }
    return out.str();
}

BenchResult run_bench(const BenchConfig& raw_config) {
    BenchConfig config = raw_config;
    if (config.repeats < 1) throw Error(ErrorCode::BadSpec, "repeats must be >= 1");
    if (config.tasks.empty())
        for (const auto& name : kDefaultTasks) config.tasks.push_back({name, {}});

    const LoadedData data = load_dataset(config);

    BenchResult result;
    result.records.resize(config.tasks.size());

    const auto run_one = [&](std::size_t t) {
        const BenchTask& task = config.tasks[t];
        BenchRecord& record = result.records[t];
        record.algorithm = task.algorithm;
        record.dataset = data.name;
        record.n_samples = data.X.n_samples();
        record.n_features = data.X.n_features();
        record.seed = config.seed;
        record.repeats = config.repeats;
        try {
            const EstimatorSpec spec = task_spec(task, config.seed);
            for (const auto& [name, value] : spec.resolved_params())
                record.params[name] = param_to_string(value);
            bool timed_out = false;
            const TaskOutcome outcome =
                run_task(spec, data, config.repeats, config.timeout_seconds, timed_out);
            record.wall_seconds = outcome.seconds;
            record.quality_metric = outcome.metric;
            record.quality_value = outcome.value;
            record.status = timed_out ? "timeout" : "ok";
        } catch (const std::exception& e) {
            record.status = "failed";
            record.error = e.what();
            record.wall_seconds = 1e-9;
        }
    };

    if (config.parallel_tasks) {
        std::vector<std::thread> pool;
        pool.reserve(config.tasks.size());
        for (std::size_t t = 0; t < config.tasks.size(); ++t) pool.emplace_back(run_one, t);
        for (auto& th : pool) th.join();
    } else {
        for (std::size_t t = 0; t < config.tasks.size(); ++t) run_one(t);
    }

    for (const auto& r : result.records)
        if (r.status == "failed") result.any_failed = true;

    std::ostringstream table;
    table << render_table(result.records);
    if (config.parallel_tasks)
        table << "\nNote: tasks ran in parallel; timings include scheduler interference.\n";
    result.table = table.str();

    if (!config.output.empty()) save_records(config.output, result.records);
    return result;
}

}  // namespace ml::bench
