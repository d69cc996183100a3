// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <vector>

#include "minilearn/rng.hpp"

namespace ml::datasets {

std::pair<Matrix, Labels> make_madelon(const MadelonSpec& spec) {
    if (spec.n_samples < 1 || spec.n_features < 1)
        throw Error(ErrorCode::BadSpec, "madelon spec needs at least one sample and one feature");
    if (spec.n_informative < 1)
        throw Error(ErrorCode::BadSpec, "madelon spec needs at least one informative feature");
    if (spec.n_informative + spec.n_redundant > spec.n_features)
        throw Error(ErrorCode::BadSpec,
                    "informative + redundant features exceed the feature count");
    if (!(spec.class_sep > 0.0)) throw Error(ErrorCode::BadSpec, "class_sep must be > 0");
    if (spec.flip_fraction < 0.0 || spec.flip_fraction >= 1.0)
        throw Error(ErrorCode::BadSpec, "flip_fraction must lie in [0, 1)");

    Rng rng(spec.seed);
    const auto n = static_cast<Eigen::Index>(spec.n_samples);
    const auto p = static_cast<Eigen::Index>(spec.n_features);
    const auto inf = static_cast<Eigen::Index>(spec.n_informative);
    const auto red = static_cast<Eigen::Index>(spec.n_redundant);

    // class centers sit at +-class_sep/sqrt(inf) per informative coordinate
    const double offset = spec.class_sep / std::sqrt(static_cast<double>(inf));

    std::vector<int> wanted(spec.n_samples);
    for (std::size_t i = 0; i < spec.n_samples; ++i) wanted[i] = i % 2 == 0 ? 0 : 1;
    rng.shuffle(wanted);

    RowMatrixXd X(n, p);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double sign = wanted[static_cast<std::size_t>(i)] == 1 ? 1.0 : -1.0;
        for (Eigen::Index d = 0; d < inf; ++d) X(i, d) = sign * offset + rng.gaussian();
    }

    // redundant block: fixed random mixing of the informative block
    if (red > 0) {
        Eigen::MatrixXd mix(inf, red);
        for (Eigen::Index c = 0; c < red; ++c)
            for (Eigen::Index r = 0; r < inf; ++r) mix(r, c) = rng.gaussian();
        X.block(0, inf, n, red) = X.block(0, 0, n, inf) * mix;
    }

    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index d = inf + red; d < p; ++d) X(i, d) = rng.gaussian();

    std::vector<int> labels = wanted;
    const auto n_flips = static_cast<std::size_t>(spec.flip_fraction *
                                                  static_cast<double>(spec.n_samples));
    if (n_flips > 0) {
        std::vector<std::size_t> order(spec.n_samples);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        for (std::size_t f = 0; f < n_flips; ++f) labels[order[f]] ^= 1;
    }

    return {Matrix(std::move(X)),
            Labels::from_codes(std::move(labels), {"0", "1"})};
}

// -------------------------------------------------------------------- CSV

namespace {

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    out.push_back(field);
    for (auto& f : out) {
        const auto b = f.find_first_not_of(" \t");
        const auto e = f.find_last_not_of(" \t");
        f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
    }
    return out;
}

bool parse_field(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

std::pair<Matrix, std::optional<Labels>> load_csv(const std::string& path,
                                                  const LabelColumn& label) {
    std::ifstream in(path);
    if (!in) throw ParseErrorAt(ErrorCode::ParseError, "cannot open '" + path + "'", 0);

    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> raw_labels;
    std::size_t width = 0;
    std::size_t line_no = 0;
    std::optional<std::size_t> label_index;
    bool saw_header = false;

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> fields = split_fields(line, ',');

        if (rows.empty() && !saw_header) {
            // header detection: any non-numeric field in the first line
            bool numeric = true;
            double tmp;
            for (const auto& f : fields)
                if (!parse_field(f, tmp)) {
                    numeric = false;
                    break;
                }
            if (!numeric) {
                header = fields;
                saw_header = true;
                width = fields.size();
                continue;
            }
        }

        if (width == 0) width = fields.size();
        if (fields.size() != width)
            throw ParseErrorAt(ErrorCode::RaggedRow,
                               "line " + std::to_string(line_no) + " has " +
                                   std::to_string(fields.size()) + " fields, expected " +
                                   std::to_string(width),
                               line_no);

        if (!label_index && label.engaged()) {
            if (label.index) {
                if (*label.index >= width)
                    throw ParseErrorAt(ErrorCode::ParseError, "label column index out of range",
                                       line_no);
                label_index = *label.index;
            } else {
                const auto it = std::find(header.begin(), header.end(), *label.name);
                if (it == header.end())
                    throw ParseErrorAt(ErrorCode::ParseError,
                                       "no header column named '" + *label.name + "'", 0);
                label_index = static_cast<std::size_t>(it - header.begin());
            }
            if (width < 2)
                throw ParseErrorAt(ErrorCode::ParseError,
                                   "cannot extract the label from a single-column table", line_no);
        }

        std::vector<double> row;
        row.reserve(width);
        for (std::size_t f = 0; f < fields.size(); ++f) {
            if (label_index && f == *label_index) {
                raw_labels.push_back(fields[f]);
                continue;
            }
            double v;
            if (!parse_field(fields[f], v))
                throw ParseErrorAt(ErrorCode::ParseError,
                                   "line " + std::to_string(line_no) + ": field '" + fields[f] +
                                       "' is not numeric",
                                   line_no);
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseErrorAt(ErrorCode::ParseError, "'" + path + "' has no data rows", line_no);

    Matrix X = Matrix::from_rows(rows);
    if (!label.engaged()) return {std::move(X), std::nullopt};

    // numeric labels load as real values; anything else becomes classes
    std::vector<double> numeric;
    numeric.reserve(raw_labels.size());
    bool all_numeric = true;
    for (const auto& s : raw_labels) {
        double v;
        if (!parse_field(s, v)) {
            all_numeric = false;
            break;
        }
        numeric.push_back(v);
    }
    if (all_numeric) return {std::move(X), Labels::reals(std::move(numeric))};
    return {std::move(X), Labels::classes(raw_labels)};
}

void save_csv(const std::string& path, const Matrix& X, const Labels* y) {
    if (y && y->size() != X.n_samples())
        throw ShapeMismatchError("label length does not match sample count");
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");

    for (std::size_t j = 0; j < X.n_features(); ++j) {
        if (j > 0) out << ',';
        out << 'f' << j;
    }
    if (y) out << ",label";
    out << '\n';

    char buf[64];
    for (std::size_t i = 0; i < X.n_samples(); ++i) {
        for (std::size_t j = 0; j < X.n_features(); ++j) {
            if (j > 0) out << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", X(i, j));
            out << buf;
        }
        if (y) {
            out << ',';
            if (y->kind() == Labels::Kind::Real) {
                std::snprintf(buf, sizeof(buf), "%.17g", y->real_values()[i]);
                out << buf;
            } else {
                out << y->name_of(i);
            }
        }
        out << '\n';
    }
}

// --------------------------------------------------------------- svmlight

std::pair<Matrix, Labels> load_svmlight(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseErrorAt(ErrorCode::ParseError, "cannot open '" + path + "'", 0);

    std::vector<double> labels;
    std::vector<std::vector<std::pair<std::size_t, double>>> sparse_rows;
    std::size_t max_index = 0;
    std::size_t line_no = 0;

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        // strip comments and padding
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream fields(line);
        std::string tok;
        if (!(fields >> tok)) continue;  // blank line

        double label;
        if (!parse_field(tok, label))
            throw ParseErrorAt(ErrorCode::ParseError,
                               "line " + std::to_string(line_no) + ": bad label '" + tok + "'",
                               line_no);

        std::vector<std::pair<std::size_t, double>> row;
        std::size_t prev_index = 0;
        while (fields >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
                throw ParseErrorAt(ErrorCode::ParseError,
                                   "line " + std::to_string(line_no) + ": bad pair '" + tok + "'",
                                   line_no);
            std::size_t index = 0;
            double value = 0.0;
            const std::string idx_str = tok.substr(0, colon);
            const char* ib = idx_str.data();
            auto [iptr, iec] = std::from_chars(ib, ib + idx_str.size(), index);
            if (iec != std::errc() || iptr != ib + idx_str.size() || index < 1)
                throw ParseErrorAt(ErrorCode::ParseError,
                                   "line " + std::to_string(line_no) + ": bad feature index '" +
                                       idx_str + "'",
                                   line_no);
            if (!parse_field(tok.substr(colon + 1), value))
                throw ParseErrorAt(ErrorCode::ParseError,
                                   "line " + std::to_string(line_no) + ": bad value in '" + tok +
                                       "'",
                                   line_no);
            if (index <= prev_index)
                throw ParseErrorAt(ErrorCode::NonAscendingIndex,
                                   "line " + std::to_string(line_no) +
                                       ": feature indices must ascend",
                                   line_no);
            prev_index = index;
            max_index = std::max(max_index, index);
            row.emplace_back(index - 1, value);
        }
        labels.push_back(label);
        sparse_rows.push_back(std::move(row));
    }
    if (sparse_rows.empty())
        throw ParseErrorAt(ErrorCode::ParseError, "'" + path + "' has no data rows", line_no);
    if (max_index == 0)
        throw ParseErrorAt(ErrorCode::ParseError, "'" + path + "' has no features", line_no);

    RowMatrixXd X = RowMatrixXd::Zero(static_cast<Eigen::Index>(sparse_rows.size()),
                                      static_cast<Eigen::Index>(max_index));
    for (std::size_t i = 0; i < sparse_rows.size(); ++i)
        for (const auto& [j, v] : sparse_rows[i])
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;

    return {Matrix(std::move(X)), Labels::reals(std::move(labels))};
}

}  // namespace ml::datasets
