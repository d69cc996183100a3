// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "minilearn/labels.hpp"
#include "minilearn/matrix.hpp"

namespace ml::datasets {

// Synthetic two-class problem shaped like the Madelon benchmark set:
// class-dependent Gaussian clusters in the informative coordinates, random
// linear combinations of those in the redundant ones, pure noise elsewhere,
// and an optional fraction of flipped labels.
struct MadelonSpec {
    std::size_t n_samples = 4400;
    std::size_t n_features = 500;
    std::size_t n_informative = 5;
    std::size_t n_redundant = 15;
    double class_sep = 1.0;
    double flip_fraction = 0.01;
    std::uint64_t seed = 0;
};

std::pair<Matrix, Labels> make_madelon(const MadelonSpec& spec);

// Column selector for loaders: by header name, by 0-based index, or absent.
struct LabelColumn {
    static LabelColumn none() { return {}; }
    static LabelColumn by_name(std::string name) {
        LabelColumn c;
        c.name = std::move(name);
        return c;
    }
    static LabelColumn by_index(std::size_t index) {
        LabelColumn c;
        c.index = index;
        return c;
    }

    std::optional<std::string> name;
    std::optional<std::size_t> index;
    bool engaged() const { return name.has_value() || index.has_value(); }
};

// Rectangular numeric CSV with an optional header row (detected by
// non-numeric fields in the first line). Row order is preserved. Raises
// ParseError / RaggedRow with the offending line number.
std::pair<Matrix, std::optional<Labels>> load_csv(const std::string& path,
                                                  const LabelColumn& label = LabelColumn::none());

void save_csv(const std::string& path, const Matrix& X, const Labels* y = nullptr);

// "label idx:val idx:val ..." with 1-based strictly ascending indices,
// densified to the maximum index seen.
std::pair<Matrix, Labels> load_svmlight(const std::string& path);

}  // namespace ml::datasets
