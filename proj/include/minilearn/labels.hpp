// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "minilearn/errors.hpp"

namespace ml {

// Target vector. Either real-valued (regression) or categorical, in which
// case the original identifiers are kept and each sample carries a code in
// 0..K-1. Codes are assigned by sorting the distinct identifiers (numeric
// order when every identifier parses as a number, lexicographic otherwise).
class Labels {
public:
    enum class Kind { Real, Class };

    static Labels reals(std::vector<double> values);
    static Labels classes(const std::vector<std::string>& raw);
    static Labels from_codes(std::vector<int> codes, std::vector<std::string> class_names);

    Kind kind() const { return kind_; }
    bool is_classification() const { return kind_ == Kind::Class; }
    std::size_t size() const;

    const std::vector<double>& real_values() const;
    const std::vector<int>& class_codes() const;
    const std::vector<std::string>& class_names() const;
    const std::string& name_of(std::size_t i) const;

    // Real-valued labels re-encoded as classes, one per distinct value;
    // classification labels returned unchanged.
    Labels to_classes() const;

    Labels subset(std::span<const std::size_t> indices) const;

    bool operator==(const Labels& other) const;

private:
    Labels() = default;

    Kind kind_ = Kind::Real;
    std::vector<double> reals_;
    std::vector<int> codes_;
    std::vector<std::string> names_;  // code -> original identifier
};

// Canonical textual form of a numeric label (shortest round-trip).
std::string format_label_value(double v);

}  // namespace ml
