// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#include "minilearn/labels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

namespace ml {

namespace {

std::optional<double> parse_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

}  // namespace

std::string format_label_value(double v) {
    char buf[64];
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    } else {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
    }
    return buf;
}

Labels Labels::reals(std::vector<double> values) {
    for (double v : values)
        if (!std::isfinite(v))
            throw Error(ErrorCode::InvalidArgument, "labels contain NaN or infinite entries");
    Labels out;
    out.kind_ = Kind::Real;
    out.reals_ = std::move(values);
    return out;
}

Labels Labels::classes(const std::vector<std::string>& raw) {
    std::vector<std::string> distinct = raw;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    // prefer numeric ordering when the whole alphabet is numeric
    bool all_numeric = !distinct.empty();
    for (const auto& s : distinct)
        if (!parse_number(s)) {
            all_numeric = false;
            break;
        }
    if (all_numeric) {
        std::sort(distinct.begin(), distinct.end(), [](const std::string& a, const std::string& b) {
            const double da = *parse_number(a), db = *parse_number(b);
            return da != db ? da < db : a < b;
        });
    }

    std::map<std::string, int> code_of;
    for (std::size_t i = 0; i < distinct.size(); ++i)
        code_of[distinct[i]] = static_cast<int>(i);

    Labels out;
    out.kind_ = Kind::Class;
    out.names_ = std::move(distinct);
    out.codes_.reserve(raw.size());
    for (const auto& s : raw) out.codes_.push_back(code_of.at(s));
    return out;
}

Labels Labels::from_codes(std::vector<int> codes, std::vector<std::string> class_names) {
    for (int c : codes)
        if (c < 0 || static_cast<std::size_t>(c) >= class_names.size())
            throw Error(ErrorCode::InvalidArgument, "class code out of range");
    Labels out;
    out.kind_ = Kind::Class;
    out.codes_ = std::move(codes);
    out.names_ = std::move(class_names);
    return out;
}

std::size_t Labels::size() const {
    return kind_ == Kind::Real ? reals_.size() : codes_.size();
}

const std::vector<double>& Labels::real_values() const {
    if (kind_ != Kind::Real)
        throw WrongCapabilityError("labels are categorical, not real-valued");
    return reals_;
}

const std::vector<int>& Labels::class_codes() const {
    if (kind_ != Kind::Class)
        throw WrongCapabilityError("labels are real-valued, not categorical");
    return codes_;
}

const std::vector<std::string>& Labels::class_names() const {
    if (kind_ != Kind::Class)
        throw WrongCapabilityError("labels are real-valued, not categorical");
    return names_;
}

const std::string& Labels::name_of(std::size_t i) const { return names_.at(static_cast<std::size_t>(class_codes().at(i))); }

Labels Labels::to_classes() const {
    if (kind_ == Kind::Class) return *this;
    std::vector<std::string> raw;
    raw.reserve(reals_.size());
    for (double v : reals_) raw.push_back(format_label_value(v));
    return classes(raw);
}

Labels Labels::subset(std::span<const std::size_t> indices) const {
    Labels out;
    out.kind_ = kind_;
    out.names_ = names_;
    if (kind_ == Kind::Real) {
        out.reals_.reserve(indices.size());
        for (std::size_t i : indices) out.reals_.push_back(reals_.at(i));
    } else {
        out.codes_.reserve(indices.size());
        for (std::size_t i : indices) out.codes_.push_back(codes_.at(i));
    }
    return out;
}

bool Labels::operator==(const Labels& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::Real) return reals_ == other.reals_;
    if (codes_.size() != other.codes_.size()) return false;
    for (std::size_t i = 0; i < codes_.size(); ++i)
        if (names_[static_cast<std::size_t>(codes_[i])] !=
            other.names_[static_cast<std::size_t>(other.codes_[i])])
            return false;
    return true;
}

}  // namespace ml
