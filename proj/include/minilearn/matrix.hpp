// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "minilearn/errors.hpp"

namespace ml {

using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Dense row-major sample matrix (n_samples x n_features). Entries are
// validated to be finite on construction. A matrix with zero rows is legal
// (an empty query set); estimator fitting additionally requires at least
// one row.
class Matrix {
public:
    Matrix() : data_(0, 0) {}

    explicit Matrix(RowMatrixXd values);
    Matrix(std::size_t n_samples, std::size_t n_features, const double* row_major);

    static Matrix zeros(std::size_t n_samples, std::size_t n_features);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t n_samples() const { return static_cast<std::size_t>(data_.rows()); }
    std::size_t n_features() const { return static_cast<std::size_t>(data_.cols()); }

    double operator()(std::size_t i, std::size_t j) const {
        return data_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    const RowMatrixXd& eigen() const { return data_; }

    Eigen::RowVectorXd row(std::size_t i) const { return data_.row(static_cast<Eigen::Index>(i)); }

    // New matrix made of the given rows, in order (indices may repeat).
    Matrix select_rows(std::span<const std::size_t> indices) const;

    bool operator==(const Matrix& other) const { return data_ == other.data_; }

private:
    void validate() const;

    RowMatrixXd data_;
};

}  // namespace ml
